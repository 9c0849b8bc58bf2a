#pragma once

// Exact finite probability distributions over labeled product spaces.
// A JointDist stores only positive masses, keyed by a mixed-radix packed
// index (axis 0 most significant), sorted by key. Every operation is pure
// and deterministic: rational arithmetic is exact, and any floating-point
// reduction downstream consumes entries in sorted-key order.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gaplab/rat.hpp"

namespace gaplab {

struct Axis {
    std::string name;
    std::size_t size = 0;
};

class Space {
public:
    Space() = default;
    explicit Space(std::vector<Axis> axes);

    std::size_t arity() const { return axes_.size(); }
    const Axis& axis(std::size_t i) const;
    std::size_t index_of(std::string_view name) const;
    std::uint64_t states() const { return states_; }

    std::uint64_t pack(const std::vector<std::size_t>& idx) const;
    void unpack(std::uint64_t key, std::vector<std::size_t>& out) const;
    std::vector<std::size_t> unpack(std::uint64_t key) const;

    // Coordinate of one axis, extracted straight from a packed key.
    std::size_t coord(std::uint64_t key, std::size_t axisIdx) const;

    // Subspace made of the listed axes, in the listed order.
    Space select(const std::vector<std::size_t>& axes) const;

    // Same axis count and sizes; names are cosmetic.
    bool same_shape(const Space& o) const;

private:
    std::vector<Axis> axes_;
    std::vector<std::uint64_t> stride_;
    std::uint64_t states_ = 1;
};

using Entry = std::pair<std::uint64_t, Rat>;

class JointDist {
public:
    // Takes any list of (key, mass) contributions: sorts, merges duplicate
    // keys, drops zeros. Masses must be nonnegative and sum to exactly 1.
    JointDist(Space space, std::vector<Entry> mass);

    static JointDist point_mass(Space space, std::uint64_t key);

    const Space& space() const { return space_; }
    const std::vector<Entry>& entries() const { return mass_; }
    std::size_t support_size() const { return mass_.size(); }

    Rat mass_of(std::uint64_t key) const; // 0 when absent
    Rat mass_at(const std::vector<std::size_t>& idx) const;

    // Exact marginal onto the listed axes (indices strictly increasing).
    JointDist marginal(const std::vector<std::size_t>& axes) const;

    // Exact conditional given fixed values on some axes; those axes are
    // dropped from the result. Zero-mass conditioning events are an error.
    JointDist conditional(const std::vector<std::pair<std::size_t, std::size_t>>& given) const;

    // Image distribution under a deterministic map of outcomes.
    JointDist pushforward(
        Space target,
        const std::function<void(const std::vector<std::size_t>&, std::vector<std::size_t>&)>& f) const;

    // Independent product; axes concatenated.
    JointDist product(const JointDist& other) const;

    // Exact test: the (a,b)-marginal factorizes into its a- and b-marginals.
    bool independent(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) const;

    Rat expectation(const std::function<Rat(const std::vector<std::size_t>&)>& f) const;

    // Exact equality of shape and masses.
    bool same_mass(const JointDist& o) const;

private:
    Space space_;
    std::vector<Entry> mass_;
};

// Single-axis distribution (the FiniteDist of the library).
JointDist finite_dist(std::string axisName, std::vector<Rat> masses);
JointDist uniform_dist(std::string axisName, std::size_t k);

// Sorts by key and adds up duplicate keys; drops zero masses.
void sort_and_merge(std::vector<Entry>& entries);

} // namespace gaplab
