#include "gaplab/dist.hpp"

#include <algorithm>

#include "gaplab/errors.hpp"

namespace gaplab {

Space::Space(std::vector<Axis> axes) : axes_(std::move(axes)) {
    stride_.assign(axes_.size(), 1);
    Int total(1);
    for (const auto& a : axes_) {
        if (a.size == 0) throw DomainError("axis '" + a.name + "' has size 0");
        total *= static_cast<unsigned long>(a.size);
    }
    if (total > Int("4611686018427387904")) // 2^62; keeps key arithmetic overflow-free
        throw SizeGuardError("outcome space too large to key");
    states_ = 1;
    for (std::size_t i = axes_.size(); i-- > 0;) {
        stride_[i] = states_;
        states_ *= axes_[i].size;
    }
}

const Axis& Space::axis(std::size_t i) const {
    if (i >= axes_.size()) throw DomainError("axis index out of range");
    return axes_[i];
}

std::size_t Space::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].name == name) return i;
    throw DomainError("unknown axis name: '" + std::string(name) + "'");
}

std::uint64_t Space::pack(const std::vector<std::size_t>& idx) const {
    if (idx.size() != axes_.size()) throw DomainError("tuple arity mismatch");
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= axes_[i].size) throw DomainError("outcome index out of range");
        key += idx[i] * stride_[i];
    }
    return key;
}

void Space::unpack(std::uint64_t key, std::vector<std::size_t>& out) const {
    out.resize(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        out[i] = static_cast<std::size_t>((key / stride_[i]) % axes_[i].size);
    }
}

std::vector<std::size_t> Space::unpack(std::uint64_t key) const {
    std::vector<std::size_t> out;
    unpack(key, out);
    return out;
}

std::size_t Space::coord(std::uint64_t key, std::size_t axisIdx) const {
    if (axisIdx >= axes_.size()) throw DomainError("axis index out of range");
    return static_cast<std::size_t>((key / stride_[axisIdx]) % axes_[axisIdx].size);
}

Space Space::select(const std::vector<std::size_t>& axes) const {
    if (axes.empty()) throw DomainError("empty axis subset");
    std::vector<Axis> sel;
    sel.reserve(axes.size());
    for (std::size_t i : axes) sel.push_back(axis(i));
    return Space(std::move(sel));
}

bool Space::same_shape(const Space& o) const {
    if (axes_.size() != o.axes_.size()) return false;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].size != o.axes_[i].size) return false;
    return true;
}

void sort_and_merge(std::vector<Entry>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size();) {
        std::uint64_t key = entries[i].first;
        Rat sum = std::move(entries[i].second);
        ++i;
        while (i < entries.size() && entries[i].first == key) {
            sum += entries[i].second;
            ++i;
        }
        if (sum != 0) {
            entries[out].first = key;
            entries[out].second = std::move(sum);
            ++out;
        }
    }
    entries.resize(out);
}

JointDist::JointDist(Space space, std::vector<Entry> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
    for (const auto& [key, p] : mass_) {
        if (key >= space_.states()) throw DomainError("outcome key out of range");
        if (p < 0) throw DomainError("negative probability mass");
    }
    sort_and_merge(mass_);
    Rat total(0);
    for (const auto& e : mass_) total += e.second;
    if (total != 1) throw DomainError("masses sum to " + rat_str(total) + ", not 1");
}

JointDist JointDist::point_mass(Space space, std::uint64_t key) {
    std::vector<Entry> m;
    m.emplace_back(key, Rat(1));
    return JointDist(std::move(space), std::move(m));
}

Rat JointDist::mass_of(std::uint64_t key) const {
    auto it = std::lower_bound(mass_.begin(), mass_.end(), key,
                               [](const Entry& e, std::uint64_t k) { return e.first < k; });
    if (it != mass_.end() && it->first == key) return it->second;
    return Rat(0);
}

Rat JointDist::mass_at(const std::vector<std::size_t>& idx) const {
    return mass_of(space_.pack(idx));
}

namespace {

void check_increasing(const std::vector<std::size_t>& axes, std::size_t arity) {
    if (axes.empty()) throw DomainError("empty axis subset");
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i] >= arity) throw DomainError("axis index out of range");
        if (i > 0 && axes[i] <= axes[i - 1])
            throw DomainError("axis subset must be strictly increasing");
    }
}

} // namespace

JointDist JointDist::marginal(const std::vector<std::size_t>& axes) const {
    check_increasing(axes, space_.arity());
    Space target = space_.select(axes);
    std::vector<Entry> out;
    out.reserve(mass_.size());
    std::vector<std::size_t> idx(axes.size());
    for (const auto& [key, p] : mass_) {
        for (std::size_t i = 0; i < axes.size(); ++i) idx[i] = space_.coord(key, axes[i]);
        out.emplace_back(target.pack(idx), p);
    }
    return JointDist(std::move(target), std::move(out));
}

JointDist JointDist::conditional(
    const std::vector<std::pair<std::size_t, std::size_t>>& given) const {
    if (given.empty()) throw DomainError("empty conditioning event");
    std::vector<bool> fixed(space_.arity(), false);
    for (const auto& [ax, val] : given) {
        if (ax >= space_.arity()) throw DomainError("axis index out of range");
        if (fixed[ax]) throw DomainError("axis conditioned twice");
        if (val >= space_.axis(ax).size) throw DomainError("conditioning value out of range");
        fixed[ax] = true;
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < space_.arity(); ++i)
        if (!fixed[i]) kept.push_back(i);
    if (kept.empty()) throw DomainError("conditioning on every axis");
    Space target = space_.select(kept);

    std::vector<Entry> out;
    Rat total(0);
    std::vector<std::size_t> idx(kept.size());
    for (const auto& [key, p] : mass_) {
        bool match = true;
        for (const auto& [ax, val] : given) {
            if (space_.coord(key, ax) != val) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        for (std::size_t i = 0; i < kept.size(); ++i) idx[i] = space_.coord(key, kept[i]);
        out.emplace_back(target.pack(idx), p);
        total += p;
    }
    if (total == 0) throw DomainError("conditioning on a zero-mass event");
    for (auto& e : out) e.second /= total;
    return JointDist(std::move(target), std::move(out));
}

JointDist JointDist::pushforward(
    Space target,
    const std::function<void(const std::vector<std::size_t>&, std::vector<std::size_t>&)>& f) const {
    std::vector<Entry> out;
    out.reserve(mass_.size());
    std::vector<std::size_t> src, dst;
    for (const auto& [key, p] : mass_) {
        space_.unpack(key, src);
        f(src, dst);
        out.emplace_back(target.pack(dst), p);
    }
    return JointDist(std::move(target), std::move(out));
}

JointDist JointDist::product(const JointDist& other) const {
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < space_.arity(); ++i) axes.push_back(space_.axis(i));
    for (std::size_t i = 0; i < other.space_.arity(); ++i) axes.push_back(other.space_.axis(i));
    Space target(std::move(axes));
    std::vector<Entry> out;
    out.reserve(mass_.size() * other.mass_.size());
    for (const auto& [k1, p1] : mass_)
        for (const auto& [k2, p2] : other.mass_)
            out.emplace_back(k1 * other.space_.states() + k2, p1 * p2);
    return JointDist(std::move(target), std::move(out));
}

bool JointDist::independent(const std::vector<std::size_t>& a,
                            const std::vector<std::size_t>& b) const {
    check_increasing(a, space_.arity());
    check_increasing(b, space_.arity());
    std::vector<std::size_t> uni;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    for (std::size_t i = 1; i < uni.size(); ++i)
        if (uni[i] == uni[i - 1]) throw DomainError("axis groups overlap");

    JointDist mab = marginal(uni);
    // Positions of the a- and b-axes inside the union marginal.
    std::vector<std::size_t> posA, posB;
    for (std::size_t i = 0; i < uni.size(); ++i) {
        if (std::binary_search(a.begin(), a.end(), uni[i]))
            posA.push_back(i);
        else
            posB.push_back(i);
    }
    JointDist ma = mab.marginal(posA);
    JointDist mb = mab.marginal(posB);
    if (mab.support_size() != ma.support_size() * mb.support_size()) return false;

    Space sa = mab.space().select(posA);
    Space sb = mab.space().select(posB);
    std::vector<std::size_t> ia(posA.size()), ib(posB.size());
    for (const auto& [key, p] : mab.entries()) {
        for (std::size_t i = 0; i < posA.size(); ++i) ia[i] = mab.space().coord(key, posA[i]);
        for (std::size_t i = 0; i < posB.size(); ++i) ib[i] = mab.space().coord(key, posB[i]);
        if (p != ma.mass_of(sa.pack(ia)) * mb.mass_of(sb.pack(ib))) return false;
    }
    return true;
}

Rat JointDist::expectation(const std::function<Rat(const std::vector<std::size_t>&)>& f) const {
    Rat acc(0);
    std::vector<std::size_t> idx;
    for (const auto& [key, p] : mass_) {
        space_.unpack(key, idx);
        acc += p * f(idx);
    }
    return acc;
}

bool JointDist::same_mass(const JointDist& o) const {
    if (!space_.same_shape(o.space_)) return false;
    if (mass_.size() != o.mass_.size()) return false;
    for (std::size_t i = 0; i < mass_.size(); ++i)
        if (mass_[i].first != o.mass_[i].first || mass_[i].second != o.mass_[i].second)
            return false;
    return true;
}

JointDist finite_dist(std::string axisName, std::vector<Rat> masses) {
    Space sp(std::vector<Axis>{Axis{std::move(axisName), masses.size()}});
    std::vector<Entry> m;
    m.reserve(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i)
        if (masses[i] != 0) m.emplace_back(i, masses[i]);
    return JointDist(std::move(sp), std::move(m));
}

JointDist uniform_dist(std::string axisName, std::size_t k) {
    std::vector<Rat> m(k, Rat(1, static_cast<long>(k)));
    return finite_dist(std::move(axisName), std::move(m));
}

} // namespace gaplab
