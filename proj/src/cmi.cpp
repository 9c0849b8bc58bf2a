#include "gaplab/cmi.hpp"

#include <algorithm>
#include <cmath>

#include "gaplab/errors.hpp"
#include "gaplab/info.hpp"

namespace gaplab {

namespace {

std::vector<std::size_t> zt_axes_of(std::size_t n) {
    std::vector<std::size_t> axes(2 * n);
    for (std::size_t a = 0; a < 2 * n; ++a) axes[a] = a;
    return axes;
}

Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace

SupersampleJoint build_cmi_joint(const LearningSetting& s) {
    s.validate();
    const std::size_t n = s.n;

    Int states(static_cast<unsigned long>(s.wCount));
    for (std::size_t a = 0; a < 2 * n; ++a) states *= static_cast<unsigned long>(s.zCount);
    for (std::size_t i = 0; i < n; ++i) states *= 2u;
    if (states > Int(static_cast<unsigned long>(exact_state_guard())))
        throw SizeGuardError("supersample joint needs " + states.get_str() +
                             " states; raise GAPLAB_MAX_STATES to allow");

    std::vector<Axis> axes;
    for (std::size_t i = 0; i < n; ++i) {
        axes.push_back(Axis{"Zt" + std::to_string(i + 1) + "c0", s.zCount});
        axes.push_back(Axis{"Zt" + std::to_string(i + 1) + "c1", s.zCount});
    }
    for (std::size_t i = 0; i < n; ++i) axes.push_back(Axis{"J" + std::to_string(i + 1), 2});
    axes.push_back(Axis{"W", s.wCount});
    Space space(std::move(axes));

    std::uint64_t ztStates = 1;
    for (std::size_t a = 0; a < 2 * n; ++a) ztStates *= s.zCount;

    std::vector<Entry> mass;
    std::vector<std::size_t> zt(2 * n), sel(n);
    const Rat jMass = rat(1, 1L << n);
    for (std::uint64_t ztKey = 0; ztKey < ztStates; ++ztKey) {
        std::uint64_t rem = ztKey;
        for (std::size_t a = 2 * n; a-- > 0;) {
            zt[a] = static_cast<std::size_t>(rem % s.zCount);
            rem /= s.zCount;
        }
        Rat pzt(1);
        for (std::size_t a = 0; a < 2 * n; ++a) pzt *= s.pz[zt[a]];
        if (pzt == 0) continue;
        const Rat base = pzt * jMass;
        for (std::uint64_t jKey = 0; jKey < (1ull << n); ++jKey) {
            for (std::size_t i = 0; i < n; ++i)
                sel[i] = zt[2 * i + ((jKey >> (n - 1 - i)) & 1u)];
            const auto& row = s.kernel[s.sPack(sel)];
            const std::uint64_t prefix = ((ztKey << n) | jKey) * s.wCount;
            for (std::size_t w = 0; w < s.wCount; ++w) {
                if (row[w] == 0) continue;
                mass.emplace_back(prefix + w, base * row[w]);
            }
        }
    }

    SupersampleJoint ss{s, JointDist(std::move(space), std::move(mass)), {}, {}};

    for (const auto& row : s.loss)
        for (const Rat& v : row) ss.lossValues.push_back(v);
    std::sort(ss.lossValues.begin(), ss.lossValues.end());
    ss.lossValues.erase(std::unique(ss.lossValues.begin(), ss.lossValues.end()),
                        ss.lossValues.end());

    ss.lossIdx.assign(s.wCount, std::vector<std::size_t>(s.zCount));
    for (std::size_t w = 0; w < s.wCount; ++w)
        for (std::size_t z = 0; z < s.zCount; ++z)
            ss.lossIdx[w][z] = static_cast<std::size_t>(
                std::lower_bound(ss.lossValues.begin(), ss.lossValues.end(), s.loss[w][z]) -
                ss.lossValues.begin());
    return ss;
}

std::pair<Rat, Rat> SupersampleJoint::gap_moments() const {
    const LearningSetting& s = setting;
    std::vector<Rat> pop(s.wCount);
    for (std::size_t w = 0; w < s.wCount; ++w) pop[w] = population_risk(s, w);

    Rat g(0), g2(0);
    std::vector<std::size_t> c;
    for (const auto& [key, p] : joint.entries()) {
        joint.space().unpack(key, c);
        const std::size_t w = c[wAxis()];
        Rat emp(0);
        for (std::size_t i = 0; i < s.n; ++i) emp += s.loss[w][c[ztAxis(i, c[jAxis(i)])]];
        const Rat gap = pop[w] - emp / static_cast<long>(s.n);
        g += p * gap;
        g2 += p * gap * gap;
    }
    return {g, g2};
}

namespace {

// The disintegrations every bound and ordering check draws from. Computed once
// per supersample joint; "rows" conditions on the pair(s) a selector touches,
// "table" on the whole paired sample.
struct PairParts {
    std::size_t i = 0, k = 0;
    double ecmiPlain = 0;
    bool ecmiPlainIndep = false;
    ConditionalMI ecmiRows, ecmiTable;
    ConditionalMI cmiRows, cmiTable;
    double wPlain = 0;  // I(W; J_i, J_k), for ordering checks only
};

struct Parts {
    ConditionalMI mask;  // I(W; J | Zt)
    std::vector<double> ecmiPlain;
    std::vector<char> ecmiPlainIndep;
    std::vector<ConditionalMI> ecmiRows, ecmiTable, cmiRows, cmiTable;
    std::vector<double> wPlain;  // I(W; J_i)
    std::vector<PairParts> pairs;
};

std::uint64_t lambda_of(const SupersampleJoint& ss, std::size_t w, std::size_t z0,
                        std::size_t z1) {
    const std::size_t L = ss.lossValues.size();
    return ss.lossIdx[w][z0] * L + ss.lossIdx[w][z1];
}

Parts compute_parts(const SupersampleJoint& ss) {
    const LearningSetting& s = ss.setting;
    const std::size_t n = s.n;
    const std::size_t LL = ss.lossValues.size() * ss.lossValues.size();
    const auto ztAxes = zt_axes_of(n);

    std::vector<std::size_t> jAxes(n);
    for (std::size_t i = 0; i < n; ++i) jAxes[i] = ss.jAxis(i);

    Parts P;
    P.mask = conditional_mi(ss.joint, {ss.wAxis()}, jAxes, ztAxes);

    for (std::size_t i = 0; i < n; ++i) {
        const JointDist row =
            ss.joint.marginal({ss.ztAxis(i, 0), ss.ztAxis(i, 1), ss.jAxis(i), ss.wAxis()});
        // row axes: 0,1 = the pair, 2 = selector, 3 = hypothesis
        P.cmiRows.push_back(conditional_mi(row, {3}, {2}, {0, 1}));
        P.wPlain.push_back(mutual_information(row, {3}, {2}));

        Space lamJ({Axis{"L", LL}, Axis{"J", 2}});
        const JointDist lj = row.pushforward(
            lamJ, [&](const std::vector<std::size_t>& src, std::vector<std::size_t>& dst) {
                dst.resize(2);
                dst[0] = lambda_of(ss, src[3], src[0], src[1]);
                dst[1] = src[2];
            });
        P.ecmiPlain.push_back(mutual_information(lj, {0}, {1}));
        P.ecmiPlainIndep.push_back(lj.independent({0}, {1}) ? 1 : 0);

        Space zLamJ({row.space().axis(0), row.space().axis(1), Axis{"L", LL}, Axis{"J", 2}});
        const JointDist zlj = row.pushforward(
            zLamJ, [&](const std::vector<std::size_t>& src, std::vector<std::size_t>& dst) {
                dst.resize(4);
                dst[0] = src[0];
                dst[1] = src[1];
                dst[2] = lambda_of(ss, src[3], src[0], src[1]);
                dst[3] = src[2];
            });
        P.ecmiRows.push_back(conditional_mi(zlj, {2}, {3}, {0, 1}));

        P.cmiTable.push_back(conditional_mi(ss.joint, {ss.wAxis()}, {ss.jAxis(i)}, ztAxes));

        std::vector<Axis> tAxes;
        for (std::size_t a : ztAxes) tAxes.push_back(ss.joint.space().axis(a));
        tAxes.push_back(Axis{"L", LL});
        tAxes.push_back(Axis{"J", 2});
        Space tLamJ(std::move(tAxes));
        const JointDist tlj = ss.joint.pushforward(
            tLamJ, [&](const std::vector<std::size_t>& src, std::vector<std::size_t>& dst) {
                dst.resize(2 * n + 2);
                for (std::size_t a = 0; a < 2 * n; ++a) dst[a] = src[a];
                const std::size_t w = src[ss.wAxis()];
                dst[2 * n] = lambda_of(ss, w, src[ss.ztAxis(i, 0)], src[ss.ztAxis(i, 1)]);
                dst[2 * n + 1] = src[ss.jAxis(i)];
            });
        P.ecmiTable.push_back(conditional_mi(tlj, {2 * n}, {2 * n + 1}, ztAxes));
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            PairParts pp;
            pp.i = i;
            pp.k = k;
            const JointDist pm =
                ss.joint.marginal({ss.ztAxis(i, 0), ss.ztAxis(i, 1), ss.ztAxis(k, 0),
                                   ss.ztAxis(k, 1), ss.jAxis(i), ss.jAxis(k), ss.wAxis()});
            // pm axes: 0..3 = the two pairs, 4,5 = selectors, 6 = hypothesis
            pp.cmiRows = conditional_mi(pm, {6}, {4, 5}, {0, 1, 2, 3});
            pp.wPlain = mutual_information(pm, {6}, {4, 5});

            Space lamPair({Axis{"Li", LL}, Axis{"Lk", LL}, Axis{"Ji", 2}, Axis{"Jk", 2}});
            const JointDist lp = pm.pushforward(
                lamPair, [&](const std::vector<std::size_t>& src, std::vector<std::size_t>& dst) {
                    dst.resize(4);
                    dst[0] = lambda_of(ss, src[6], src[0], src[1]);
                    dst[1] = lambda_of(ss, src[6], src[2], src[3]);
                    dst[2] = src[4];
                    dst[3] = src[5];
                });
            pp.ecmiPlain = mutual_information(lp, {0, 1}, {2, 3});
            pp.ecmiPlainIndep = lp.independent({0, 1}, {2, 3});

            Space zLamPair({pm.space().axis(0), pm.space().axis(1), pm.space().axis(2),
                            pm.space().axis(3), Axis{"Li", LL}, Axis{"Lk", LL}, Axis{"Ji", 2},
                            Axis{"Jk", 2}});
            const JointDist zlp = pm.pushforward(
                zLamPair, [&](const std::vector<std::size_t>& src, std::vector<std::size_t>& dst) {
                    dst.resize(8);
                    for (std::size_t a = 0; a < 4; ++a) dst[a] = src[a];
                    dst[4] = lambda_of(ss, src[6], src[0], src[1]);
                    dst[5] = lambda_of(ss, src[6], src[2], src[3]);
                    dst[6] = src[4];
                    dst[7] = src[5];
                });
            pp.ecmiRows = conditional_mi(zlp, {4, 5}, {6, 7}, {0, 1, 2, 3});

            pp.cmiTable =
                conditional_mi(ss.joint, {ss.wAxis()}, {ss.jAxis(i), ss.jAxis(k)}, ztAxes);

            std::vector<Axis> tAxes;
            for (std::size_t a : ztAxes) tAxes.push_back(ss.joint.space().axis(a));
            tAxes.push_back(Axis{"Li", LL});
            tAxes.push_back(Axis{"Lk", LL});
            tAxes.push_back(Axis{"Ji", 2});
            tAxes.push_back(Axis{"Jk", 2});
            Space tLamPair(std::move(tAxes));
            const JointDist tlp = ss.joint.pushforward(
                tLamPair,
                [&](const std::vector<std::size_t>& src, std::vector<std::size_t>& dst) {
                    dst.resize(2 * n + 4);
                    for (std::size_t a = 0; a < 2 * n; ++a) dst[a] = src[a];
                    const std::size_t w = src[ss.wAxis()];
                    dst[2 * n] = lambda_of(ss, w, src[ss.ztAxis(i, 0)], src[ss.ztAxis(i, 1)]);
                    dst[2 * n + 1] = lambda_of(ss, w, src[ss.ztAxis(k, 0)], src[ss.ztAxis(k, 1)]);
                    dst[2 * n + 2] = src[ss.jAxis(i)];
                    dst[2 * n + 3] = src[ss.jAxis(k)];
                });
            pp.ecmiTable =
                conditional_mi(tlp, {2 * n, 2 * n + 1}, {2 * n + 2, 2 * n + 3}, ztAxes);

            P.pairs.push_back(std::move(pp));
        }
    return P;
}

CmiBoundReport base_report(const std::string& name, const Rat& lhsExact) {
    CmiBoundReport r;
    r.bound = name;
    r.lhsExact = lhsExact;
    r.lhs = to_double(lhsExact);
    return r;
}

// ---- bound assembly from precomputed parts ----

CmiBoundReport assemble_mask(const Parts& P, const Rat& absGap, std::size_t n) {
    CmiBoundReport r = base_report("gap_mask_cmi", absGap);
    r.terms.push_back({"cmi", P.mask.value});
    r.rhs = std::sqrt(2.0 * P.mask.value / static_cast<double>(n));
    r.certifiedZero = P.mask.allIndependent;
    return r;
}

CmiBoundReport assemble_gap_sum(const std::string& name, const Rat& absGap, std::size_t n,
                                const std::string& termPrefix,
                                const std::function<double(std::size_t)>& term,
                                const std::function<bool(std::size_t)>& zero) {
    CmiBoundReport r = base_report(name, absGap);
    double sum = 0;
    bool certified = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = term(i);
        r.terms.push_back({termPrefix + std::to_string(i + 1), t});
        sum += t;
        certified = certified && zero(i);
    }
    r.rhs = sum / static_cast<double>(n);
    r.certifiedZero = certified;
    return r;
}

CmiBoundReport assemble_sq_pairs(const std::string& name, const Rat& sqGap, std::size_t n,
                                 const std::vector<PairParts>& pairs,
                                 const std::function<double(const PairParts&)>& term,
                                 const std::function<bool(const PairParts&)>& zero) {
    CmiBoundReport r = base_report(name, sqGap);
    double sum = 0;  // over ordered pairs; each unordered pair counts twice
    bool certified = true;
    for (const PairParts& pp : pairs) {
        const double t = term(pp);
        r.terms.push_back(
            {"term_j" + std::to_string(pp.i + 1) + "j" + std::to_string(pp.k + 1), t});
        sum += 2.0 * t;
        certified = certified && zero(pp);
    }
    const double nD = static_cast<double>(n);
    r.rhs = 5.0 / (2.0 * nD) + 2.0 * sum / (nD * nD);
    r.certifiedZero = certified;
    return r;
}

std::vector<CmiBoundReport> assemble_bounds(const SupersampleJoint& ss, const Parts& P,
                                            const Rat& eGap, const Rat& eSqGap) {
    const std::size_t n = ss.setting.n;
    const Rat absGap = abs_rat(eGap);
    std::vector<CmiBoundReport> out;

    out.push_back(assemble_mask(P, absGap, n));
    out.push_back(assemble_gap_sum(
        "gap_samplewise_cmi_rows", absGap, n, "term_j",
        [&](std::size_t i) { return P.cmiRows[i].expected_sqrt(2.0); },
        [&](std::size_t i) { return P.cmiRows[i].allIndependent; }));
    out.push_back(assemble_gap_sum(
        "gap_samplewise_cmi_table", absGap, n, "term_j",
        [&](std::size_t i) { return P.cmiTable[i].expected_sqrt(2.0); },
        [&](std::size_t i) { return P.cmiTable[i].allIndependent; }));
    out.push_back(assemble_gap_sum(
        "gap_samplewise_ecmi", absGap, n, "term_j",
        [&](std::size_t i) { return std::sqrt(2.0 * P.ecmiPlain[i]); },
        [&](std::size_t i) { return P.ecmiPlainIndep[i] != 0; }));
    out.push_back(assemble_gap_sum(
        "gap_samplewise_ecmi_rows", absGap, n, "term_j",
        [&](std::size_t i) { return P.ecmiRows[i].expected_sqrt(2.0); },
        [&](std::size_t i) { return P.ecmiRows[i].allIndependent; }));
    out.push_back(assemble_gap_sum(
        "gap_samplewise_ecmi_table", absGap, n, "term_j",
        [&](std::size_t i) { return P.ecmiTable[i].expected_sqrt(2.0); },
        [&](std::size_t i) { return P.ecmiTable[i].allIndependent; }));

    {  // squared gap, per-selector version
        CmiBoundReport r = base_report("sqgap_samplewise_cmi_table", eSqGap);
        double sum = 0;
        bool certified = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = P.cmiTable[i].expected_sqrt(2.0);
            r.terms.push_back({"term_j" + std::to_string(i + 1), t});
            sum += t;
            certified = certified && P.cmiTable[i].allIndependent;
        }
        const double nD = static_cast<double>(n);
        r.rhs = 5.0 / (2.0 * nD) + 2.0 * sum / nD;
        r.certifiedZero = certified;
        out.push_back(std::move(r));
    }

    out.push_back(assemble_sq_pairs(
        "sqgap_pair_ecmi", eSqGap, n, P.pairs,
        [](const PairParts& pp) { return std::sqrt(2.0 * pp.ecmiPlain); },
        [](const PairParts& pp) { return pp.ecmiPlainIndep; }));
    out.push_back(assemble_sq_pairs(
        "sqgap_pair_ecmi_rows", eSqGap, n, P.pairs,
        [](const PairParts& pp) { return pp.ecmiRows.expected_sqrt(2.0); },
        [](const PairParts& pp) { return pp.ecmiRows.allIndependent; }));
    out.push_back(assemble_sq_pairs(
        "sqgap_pair_ecmi_table", eSqGap, n, P.pairs,
        [](const PairParts& pp) { return pp.ecmiTable.expected_sqrt(2.0); },
        [](const PairParts& pp) { return pp.ecmiTable.allIndependent; }));
    out.push_back(assemble_sq_pairs(
        "sqgap_pair_cmi_rows", eSqGap, n, P.pairs,
        [](const PairParts& pp) { return pp.cmiRows.expected_sqrt(2.0); },
        [](const PairParts& pp) { return pp.cmiRows.allIndependent; }));
    out.push_back(assemble_sq_pairs(
        "sqgap_pair_cmi_table", eSqGap, n, P.pairs,
        [](const PairParts& pp) { return pp.cmiTable.expected_sqrt(2.0); },
        [](const PairParts& pp) { return pp.cmiTable.allIndependent; }));
    return out;
}

// ---- ordering audit ----

void slice_lockstep(const ConditionalMI& lo, const ConditionalMI& hi, double tol,
                    const std::string& what, DpiAudit& audit) {
    if (lo.slices.size() != hi.slices.size()) {
        audit.ok = false;
        audit.violations.push_back(what + ": slice supports differ");
        return;
    }
    for (std::size_t sIdx = 0; sIdx < lo.slices.size(); ++sIdx) {
        const auto& a = lo.slices[sIdx];
        const auto& b = hi.slices[sIdx];
        if (a.cKey != b.cKey) {
            audit.ok = false;
            audit.violations.push_back(what + ": slice keys differ");
            return;
        }
        const double slack = b.mi - a.mi;
        audit.worstSlack = std::min(audit.worstSlack, slack);
        if (a.mi > b.mi + tol) {
            audit.ok = false;
            audit.violations.push_back(what + " slice " + std::to_string(a.cKey) + ": " +
                                       std::to_string(a.mi) + " > " + std::to_string(b.mi));
        }
    }
}

DpiAudit run_dpi(const SupersampleJoint& ss, const Parts& P, double tol) {
    DpiAudit audit;
    const std::size_t n = ss.setting.n;
    const double log2v = std::log(2.0);

    auto assert_le = [&](double lo, double hi, const std::string& what) {
        audit.worstSlack = std::min(audit.worstSlack, hi - lo);
        if (lo > hi + tol) {
            audit.ok = false;
            audit.violations.push_back(what + ": " + std::to_string(lo) + " > " +
                                       std::to_string(hi));
        }
    };
    auto count_flip = [&](double first, double second) {
        if (first > second + tol) ++audit.sqrtFlips;
    };

    assert_le(P.mask.value, static_cast<double>(n) * log2v, "mask cmi vs selector entropy");
    for (const auto& sl : P.mask.slices)
        assert_le(sl.mi, static_cast<double>(n) * log2v, "mask cmi slice vs selector entropy");

    for (std::size_t i = 0; i < n; ++i) {
        const std::string tag = "selector " + std::to_string(i + 1);
        // expectation-inside chains: finer conditioning can only add information
        assert_le(P.ecmiPlain[i], P.ecmiRows[i].value, tag + " loss-level chain (plain vs rows)");
        assert_le(P.ecmiRows[i].value, P.ecmiTable[i].value,
                  tag + " loss-level chain (rows vs table)");
        assert_le(P.wPlain[i], P.cmiRows[i].value, tag + " hypothesis chain (plain vs rows)");
        assert_le(P.cmiRows[i].value, P.cmiTable[i].value,
                  tag + " hypothesis chain (rows vs table)");
        // data processing: the loss pair is a function of the hypothesis per slice
        slice_lockstep(P.ecmiRows[i], P.cmiRows[i], tol, tag + " dpi rows", audit);
        slice_lockstep(P.ecmiTable[i], P.cmiTable[i], tol, tag + " dpi table", audit);
        // a single selector bit carries at most log 2
        assert_le(P.cmiTable[i].value, log2v, tag + " cmi vs entropy");
        for (const auto& sl : P.cmiTable[i].slices)
            assert_le(sl.mi, log2v, tag + " cmi slice vs entropy");
        // expectation outside the square root: orderings may flip; count only
        count_flip(P.cmiRows[i].expected_sqrt(2.0), P.cmiTable[i].expected_sqrt(2.0));
        count_flip(std::sqrt(2.0 * P.ecmiPlain[i]), P.ecmiRows[i].expected_sqrt(2.0));
        count_flip(P.ecmiRows[i].expected_sqrt(2.0), P.ecmiTable[i].expected_sqrt(2.0));
    }

    for (const PairParts& pp : P.pairs) {
        const std::string tag =
            "selectors " + std::to_string(pp.i + 1) + "," + std::to_string(pp.k + 1);
        assert_le(pp.ecmiPlain, pp.ecmiRows.value, tag + " loss-level chain (plain vs rows)");
        assert_le(pp.ecmiRows.value, pp.ecmiTable.value, tag + " loss-level chain (rows vs table)");
        assert_le(pp.wPlain, pp.cmiRows.value, tag + " hypothesis chain (plain vs rows)");
        assert_le(pp.cmiRows.value, pp.cmiTable.value, tag + " hypothesis chain (rows vs table)");
        slice_lockstep(pp.ecmiRows, pp.cmiRows, tol, tag + " dpi rows", audit);
        slice_lockstep(pp.ecmiTable, pp.cmiTable, tol, tag + " dpi table", audit);
        assert_le(pp.cmiTable.value, 2.0 * log2v, tag + " cmi vs entropy");
        for (const auto& sl : pp.cmiTable.slices)
            assert_le(sl.mi, 2.0 * log2v, tag + " cmi slice vs entropy");
        count_flip(std::sqrt(2.0 * pp.ecmiPlain), pp.ecmiRows.expected_sqrt(2.0));
        count_flip(pp.ecmiRows.expected_sqrt(2.0), pp.ecmiTable.expected_sqrt(2.0));
        count_flip(pp.cmiRows.expected_sqrt(2.0), pp.cmiTable.expected_sqrt(2.0));
    }
    return audit;
}

}  // namespace

CmiAnalysis cmi_analysis(const SupersampleJoint& ss, double tol) {
    const auto [eGap, eSqGap] = ss.gap_moments();
    const Parts P = compute_parts(ss);
    CmiAnalysis out;
    out.expectedGap = eGap;
    out.expectedSqGap = eSqGap;
    out.bounds = assemble_bounds(ss, P, eGap, eSqGap);
    out.dpi = run_dpi(ss, P, tol);
    return out;
}

// The single-bound entry points recompute just what they need; fine for tests
// and small settings, use cmi_analysis to share work.

CmiBoundReport mask_cmi_bound(const SupersampleJoint& ss) {
    const std::size_t n = ss.setting.n;
    std::vector<std::size_t> jAxes(n);
    for (std::size_t i = 0; i < n; ++i) jAxes[i] = ss.jAxis(i);
    const ConditionalMI cmi = conditional_mi(ss.joint, {ss.wAxis()}, jAxes, zt_axes_of(n));
    CmiBoundReport r = base_report("gap_mask_cmi", abs_rat(ss.gap_moments().first));
    r.terms.push_back({"cmi", cmi.value});
    r.rhs = std::sqrt(2.0 * cmi.value / static_cast<double>(n));
    r.certifiedZero = cmi.allIndependent;
    return r;
}

namespace {

CmiBoundReport find_bound(const SupersampleJoint& ss, const std::string& name) {
    const CmiAnalysis a = cmi_analysis(ss);
    for (const auto& b : a.bounds)
        if (b.bound == name) return b;
    throw DomainError("unknown bound " + name);
}

}  // namespace

CmiBoundReport samplewise_cmi_rows(const SupersampleJoint& ss) {
    return find_bound(ss, "gap_samplewise_cmi_rows");
}
CmiBoundReport samplewise_cmi_table(const SupersampleJoint& ss) {
    return find_bound(ss, "gap_samplewise_cmi_table");
}
CmiBoundReport samplewise_ecmi(const SupersampleJoint& ss) {
    return find_bound(ss, "gap_samplewise_ecmi");
}
CmiBoundReport samplewise_ecmi_rows(const SupersampleJoint& ss) {
    return find_bound(ss, "gap_samplewise_ecmi_rows");
}
CmiBoundReport samplewise_ecmi_table(const SupersampleJoint& ss) {
    return find_bound(ss, "gap_samplewise_ecmi_table");
}
CmiBoundReport sq_samplewise_cmi_bound(const SupersampleJoint& ss) {
    return find_bound(ss, "sqgap_samplewise_cmi_table");
}

std::vector<CmiBoundReport> sq_pairwise_cmi_bounds(const SupersampleJoint& ss) {
    const CmiAnalysis a = cmi_analysis(ss);
    std::vector<CmiBoundReport> out;
    for (const auto& b : a.bounds)
        if (b.bound.rfind("sqgap_pair_", 0) == 0) out.push_back(b);
    return out;
}

}  // namespace gaplab
