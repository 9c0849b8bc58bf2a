#include "gaplab/serialize.hpp"

#include <iomanip>
#include <sstream>

#include "gaplab/errors.hpp"
#include "gaplab/version.hpp"

namespace gaplab {

namespace {

std::string csv_num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

Json flip_json(const FlipStat& f) {
    Json j;
    j["count"] = f.count;
    if (f.any) j["firstSeed"] = f.firstSeed;
    return j;
}

void bound_fields(const BoundReport& r, Json& j) {
    j["bound"] = r.bound;
    j["lhs"] = r.lhs;
    if (r.lhsExact) j["lhsExact"] = rat_json(*r.lhsExact);
    j["rhs"] = r.rhs;
    j["slack"] = r.slack();
    j["holds"] = r.holds();
    if (r.sigma != 0) j["sigma"] = r.sigma;
    Json terms = Json::object();
    for (const auto& t : r.terms) terms[t.label] = t.value;
    j["terms"] = std::move(terms);
}

template <typename R>
std::string csv_rows(const std::vector<R>& reports) {
    std::string out = "boundName,lhs,rhs,slack,holds\n";
    for (const BoundReport& r : reports) {
        out += r.bound + ',' + csv_num(r.lhs) + ',' + csv_num(r.rhs) + ',' + csv_num(r.slack()) +
               ',' + (r.holds() ? "true" : "false") + '\n';
    }
    return out;
}

std::vector<std::vector<Rat>> rat_grid_from_json(const Json& j) {
    std::vector<std::vector<Rat>> grid;
    for (const auto& row : j) {
        grid.emplace_back();
        for (const auto& cell : row) grid.back().push_back(parse_rat(cell.get<std::string>()));
    }
    return grid;
}

}  // namespace

Json rat_json(const Rat& x) {
    Json j;
    j["rat"] = rat_str(x);
    j["dec"] = to_double(x);
    return j;
}

Json to_json(const BoundReport& r) {
    Json j;
    bound_fields(r, j);
    return j;
}

Json to_json(const CmiBoundReport& r) {
    Json j;
    bound_fields(r, j);
    j["certifiedZero"] = r.certifiedZero;
    return j;
}

Json to_json(const GapStats& st) {
    Json j;
    j["expectedGap"] = rat_json(st.expectedGap);
    j["expectedSquaredGap"] = rat_json(st.expectedSquaredGap);
    Json moments = Json::object();
    for (const auto& [k, v] : st.momentK) moments[std::to_string(k)] = rat_json(v);
    j["moments"] = std::move(moments);
    Json dist = Json::array();
    for (const auto& [g, p] : st.gapDist) {
        Json e;
        e["gap"] = rat_json(g);
        e["p"] = rat_json(p);
        dist.push_back(std::move(e));
    }
    j["gapDist"] = std::move(dist);
    j["perSampleMI"] = st.perSampleMI;
    j["perSampleAllIndependent"] = st.perSampleAllIndependent;
    j["pairMI"] = st.pairMI;
    return j;
}

Json to_json(const CEReport& rep) {
    Json j;
    Json params;
    params["r"] = rep.params.r;
    params["d"] = rep.params.d;
    params["n"] = rep.params.n();
    params["N"] = rep.params.N();
    params["delta"] = rat_json(rep.params.delta);
    params["mode"] = rep.params.mode == CEParams::Mode::exact ? "exact" : "mc";
    if (rep.params.mode == CEParams::Mode::monte_carlo) {
        params["trials"] = rep.params.trials;
        params["seed"] = rep.params.seed;
    }
    j["params"] = std::move(params);

    j["hypothesisCount"] = rep.hypothesisCount.get_str();
    j["containingCount"] = rep.containingCount.get_str();
    j["duplicateProb"] = rat_json(rep.duplicateProb);
    j["klFormula"] = rep.klFormula;
    j["klChainLower"] = rep.klChainLower;
    j["klTarget"] = rep.klTarget;
    j["klHolds"] = rep.klHolds;

    if (rep.exactEvaluated) {
        Json e;
        e["klDupFree"] = rep.klDupFree;
        e["klDeviation"] = rep.klDeviation;
        e["klMatchesFormula"] = rep.klMatchesFormula;
        e["marginalUniform"] = rep.marginalUniform;
        e["independenceExact"] = rep.independenceExact;
        e["perSampleMIMax"] = rep.perSampleMIMax;
        e["expectedGap"] = rat_json(rep.expectedGap);
        e["zeroGapExact"] = rep.zeroGapExact;
        e["tailTwoSided"] = rat_json(rep.tailTwoSided);
        e["tailOneSided"] = rat_json(rep.tailOneSided);
        e["tailHolds"] = rep.tailHolds;
        j["exact"] = std::move(e);
    }
    if (rep.mcEvaluated) {
        Json m;
        m["trials"] = rep.trials;
        m["dupFreeTrials"] = rep.dupFreeTrials;
        m["binaryViolations"] = rep.binaryViolations;
        m["hitsTwoSided"] = rep.hitsTwoSided;
        m["hitsOneSided"] = rep.hitsOneSided;
        m["hitsMidRisk"] = rep.hitsMidRisk;
        m["gapMean"] = rep.gapMean;
        m["gapMeanSe"] = rep.gapMeanSe;
        m["tailFreq"] = rep.tailFreq;
        m["tailSe"] = rep.tailSe;
        m["midRiskFreq"] = rep.midRiskFreq;
        m["midRiskSe"] = rep.midRiskSe;
        m["binaryHolds"] = rep.mcBinaryHolds;
        m["zeroGapHolds"] = rep.mcZeroGapHolds;
        m["tailHolds"] = rep.mcTailHolds;
        m["midRiskHolds"] = rep.mcMidRiskHolds;
        j["sampled"] = std::move(m);
    }
    j["allChecksPass"] = rep.all();
    return j;
}

Json to_json(const CovCheck& c) {
    Json j;
    j["n0"] = c.ens.n0;
    j["n1"] = c.ens.n1;
    j["n"] = c.ens.n;
    j["jointProb"] = rat_json(c.jointProb);
    j["marginalProb"] = rat_json(c.marginalProb);
    j["cov"] = rat_json(c.cov);
    j["ratio"] = rat_json(c.ratio);
    j["delta"] = rat_json(c.delta);
    j["holds"] = c.holds;
    return j;
}

Json to_json(const NprimeResult& r) {
    Json j;
    j["found"] = r.found;
    j["nprime"] = r.nprime;
    j["capHit"] = r.capHit;
    j["totalCap"] = r.totalCap;
    Json v = Json::array();
    for (const auto& [n0, n1] : r.violations) v.push_back(Json::array({n0, n1}));
    j["violations"] = std::move(v);
    return j;
}

Json to_json(const DpiAudit& d) {
    Json j;
    j["ok"] = d.ok;
    j["worstSlack"] = d.worstSlack;
    j["sqrtFlips"] = d.sqrtFlips;
    j["violations"] = d.violations;
    return j;
}

Json to_json(const CmiAnalysis& a) {
    Json j;
    j["expectedGap"] = rat_json(a.expectedGap);
    j["expectedSqGap"] = rat_json(a.expectedSqGap);
    Json bounds = Json::array();
    for (const auto& b : a.bounds) bounds.push_back(to_json(b));
    j["bounds"] = std::move(bounds);
    j["ordering"] = to_json(a.dpi);
    return j;
}

Json to_json(const AuditResult& a) {
    Json j;
    Json cfg;
    cfg["seeds"] = a.config.seeds;
    cfg["baseSeed"] = a.config.baseSeed;
    cfg["maxZ"] = a.config.caps.maxZ;
    cfg["maxN"] = a.config.caps.maxN;
    cfg["maxW"] = a.config.caps.maxW;
    cfg["tol"] = a.config.tol;
    cfg["maxMoment"] = a.config.maxMoment;
    j["config"] = std::move(cfg);
    j["settingsChecked"] = a.settingsChecked;
    j["boundsChecked"] = a.boundsChecked;
    j["exactChecks"] = a.exactChecks;
    j["worstSlack"] = a.worstSlack;
    j["dpiSqrtFlips"] = a.dpiSqrtFlips;
    Json flips;
    flips["samplewiseCmiRowsVsTable"] = flip_json(a.flipSamplewiseCmi);
    flips["samplewiseEcmiChain"] = flip_json(a.flipSamplewiseEcmi);
    flips["pairEcmiChain"] = flip_json(a.flipPairEcmi);
    flips["pairCmiRowsVsTable"] = flip_json(a.flipPairCmi);
    j["sqrtOutsideFlips"] = std::move(flips);
    Json v = Json::array();
    for (const auto& viol : a.violations) {
        Json e;
        e["seed"] = viol.seed;
        e["check"] = viol.check;
        e["detail"] = viol.detail;
        v.push_back(std::move(e));
    }
    j["violations"] = std::move(v);
    j["ok"] = a.ok();
    return j;
}

Json to_json(const LearningSetting& s) {
    Json j;
    j["name"] = s.name;
    j["zCount"] = s.zCount;
    j["n"] = s.n;
    j["wCount"] = s.wCount;
    Json pz = Json::array();
    for (const Rat& p : s.pz) pz.push_back(rat_str(p));
    j["pz"] = std::move(pz);
    Json kernel = Json::array();
    for (const auto& row : s.kernel) {
        Json r = Json::array();
        for (const Rat& p : row) r.push_back(rat_str(p));
        kernel.push_back(std::move(r));
    }
    j["kernel"] = std::move(kernel);
    Json loss = Json::array();
    for (const auto& row : s.loss) {
        Json r = Json::array();
        for (const Rat& v : row) r.push_back(rat_str(v));
        loss.push_back(std::move(r));
    }
    j["loss"] = std::move(loss);
    return j;
}

LearningSetting setting_from_json(const Json& j) {
    LearningSetting s;
    try {
        s.name = j.at("name").get<std::string>();
        s.zCount = j.at("zCount").get<std::size_t>();
        s.n = j.at("n").get<std::size_t>();
        s.wCount = j.at("wCount").get<std::size_t>();
        for (const auto& p : j.at("pz")) s.pz.push_back(parse_rat(p.get<std::string>()));
        s.kernel = rat_grid_from_json(j.at("kernel"));
        s.loss = rat_grid_from_json(j.at("loss"));
    } catch (const Json::exception& e) {
        throw DomainError(std::string("malformed setting json: ") + e.what());
    }
    s.validate();
    return s;
}

Json wrap_report(const std::string& kind, Json payload) {
    Json j;
    j["schema"] = kReportSchema;
    j["version"] = kVersion;
    j["kind"] = kind;
    j["report"] = std::move(payload);
    return j;
}

std::string csv_bounds(const std::vector<BoundReport>& reports) { return csv_rows(reports); }
std::string csv_bounds(const std::vector<CmiBoundReport>& reports) { return csv_rows(reports); }

}  // namespace gaplab
