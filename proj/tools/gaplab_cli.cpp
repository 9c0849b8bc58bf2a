#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gaplab/audit.hpp"
#include "gaplab/bounds.hpp"
#include "gaplab/cmi.hpp"
#include "gaplab/counterexample.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/lemmacov.hpp"
#include "gaplab/serialize.hpp"
#include "gaplab/setting.hpp"
#include "gaplab/version.hpp"

namespace {

using gaplab::Json;

// exit codes: 0 all checks pass, 1 a reported check failed, 2 usage or
// malformed input, 3 exact-computation size guard tripped

struct Output {
    std::string path;  // empty: stdout
    std::string format = "json";

    int emit_text(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return 0;
        }
        std::ofstream f(path);
        if (!f) {
            std::cerr << "cannot open " << path << "\n";
            return 2;
        }
        f << text;
        return 0;
    }
};

int finish(const Output& out, const std::string& kind, const Json& payload, bool ok,
           const std::string* csv) {
    int rc;
    if (out.format == "csv") {
        if (!csv) {
            std::cerr << "csv output is only available for bounds-report and cmi-report\n";
            return 2;
        }
        rc = out.emit_text(*csv);
    } else {
        rc = out.emit_text(gaplab::wrap_report(kind, payload).dump(2) + "\n");
    }
    if (rc != 0) return rc;
    return ok ? 0 : 1;
}

unsigned log2_exact(unsigned n) {
    for (unsigned r = 0; r < 32; ++r)
        if (n == 1u << r) return r;
    throw gaplab::DomainError("training-set size must be a power of two");
}

gaplab::LearningSetting pick_setting(const std::string& file, bool haveFuzz,
                                     std::uint64_t fuzzSeed, unsigned n, unsigned d) {
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) throw gaplab::DomainError("cannot read setting file " + file);
        return gaplab::setting_from_json(Json::parse(f));
    }
    if (haveFuzz) return gaplab::random_setting(fuzzSeed, {});
    gaplab::CEParams p;
    p.r = log2_exact(n);
    p.d = d;
    return gaplab::construct(p).setting;
}

Json setting_summary(const gaplab::LearningSetting& s) {
    Json j;
    j["name"] = s.name;
    j["zCount"] = s.zCount;
    j["n"] = s.n;
    j["wCount"] = s.wCount;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact laboratory for generalization-gap bounds on finite settings"};
    app.set_version_flag("--version", std::string(gaplab::kVersion));
    app.require_subcommand(1);

    Output out;
    app.add_option("--out", out.path, "write the report to this file instead of stdout");
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    int rc = 0;

    // verify-counterexample
    unsigned vcN = 2, vcD = 3;
    std::string vcMode = "exact", vcDelta = "1/4";
    std::uint64_t vcTrials = 100000, vcSeed = 1;
    auto* vc = app.add_subcommand("verify-counterexample",
                                  "check every property of the hard instance");
    vc->fallthrough();
    vc->add_option("--n", vcN, "training-set size (power of two)")->capture_default_str();
    vc->add_option("--d", vcD, "data space has 2^d points")->capture_default_str();
    vc->add_option("--mode", vcMode, "exact enumeration or monte carlo")
        ->check(CLI::IsMember({"exact", "mc"}))
        ->capture_default_str();
    vc->add_option("--trials", vcTrials, "monte-carlo trials")->capture_default_str();
    auto* vcSeedOpt = vc->add_option("--seed", vcSeed, "monte-carlo seed");
    vc->add_option("--delta", vcDelta, "tolerated duplicate probability")
        ->capture_default_str();
    vc->callback([&] {
        if (vcMode == "mc" && vcSeedOpt->count() == 0) {
            std::cerr << "--seed is required with --mode mc\n";
            rc = 2;
            return;
        }
        gaplab::CEParams p;
        p.r = log2_exact(vcN);
        p.d = vcD;
        p.delta = gaplab::parse_rat(vcDelta);
        p.mode = vcMode == "mc" ? gaplab::CEParams::Mode::monte_carlo
                                : gaplab::CEParams::Mode::exact;
        p.trials = vcTrials;
        p.seed = vcSeed;
        const gaplab::CEReport rep = gaplab::verify_properties(p);
        rc = finish(out, "counterexample", gaplab::to_json(rep), rep.all(), nullptr);
    });

    // lemma-cov
    unsigned lcN0 = 2, lcN1 = 2, lcN = 2, lcCap = 40;
    std::string lcDelta = "1/2";
    bool lcFind = false;
    auto* lc = app.add_subcommand("lemma-cov",
                                  "block-parity covariance vs delta * marginal^2");
    lc->fallthrough();
    lc->add_option("--n0", lcN0, "points of parity zero")->capture_default_str();
    lc->add_option("--n1", lcN1, "points of parity one")->capture_default_str();
    lc->add_option("--n", lcN, "block size")->capture_default_str();
    lc->add_option("--delta", lcDelta, "covariance slack factor")->capture_default_str();
    lc->add_flag("--find-nprime", lcFind,
                 "scan a grid for the smallest safe min(n0, n1) threshold");
    lc->add_option("--cap", lcCap, "largest total pool size scanned")->capture_default_str();
    lc->callback([&] {
        const gaplab::Rat delta = gaplab::parse_rat(lcDelta);
        if (lcFind) {
            const gaplab::NprimeResult r = gaplab::find_nprime(lcN, delta, lcCap);
            rc = finish(out, "parity-nprime", gaplab::to_json(r), r.found, nullptr);
        } else {
            const gaplab::CovCheck c =
                gaplab::check_covariance({lcN0, lcN1, lcN}, delta);
            rc = finish(out, "parity-covariance", gaplab::to_json(c), c.holds, nullptr);
        }
    });

    // bounds-report
    std::string brSetting, brSigma = "1/2";
    std::uint64_t brFuzz = 0;
    unsigned brN = 2, brD = 3;
    auto* br = app.add_subcommand("bounds-report",
                                  "expected- and squared-gap bounds on one setting");
    br->fallthrough();
    br->add_option("--setting", brSetting, "setting json file");
    auto* brFuzzOpt = br->add_option("--fuzz-seed", brFuzz, "derive the setting from a seed");
    br->add_option("--n", brN, "hard-instance training-set size")->capture_default_str();
    br->add_option("--d", brD, "hard-instance dimension")->capture_default_str();
    br->add_option("--sigma", brSigma, "sub-gaussian scale")->capture_default_str();
    br->callback([&] {
        gaplab::LearningSetting s =
            pick_setting(brSetting, brFuzzOpt->count() > 0, brFuzz, brN, brD);
        const gaplab::SettingAnalysis an = gaplab::analyze(std::move(s));
        const double sigma = gaplab::to_double(gaplab::parse_rat(brSigma));
        const auto reports = gaplab::standard_bounds(an, sigma);
        bool ok = true;
        Json bounds = Json::array();
        for (const auto& r : reports) {
            ok = ok && r.holds();
            bounds.push_back(gaplab::to_json(r));
        }
        Json payload;
        payload["setting"] = setting_summary(an.setting);
        payload["stats"] = gaplab::to_json(an.stats);
        payload["bounds"] = std::move(bounds);
        const std::string csv = gaplab::csv_bounds(reports);
        rc = finish(out, "bounds", payload, ok, &csv);
    });

    // cmi-report
    std::string crSetting;
    std::uint64_t crFuzz = 0;
    unsigned crN = 2, crD = 3;
    auto* cr = app.add_subcommand(
        "cmi-report", "paired-sample information bounds and ordering audit on one setting");
    cr->fallthrough();
    cr->add_option("--setting", crSetting, "setting json file");
    auto* crFuzzOpt = cr->add_option("--fuzz-seed", crFuzz, "derive the setting from a seed");
    cr->add_option("--n", crN, "hard-instance training-set size")->capture_default_str();
    cr->add_option("--d", crD, "hard-instance dimension")->capture_default_str();
    cr->callback([&] {
        gaplab::LearningSetting s =
            pick_setting(crSetting, crFuzzOpt->count() > 0, crFuzz, crN, crD);
        const gaplab::SupersampleJoint ss = gaplab::build_cmi_joint(s);
        const gaplab::CmiAnalysis a = gaplab::cmi_analysis(ss);
        bool ok = a.dpi.ok;
        for (const auto& b : a.bounds) ok = ok && b.holds();
        Json payload;
        payload["setting"] = setting_summary(ss.setting);
        payload.update(gaplab::to_json(a));
        const std::string csv = gaplab::csv_bounds(a.bounds);
        rc = finish(out, "cmi", payload, ok, &csv);
    });

    // random-audit
    gaplab::AuditConfig cfg;
    auto* ra = app.add_subcommand("random-audit",
                                  "fuzz random settings and assert every bound");
    ra->fallthrough();
    ra->add_option("--seeds", cfg.seeds, "number of settings")->capture_default_str();
    ra->add_option("--seed", cfg.baseSeed, "first seed")->required();
    ra->add_option("--max-z", cfg.caps.maxZ, "data-space size cap")->capture_default_str();
    ra->add_option("--max-n", cfg.caps.maxN, "training-set size cap")->capture_default_str();
    ra->add_option("--max-w", cfg.caps.maxW, "hypothesis-count cap")->capture_default_str();
    ra->add_option("--tol", cfg.tol, "float comparison tolerance")->capture_default_str();
    ra->callback([&] {
        const gaplab::AuditResult res = gaplab::run_audit(cfg);
        rc = finish(out, "audit", gaplab::to_json(res), res.ok(), nullptr);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const gaplab::SizeGuardError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return rc;
}
