// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "subpot/errors.hpp"
#include "subpot/frobenius.hpp"
#include "subpot/geometry.hpp"
#include "subpot/report.hpp"

using namespace subpot;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

struct CorpusEntry {
    std::string file;
    double lo, hi;
};

const std::vector<CorpusEntry> kSubmanifolds = {
    {"circle.json", 0.0, 6.28},
    {"plane.json", -2.0, 2.0},
    {"torus.json", 0.0, 6.28},
    {"graph.json", -0.8, 0.8},
    {"pseudo_graph.json", 0.1, 0.6},
};

Eigen::VectorXd random_point(std::mt19937& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u(i) = dist(rng);
    return u;
}

SubmanifoldSpec sub_corpus(const std::string& name) {
    return std::get<SubmanifoldSpec>(load_spec(testing::corpus_path(name)).spec);
}

FrobeniusSpec frob_corpus(const std::string& name) {
    return std::get<FrobeniusSpec>(load_spec(testing::corpus_path(name)).spec);
}

bool jet_vs_oracle(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    std::uniform_int_distribution<int> nvars_dist(1, 4);
    int valid = 0;
    double worst12 = 0.0, worst3 = 0.0;
    for (int attempt = 0; attempt < 30000 && valid < 120; ++attempt) {
        const int nvars = nvars_dist(rng);
        const ExprPtr e = testing::random_expression(rng, 6, nvars);
        Eigen::VectorXd u(nvars);
        for (int i = 0; i < nvars; ++i) u(i) = point(rng);
        Jet3 jet(nvars);
        try {
            jet = eval_jet(*e, u);
        } catch (const DomainError&) {
            continue;
        }
        if (!std::isfinite(jet.value) || testing::max_coefficient(jet) > 50.0) continue;
        const auto f = [&e](const Eigen::VectorXd& x) { return eval(*e, x); };
        testing::JetFdErrors err;
        try {
            err = testing::jet_vs_fd(f, jet, u);
        } catch (const DomainError&) {
            continue;
        }
        if (!err.oracle_ok) continue;
        worst12 = std::max(worst12, err.order12);
        worst3 = std::max(worst3, err.order3);
        ++valid;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d trials, worst rel err %.2e (orders 1-2) %.2e (order 3), %.1fs",
                  valid, worst12, worst3, secs);
    detail = buf;
    return valid >= 100 && worst12 <= 1e-5 && worst3 <= 1e-3 && secs < 10.0;
}

bool theorem1(std::string& detail) {
    std::mt19937 rng(101);
    double worst = 0.0;
    for (const auto& entry : kSubmanifolds) {
        const SubmanifoldSpec spec = sub_corpus(entry.file);
        for (int t = 0; t < 5; ++t) {
            const PointAnalysis pa = analyze_point(
                spec, random_point(rng, spec.param_dim, entry.lo, entry.hi));
            worst = std::max({worst, pa.levi_civita_defect_a, pa.levi_civita_defect_d});
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "max Levi-Civita defect %.2e", worst);
    detail = buf;
    return worst <= 1e-8;
}

bool theorem2(std::string& detail) {
    std::mt19937 rng(202);
    double worst = 0.0;
    bool involution = true;
    for (const auto& entry : kSubmanifolds) {
        const SubmanifoldSpec spec = sub_corpus(entry.file);
        const SubmanifoldSpec dual = dualize(spec);
        const SubmanifoldSpec twice = dualize(dual);
        for (int i = 0; i < 2 * spec.param_dim; ++i) {
            involution = involution && structurally_equal(*twice.position.components[i],
                                                          *spec.position.components[i]);
            involution = involution &&
                         structurally_equal(*twice.normal_potential.components[i],
                                            *spec.normal_potential.components[i]);
        }
        for (int t = 0; t < 5; ++t) {
            const Eigen::VectorXd u = random_point(rng, spec.param_dim, entry.lo, entry.hi);
            const PointAnalysis p = analyze_point(spec, u);
            const PointAnalysis q = analyze_point(dual, u);
            worst = std::max({worst, (p.g - q.h).cwiseAbs().maxCoeff(),
                              (p.h - q.g).cwiseAbs().maxCoeff(), (p.a - q.d).maxAbs(),
                              (p.d - q.a).maxAbs(), (p.b - q.c).maxAbs(), (p.c - q.b).maxAbs(),
                              std::abs(p.codazzi_residual - q.codazzi_residual)});
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "max swap defect %.2e, involution %s", worst,
                  involution ? "exact" : "broken");
    detail = buf;
    return involution && worst <= 1e-10;
}

bool gauss_codazzi_ricci(std::string& detail) {
    std::mt19937 rng(303);
    double worst = 0.0;
    for (const auto& entry : kSubmanifolds) {
        const SubmanifoldSpec spec = sub_corpus(entry.file);
        for (int t = 0; t < 5; ++t) {
            const CurvatureResidual cr = curvature_residual(
                spec, random_point(rng, spec.param_dim, entry.lo, entry.hi));
            worst = std::max({worst, cr.gauss, cr.codazzi, cr.ricci});
        }
    }

    const SubmanifoldSpec graph = sub_corpus("graph.json");
    Eigen::VectorXd u(2);
    u << 0.3, 0.2;
    ConnectionData cd = frame_connection(graph, u);
    cd.connection[0](graph.param_dim, 0) += 0.1;
    const CurvatureResidual broken = connection_curvature(cd.connection, cd.dconnection);
    const double detected = std::max({broken.gauss, broken.codazzi, broken.ricci});

    char buf[100];
    std::snprintf(buf, sizeof(buf), "max residual %.2e, perturbation residual %.2e", worst,
                  detected);
    detail = buf;
    return worst <= 1e-8 && detected > 1e-3;
}

bool wdvv_criterion(std::string& detail) {
    const FrobeniusSpec cubic = frob_corpus("frob_cubic_n2.json");
    const GridSpec grid8 = GridSpec::parse("-2:2:8,-2:2:8");
    double cubic_max = 0.0;
    for (long i = 0; i < grid8.total(); ++i)
        cubic_max = std::max(cubic_max, wdvv_residual(cubic, grid8.point(i)));

    FrobeniusSpec one;
    one.param_dim = 1;
    one.eta = Eigen::MatrixXd::Identity(1, 1);
    one.c_const = 1.0;
    one.phi = parse("exp(u1) + u1^4", 1);
    Eigen::VectorXd u1(1);
    u1 << 0.9;
    const double one_dim = wdvv_residual(one, u1);

    const FrobeniusSpec quartic = frob_corpus("frob_quartic_n3.json");
    std::mt19937 rng(404);
    double brute_max = 0.0, agree = 0.0;
    for (int t = 0; t < 5; ++t) {
        const Eigen::VectorXd u = random_point(rng, 3, -1.0, 1.0);
        const double brute = testing::brute_wdvv_residual(quartic, u, 0.02);
        const double jet = wdvv_residual(quartic, u);
        brute_max = std::max(brute_max, brute);
        agree = std::max(agree, std::abs(brute - jet));
    }

    char buf[140];
    std::snprintf(buf, sizeof(buf),
                  "cubic max %.2e, one-dim %.1e, quartic oracle max %.2e, oracle-jet gap %.2e",
                  cubic_max, one_dim, brute_max, agree);
    detail = buf;
    return cubic_max <= 1e-12 && one_dim == 0.0 && brute_max <= 1e-7 && agree <= 1e-8;
}

bool realization(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const FrobeniusSpec quartic = frob_corpus("frob_quartic_n3.json");
    Eigen::VectorXd zero(3), e1(3), e12(3), one(3), e3(3), e23(3);
    zero << 0, 0, 0;
    e1 << 1, 0, 0;
    e12 << 1, 1, 0;
    one << 1, 1, 1;
    e3 << 0, 0, 1;
    e23 << 0, 1, 1;
    RealizeOptions opt; // step 1e-3
    const FrameState a = realize(quartic, {zero, e1, e12, one}, opt);
    const FrameState b = realize(quartic, {zero, e3, e23, one}, opt);
    const double path_gap =
        std::max((a.frame - b.frame).cwiseAbs().maxCoeff(),
                 (a.position - b.position).cwiseAbs().maxCoeff());
    const RealizeReport rep = realize_verify(quartic, a);
    const double defects = std::max({rep.g_defect, rep.h_defect, rep.orth_defect});

    bool bad_rejected = false;
    double bad_defect = 0.0;
    const FrobeniusSpec bad = frob_corpus("frob_bad_n2.json");
    Eigen::VectorXd z2(2), o2(2);
    z2 << 0, 0;
    o2 << 1, 1;
    try {
        const FrameState s = realize(bad, {z2, o2}, opt);
        const RealizeReport r = realize_verify(bad, s);
        bad_defect = std::max({r.g_defect, r.h_defect, r.orth_defect});
    } catch (const IntegrationError&) {
        bad_rejected = true;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "endpoint gap %.2e, defects %.2e, violating potential %s, %.1fs", path_gap,
                  defects, bad_rejected ? "gated" : "not gated", secs);
    detail = buf;
    return path_gap <= 1e-6 && defects <= 1e-8 && (bad_rejected || bad_defect > 1e-3) &&
           secs < 30.0;
}

bool expm_oracle(std::string& detail) {
    const FrobeniusSpec cubic = frob_corpus("frob_cubic_n2.json");
    Eigen::VectorXd zero(2), end(2);
    zero << 0, 0;
    end << 1, 0;
    const FrameState state = realize(cubic, {zero, end});
    const auto conn = flat_connection(cubic, zero);
    const Eigen::MatrixXd expected = realization_form(cubic).transform * testing::expm(conn[0]);
    const double gap = (state.frame - expected).cwiseAbs().maxCoeff();
    char buf[80];
    std::snprintf(buf, sizeof(buf), "frame vs expm gap %.2e", gap);
    detail = buf;
    return gap <= 1e-8;
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd =
        std::string(SUBPOT_CLI_PATH) + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool cli_determinism(std::string& detail) {
    const fs::path dir = fs::temp_directory_path();
    const fs::path r1 = dir / "subpot_acceptance_r1.json";
    const fs::path r2 = dir / "subpot_acceptance_r2.json";
    const std::string spec = testing::corpus_path("circle.json");
    const std::string args = spec + " --grid 0:6.28:32 --format structured";
    const int e1 = run_cli("analyze " + args, r1);
    const int e2 = run_cli("analyze " + args, r2);
    const bool identical = slurp(r1) == slurp(r2) && !slurp(r1).empty();

    const fs::path scratch = dir / "subpot_acceptance_scratch.txt";
    const int pass_code = run_cli("analyze " + spec + " --grid 0:6.28:4", scratch);
    const int fail_code = run_cli(
        "wdvv " + testing::corpus_path("frob_bad_n2.json") + " --grid -1:1:4,-1:1:4", scratch);
    const int usage_code = run_cli("analyze /nonexistent.json --grid 0:1:2", scratch);

    char buf[120];
    std::snprintf(buf, sizeof(buf), "byte-identical %s, exit codes %d/%d/%d/%d/%d",
                  identical ? "yes" : "no", e1, e2, pass_code, fail_code, usage_code);
    detail = buf;
    return identical && e1 == 0 && e2 == 0 && pass_code == 0 && fail_code == 1 && usage_code == 2;
}

} // namespace

int main() {
    criterion(1, "jet coefficients vs finite-difference oracle", jet_vs_oracle);
    criterion(2, "connection coefficients are Levi-Civita for both metrics", theorem1);
    criterion(3, "duality swaps the full analysis and is an involution", theorem2);
    criterion(4, "zero-curvature residuals vanish and detect perturbations", gauss_codazzi_ricci);
    criterion(5, "associativity residual: exact cases and oracle agreement", wdvv_criterion);
    criterion(6, "realization: path independence, metric defects, gating", realization);
    criterion(7, "constant-coefficient endpoint matches the matrix exponential", expm_oracle);
    criterion(8, "CLI determinism and exit codes", cli_determinism);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
