#include "subpot/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subpot/errors.hpp"
#include "subpot/jet.hpp"
#include "subpot/version.hpp"

namespace subpot {

namespace {

constexpr double kDualitySwapTol = 1e-10;
constexpr double kReconstructionBound = 1e-10;
constexpr double kFdCheckTol = 1e-4;

Json vector_to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

Json tensor_to_json(const Tensor3& t) {
    Json out = Json::array();
    for (int k = 0; k < t.dim(); ++k) {
        Json slice = Json::array();
        for (int i = 0; i < t.dim(); ++i) {
            Json row = Json::array();
            for (int j = 0; j < t.dim(); ++j) row.push_back(t(k, i, j));
            slice.push_back(row);
        }
        out.push_back(slice);
    }
    return out;
}

const Json& require_field(const Json& doc, const char* name) {
    const auto it = doc.find(name);
    if (it == doc.end()) throw SchemaError(std::string("missing field '") + name + "'");
    return *it;
}

int require_int(const Json& doc, const char* name) {
    const Json& f = require_field(doc, name);
    if (!f.is_number_integer()) throw SchemaError(std::string("field '") + name + "' must be an integer");
    return f.get<int>();
}

double require_number(const Json& doc, const char* name) {
    const Json& f = require_field(doc, name);
    if (!f.is_number()) throw SchemaError(std::string("field '") + name + "' must be a number");
    return f.get<double>();
}

std::vector<std::string> require_string_list(const Json& doc, const char* name, int expected) {
    const Json& f = require_field(doc, name);
    if (!f.is_array() || static_cast<int>(f.size()) != expected)
        throw SchemaError(std::string("field '") + name + "' must be a list of " +
                          std::to_string(expected) + " expression strings");
    std::vector<std::string> out;
    for (const auto& e : f) {
        if (!e.is_string())
            throw SchemaError(std::string("field '") + name + "' must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Json tolerances_to_json(const ToleranceConfig& tol) {
    Json out;
    out["frame_condition_max"] = tol.frame_condition_max;
    out["residual_tol"] = tol.residual_tol;
    out["fd_check"] = tol.fd_check;
    out["integration_step"] = tol.integration_step;
    return out;
}

Json grid_to_json(const GridSpec& grid) {
    Json out = Json::array();
    for (const auto& ax : grid.axes)
        out.push_back(Json{{"min", ax.min}, {"max", ax.max}, {"count", ax.count}});
    return out;
}

Json meta_json(const char* command) {
    Json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["command"] = command;
    return meta;
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

void finish_verdicts(Json& report) {
    bool all = true;
    for (const auto& [key, value] : report["verdicts"].items()) {
        (void)key;
        if (value.get<std::string>() != "PASS") all = false;
    }
    report["overall"] = verdict(all);
}

double json_max(const Json& points, const char* field) {
    double m = 0.0;
    for (const auto& p : points)
        if (p.contains(field)) m = std::max(m, std::abs(p[field].get<double>()));
    return m;
}

int error_count(const Json& points) {
    int n = 0;
    for (const auto& p : points)
        if (p.contains("error")) ++n;
    return n;
}

} // namespace

GridSpec GridSpec::parse(std::string_view text) {
    GridSpec grid;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        GridAxis ax;
        double minv, maxv;
        int count;
        char c1, c2;
        std::stringstream axs(item);
        if (!(axs >> minv >> c1 >> maxv >> c2 >> count) || c1 != ':' || c2 != ':' ||
            (axs >> std::ws, !axs.eof()))
            throw SchemaError("grid axis '" + item + "' is not of the form min:max:count");
        ax.min = minv;
        ax.max = maxv;
        ax.count = count;
        if (ax.count < 1) throw SchemaError("grid axis count must be at least 1");
        if (!(ax.min <= ax.max)) throw SchemaError("grid axis must have min <= max");
        grid.axes.push_back(ax);
    }
    if (grid.axes.empty()) throw SchemaError("grid has no axes");
    return grid;
}

long GridSpec::total() const {
    long t = 1;
    for (const auto& ax : axes) t *= ax.count;
    return t;
}

Eigen::VectorXd GridSpec::point(long index) const {
    const int n = static_cast<int>(axes.size());
    Eigen::VectorXd u(n);
    long rest = index;
    for (int k = n - 1; k >= 0; --k) {
        const long i = rest % axes[k].count;
        rest /= axes[k].count;
        u(k) = axes[k].count == 1
                   ? axes[k].min
                   : axes[k].min + (axes[k].max - axes[k].min) * static_cast<double>(i) /
                                       (axes[k].count - 1);
    }
    return u;
}

void GridSpec::validate(int expected_axes) const {
    if (static_cast<int>(axes.size()) != expected_axes)
        throw DimensionError("grid has " + std::to_string(axes.size()) + " axes but the spec has " +
                             std::to_string(expected_axes) + " parameters");
}

LoadedSpec parse_spec_json(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("spec document must be an object");
    const Json& kind_field = require_field(doc, "kind");
    if (!kind_field.is_string()) throw SchemaError("field 'kind' must be a string");
    const std::string kind = kind_field.get<std::string>();
    const int n = require_int(doc, "N");
    if (n < 1) throw SchemaError("field 'N' must be at least 1");

    if (kind == "submanifold") {
        for (const auto& [key, value] : doc.items()) {
            (void)value;
            if (key != "kind" && key != "N" && key != "signs" && key != "r" && key != "n")
                throw SchemaError("unknown field '" + key + "' in submanifold spec");
        }
        const Json& signs_field = require_field(doc, "signs");
        if (!signs_field.is_array() || static_cast<int>(signs_field.size()) != 2 * n)
            throw SchemaError("field 'signs' must be a list of 2N entries of +1 or -1");
        std::vector<int> signs;
        for (const auto& s : signs_field) {
            if (!s.is_number_integer())
                throw SchemaError("field 'signs' must contain integers +1 or -1");
            signs.push_back(s.get<int>());
        }
        SubmanifoldSpec spec;
        spec.param_dim = n;
        spec.ambient = AmbientForm::from_signs(signs);
        spec.position = VectorFunction::parse(require_string_list(doc, "r", 2 * n), n);
        spec.normal_potential = VectorFunction::parse(require_string_list(doc, "n", 2 * n), n);
        spec.validate();

        LoadedSpec loaded;
        loaded.echo["kind"] = "submanifold";
        loaded.echo["N"] = n;
        loaded.echo["signs"] = signs_field;
        loaded.echo["r"] = require_field(doc, "r");
        loaded.echo["n"] = require_field(doc, "n");
        loaded.spec = std::move(spec);
        return loaded;
    }
    if (kind == "frobenius") {
        for (const auto& [key, value] : doc.items()) {
            (void)value;
            if (key != "kind" && key != "N" && key != "eta" && key != "c" && key != "phi")
                throw SchemaError("unknown field '" + key + "' in frobenius spec");
        }
        const Json& eta_field = require_field(doc, "eta");
        if (!eta_field.is_array() || static_cast<int>(eta_field.size()) != n)
            throw SchemaError("field 'eta' must be an N x N matrix");
        Eigen::MatrixXd eta(n, n);
        for (int i = 0; i < n; ++i) {
            const Json& row = eta_field[i];
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw SchemaError("field 'eta' must be an N x N matrix");
            for (int j = 0; j < n; ++j) {
                if (!row[j].is_number()) throw SchemaError("field 'eta' must contain numbers");
                eta(i, j) = row[j].get<double>();
            }
        }
        FrobeniusSpec spec;
        spec.param_dim = n;
        spec.eta = eta;
        spec.c_const = require_number(doc, "c");
        const Json& phi_field = require_field(doc, "phi");
        if (!phi_field.is_string()) throw SchemaError("field 'phi' must be an expression string");
        spec.phi = parse(phi_field.get<std::string>(), n);
        spec.validate();

        LoadedSpec loaded;
        loaded.echo["kind"] = "frobenius";
        loaded.echo["N"] = n;
        loaded.echo["eta"] = eta_field;
        loaded.echo["c"] = spec.c_const;
        loaded.echo["phi"] = phi_field;
        loaded.spec = std::move(spec);
        return loaded;
    }
    throw SchemaError("field 'kind' must be \"submanifold\" or \"frobenius\", got \"" + kind +
                      "\"");
}

LoadedSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("spec file " + path.string() + " is not valid JSON: " + e.what());
    }
    try {
        return parse_spec_json(doc);
    } catch (const Error& e) {
        throw SchemaError("spec file " + path.string() + ": " + e.what());
    }
}

double fd_decomposition_defect(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                               const ToleranceConfig& tol) {
    const int n = spec.param_dim;
    const int m = 2 * n;
    const Decomposition dec = decompose(spec, u, tol);

    const auto component = [](const VectorFunction& f, int alpha) {
        return [&f, alpha](const Eigen::VectorXd& x) { return eval(*f.components[alpha], x); };
    };

    Eigen::MatrixXd frame(m, m);
    const double step1 = default_fd_step(1);
    for (int al = 0; al < m; ++al)
        for (int i = 0; i < n; ++i) {
            const std::array<int, 1> idx{i};
            frame(al, i) = fd_partial(component(spec.position, al), u, idx, step1);
            frame(al, n + i) = fd_partial(component(spec.normal_potential, al), u, idx, step1);
        }
    const auto qr = frame.colPivHouseholderQr();

    const double step2 = default_fd_step(2);
    double defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Eigen::VectorXd wr(m), wn(m);
            const std::array<int, 2> idx{i, j};
            for (int al = 0; al < m; ++al) {
                wr(al) = fd_partial(component(spec.position, al), u, idx, step2);
                wn(al) = fd_partial(component(spec.normal_potential, al), u, idx, step2);
            }
            const Eigen::VectorXd x = qr.solve(wr);
            const Eigen::VectorXd y = qr.solve(wn);
            for (int k = 0; k < n; ++k) {
                defect = std::max(defect, std::abs(x(k) - dec.a(k, i, j)));
                defect = std::max(defect, std::abs(x(n + k) - dec.b(k, i, j)));
                defect = std::max(defect, std::abs(y(k) - dec.c(k, i, j)));
                defect = std::max(defect, std::abs(y(n + k) - dec.d(k, i, j)));
            }
        }
    return defect;
}

namespace {

Json analyze_submanifold_point(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                               const ToleranceConfig& tol) {
    Json entry;
    entry["u"] = vector_to_json(u);
    try {
        const PointAnalysis pa = analyze_point(spec, u, tol);
        entry["g"] = matrix_to_json(pa.g);
        entry["h"] = matrix_to_json(pa.h);
        entry["a"] = tensor_to_json(pa.a);
        entry["b"] = tensor_to_json(pa.b);
        entry["c"] = tensor_to_json(pa.c);
        entry["d"] = tensor_to_json(pa.d);
        entry["gauss_residual"] = pa.gauss_residual;
        entry["codazzi_residual"] = pa.codazzi_residual;
        entry["ricci_residual"] = pa.ricci_residual;
        entry["levi_civita_defect_a"] = pa.levi_civita_defect_a;
        entry["levi_civita_defect_d"] = pa.levi_civita_defect_d;
        entry["orthogonality_defect"] = pa.orthogonality_defect;
        entry["frame_condition"] = pa.frame_condition;
        entry["reconstruction_defect"] = pa.reconstruction_defect;
        if (tol.fd_check) entry["fd_decomposition_defect"] = fd_decomposition_defect(spec, u, tol);
    } catch (const Error& e) {
        entry["error"] = e.what();
    }
    return entry;
}

Json analyze_submanifold(const LoadedSpec& loaded, const SubmanifoldSpec& spec,
                         const GridSpec& grid, const ToleranceConfig& tol) {
    grid.validate(spec.param_dim);
    Json report;
    report["meta"] = meta_json("analyze");
    report["spec"] = loaded.echo;
    report["tolerances"] = tolerances_to_json(tol);
    report["grid"] = grid_to_json(grid);

    Json points = Json::array();
    for (long i = 0; i < grid.total(); ++i)
        points.push_back(analyze_submanifold_point(spec, grid.point(i), tol));
    report["points"] = points;

    Json agg;
    agg["points"] = grid.total();
    agg["errors"] = error_count(points);
    for (const char* f :
         {"gauss_residual", "codazzi_residual", "ricci_residual", "levi_civita_defect_a",
          "levi_civita_defect_d", "orthogonality_defect", "frame_condition",
          "reconstruction_defect"})
        agg[std::string("max_") + f] = json_max(points, f);
    if (tol.fd_check)
        agg["max_fd_decomposition_defect"] = json_max(points, "fd_decomposition_defect");
    report["aggregate"] = agg;

    Json verdicts;
    verdicts["no_errors"] = verdict(agg["errors"].get<int>() == 0);
    verdicts["levi_civita_a"] =
        verdict(agg["max_levi_civita_defect_a"].get<double>() <= tol.residual_tol);
    verdicts["levi_civita_d"] =
        verdict(agg["max_levi_civita_defect_d"].get<double>() <= tol.residual_tol);
    verdicts["gauss"] = verdict(agg["max_gauss_residual"].get<double>() <= tol.residual_tol);
    verdicts["codazzi"] = verdict(agg["max_codazzi_residual"].get<double>() <= tol.residual_tol);
    verdicts["ricci"] = verdict(agg["max_ricci_residual"].get<double>() <= tol.residual_tol);
    verdicts["reconstruction"] =
        verdict(agg["max_reconstruction_defect"].get<double>() <= kReconstructionBound);
    verdicts["frame_condition"] =
        verdict(agg["max_frame_condition"].get<double>() <= tol.frame_condition_max);
    if (tol.fd_check)
        verdicts["fd_cross_check"] =
            verdict(agg["max_fd_decomposition_defect"].get<double>() <= kFdCheckTol);
    report["verdicts"] = verdicts;
    finish_verdicts(report);
    return report;
}

Json analyze_frobenius(const LoadedSpec& loaded, const FrobeniusSpec& spec, const GridSpec& grid,
                       const ToleranceConfig& tol) {
    grid.validate(spec.param_dim);
    Json report;
    report["meta"] = meta_json("analyze");
    report["spec"] = loaded.echo;
    report["tolerances"] = tolerances_to_json(tol);
    report["grid"] = grid_to_json(grid);

    Json points = Json::array();
    for (long i = 0; i < grid.total(); ++i) {
        const Eigen::VectorXd u = grid.point(i);
        Json entry;
        entry["u"] = vector_to_json(u);
        try {
            entry["wdvv_residual"] = wdvv_residual(spec, u);
            const CurvatureResidual cr = flat_curvature(spec, u);
            entry["gauss_residual"] = cr.gauss;
            entry["codazzi_residual"] = cr.codazzi;
            entry["ricci_residual"] = cr.ricci;
        } catch (const Error& e) {
            entry["error"] = e.what();
        }
        points.push_back(entry);
    }
    report["points"] = points;

    Json agg;
    agg["points"] = grid.total();
    agg["errors"] = error_count(points);
    for (const char* f : {"wdvv_residual", "gauss_residual", "codazzi_residual", "ricci_residual"})
        agg[std::string("max_") + f] = json_max(points, f);
    report["aggregate"] = agg;

    Json verdicts;
    verdicts["no_errors"] = verdict(agg["errors"].get<int>() == 0);
    verdicts["wdvv"] = verdict(agg["max_wdvv_residual"].get<double>() <= tol.residual_tol);
    verdicts["gauss"] = verdict(agg["max_gauss_residual"].get<double>() <= tol.residual_tol);
    verdicts["codazzi"] = verdict(agg["max_codazzi_residual"].get<double>() <= tol.residual_tol);
    verdicts["ricci"] = verdict(agg["max_ricci_residual"].get<double>() <= tol.residual_tol);
    report["verdicts"] = verdicts;
    finish_verdicts(report);
    return report;
}

double tensor_swap_defect(const Tensor3& x, const Tensor3& y) { return (x - y).maxAbs(); }

} // namespace

Json analyze_report(const LoadedSpec& loaded, const GridSpec& grid, const ToleranceConfig& tol) {
    tol.validate();
    if (const auto* sub = std::get_if<SubmanifoldSpec>(&loaded.spec))
        return analyze_submanifold(loaded, *sub, grid, tol);
    return analyze_frobenius(loaded, std::get<FrobeniusSpec>(loaded.spec), grid, tol);
}

Json dualize_report(const LoadedSpec& loaded, const GridSpec& grid, const ToleranceConfig& tol) {
    tol.validate();
    const auto* sub = std::get_if<SubmanifoldSpec>(&loaded.spec);
    if (!sub) throw ValidationError("dualize requires a submanifold spec");
    const SubmanifoldSpec& spec = *sub;
    grid.validate(spec.param_dim);
    const SubmanifoldSpec dual = dualize(spec);
    const SubmanifoldSpec twice = dualize(dual);

    Json report;
    report["meta"] = meta_json("dualize");
    report["spec"] = loaded.echo;
    report["tolerances"] = tolerances_to_json(tol);
    report["grid"] = grid_to_json(grid);

    bool involution = true;
    for (int i = 0; i < 2 * spec.param_dim; ++i) {
        involution = involution && structurally_equal(*twice.position.components[i],
                                                      *spec.position.components[i]);
        involution = involution && structurally_equal(*twice.normal_potential.components[i],
                                                      *spec.normal_potential.components[i]);
    }

    Json points = Json::array();
    for (long i = 0; i < grid.total(); ++i) {
        const Eigen::VectorXd u = grid.point(i);
        Json entry;
        entry["u"] = vector_to_json(u);
        try {
            const PointAnalysis primal = analyze_point(spec, u, tol);
            const PointAnalysis dualpa = analyze_point(dual, u, tol);
            Json swap;
            swap["g_vs_dual_h"] = (primal.g - dualpa.h).cwiseAbs().maxCoeff();
            swap["h_vs_dual_g"] = (primal.h - dualpa.g).cwiseAbs().maxCoeff();
            swap["a_vs_dual_d"] = tensor_swap_defect(primal.a, dualpa.d);
            swap["d_vs_dual_a"] = tensor_swap_defect(primal.d, dualpa.a);
            swap["b_vs_dual_c"] = tensor_swap_defect(primal.b, dualpa.c);
            swap["c_vs_dual_b"] = tensor_swap_defect(primal.c, dualpa.b);
            entry["swap"] = swap;
            entry["codazzi_self_dual_defect"] =
                std::abs(primal.codazzi_residual - dualpa.codazzi_residual);
            double worst = entry["codazzi_self_dual_defect"].get<double>();
            for (const auto& [key, value] : swap.items()) {
                (void)key;
                worst = std::max(worst, value.get<double>());
            }
            entry["swap_defect"] = worst;
        } catch (const Error& e) {
            entry["error"] = e.what();
        }
        points.push_back(entry);
    }
    report["points"] = points;

    Json agg;
    agg["points"] = grid.total();
    agg["errors"] = error_count(points);
    agg["max_swap_defect"] = json_max(points, "swap_defect");
    agg["max_codazzi_self_dual_defect"] = json_max(points, "codazzi_self_dual_defect");
    report["aggregate"] = agg;

    Json verdicts;
    verdicts["no_errors"] = verdict(agg["errors"].get<int>() == 0);
    verdicts["involution"] = verdict(involution);
    verdicts["duality_swap"] = verdict(agg["max_swap_defect"].get<double>() <= kDualitySwapTol);
    verdicts["codazzi_self_dual"] =
        verdict(agg["max_codazzi_self_dual_defect"].get<double>() <= kDualitySwapTol);
    report["verdicts"] = verdicts;
    finish_verdicts(report);
    return report;
}

Json wdvv_report(const LoadedSpec& loaded, const GridSpec& grid, const ToleranceConfig& tol) {
    tol.validate();
    const auto* frob = std::get_if<FrobeniusSpec>(&loaded.spec);
    if (!frob) throw ValidationError("wdvv requires a frobenius spec");
    grid.validate(frob->param_dim);

    Json report;
    report["meta"] = meta_json("wdvv");
    report["spec"] = loaded.echo;
    report["tolerances"] = tolerances_to_json(tol);
    report["grid"] = grid_to_json(grid);

    Json points = Json::array();
    for (long i = 0; i < grid.total(); ++i) {
        const Eigen::VectorXd u = grid.point(i);
        Json entry;
        entry["u"] = vector_to_json(u);
        try {
            entry["wdvv_residual"] = wdvv_residual(*frob, u);
        } catch (const Error& e) {
            entry["error"] = e.what();
        }
        points.push_back(entry);
    }
    report["points"] = points;

    Json agg;
    agg["points"] = grid.total();
    agg["errors"] = error_count(points);
    agg["max_wdvv_residual"] = json_max(points, "wdvv_residual");
    report["aggregate"] = agg;

    Json verdicts;
    verdicts["no_errors"] = verdict(agg["errors"].get<int>() == 0);
    verdicts["wdvv"] = verdict(agg["max_wdvv_residual"].get<double>() <= tol.residual_tol);
    report["verdicts"] = verdicts;
    finish_verdicts(report);
    return report;
}

Json realize_report(const LoadedSpec& loaded, const std::vector<Eigen::VectorXd>& path,
                    const RealizeOptions& options, const ToleranceConfig& tol) {
    tol.validate();
    const auto* frob = std::get_if<FrobeniusSpec>(&loaded.spec);
    if (!frob) throw ValidationError("realize requires a frobenius spec");

    Json report;
    report["meta"] = meta_json("realize");
    report["spec"] = loaded.echo;
    report["tolerances"] = tolerances_to_json(tol);
    Json jpath = Json::array();
    for (const auto& w : path) jpath.push_back(vector_to_json(w));
    report["path"] = jpath;
    report["options"] = Json{{"step", options.step},
                             {"wdvv_gate", options.wdvv_gate},
                             {"gram_drift_abort", options.gram_drift_abort}};

    Json verdicts;
    try {
        const FrameState state = realize(*frob, path, options);
        const RealizeReport rep = realize_verify(*frob, state);
        const RealizationForm rf = realization_form(*frob);
        Json signs = Json::array();
        for (int i = 0; i < rf.form.dim(); ++i)
            signs.push_back(static_cast<int>(rf.form.signs(i)));
        report["ambient_signs"] = signs;
        Json endpoint;
        endpoint["u"] = vector_to_json(state.u);
        endpoint["position"] = vector_to_json(state.position);
        endpoint["potential"] = vector_to_json(state.potential);
        endpoint["frame"] = matrix_to_json(state.frame);
        report["endpoint"] = endpoint;
        report["defects"] = Json{{"g", rep.g_defect}, {"h", rep.h_defect}, {"orth", rep.orth_defect}};
        verdicts["g_metric"] = verdict(rep.g_defect <= tol.residual_tol);
        verdicts["h_metric"] = verdict(rep.h_defect <= tol.residual_tol);
        verdicts["orthogonality"] = verdict(rep.orth_defect <= tol.residual_tol);
        verdicts["integration"] = "PASS";
    } catch (const Error& e) {
        report["error"] = e.what();
        verdicts["integration"] = "FAIL";
    }
    report["verdicts"] = verdicts;
    finish_verdicts(report);
    return report;
}

namespace {

std::string fixed(const std::string& s, std::size_t width) {
    std::string out = s;
    if (out.size() < width) out.append(width - out.size(), ' ');
    return out + " ";
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

} // namespace

std::string render_text(const Json& report) {
    std::ostringstream out;
    const auto& meta = report.at("meta");
    out << meta.at("tool").get<std::string>() << " " << meta.at("version").get<std::string>()
        << " " << meta.at("command").get<std::string>() << "\n";
    if (report.contains("spec")) {
        const auto& spec = report.at("spec");
        out << "spec: kind=" << spec.at("kind").get<std::string>() << " N=" << spec.at("N").get<int>()
            << "\n";
    }
    if (report.contains("grid")) {
        out << "grid:";
        for (const auto& ax : report.at("grid"))
            out << " [" << ax.at("min").get<double>() << ", " << ax.at("max").get<double>() << "] x "
                << ax.at("count").get<int>();
        out << "  (" << report.at("aggregate").at("points").get<long>() << " points)\n";
    }
    if (report.contains("error")) out << "error: " << report.at("error").get<std::string>() << "\n";
    if (report.contains("aggregate")) {
        out << "\n" << fixed("aggregate", 34) << "value\n";
        out << std::string(46, '-') << "\n";
        for (const auto& [key, value] : report.at("aggregate").items()) {
            if (value.is_number_float()) out << fixed(key, 34) << sci(value.get<double>()) << "\n";
            else out << fixed(key, 34) << value.dump() << "\n";
        }
    }
    if (report.contains("defects")) {
        out << "\n" << fixed("defect", 34) << "value\n";
        out << std::string(46, '-') << "\n";
        for (const auto& [key, value] : report.at("defects").items())
            out << fixed(key, 34) << sci(value.get<double>()) << "\n";
    }
    out << "\n" << fixed("check", 34) << "verdict\n";
    out << std::string(46, '-') << "\n";
    for (const auto& [key, value] : report.at("verdicts").items())
        out << fixed(key, 34) << value.get<std::string>() << "\n";
    out << "\noverall: " << report.at("overall").get<std::string>() << "\n";
    return out.str();
}

bool report_passed(const Json& report) {
    return report.contains("overall") && report.at("overall").get<std::string>() == "PASS";
}

} // namespace subpot
