#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subpot/errors.hpp"
#include "subpot/report.hpp"
#include "subpot/version.hpp"

namespace {

using subpot::Json;

struct CommonOptions {
    std::string spec_path;
    std::string grid_text;
    std::string format = "text";
    std::string out_path;
    subpot::ToleranceConfig tol;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_grid) {
    cmd->add_option("spec", opt.spec_path, "spec file (JSON)")->required();
    if (with_grid)
        cmd->add_option("--grid", opt.grid_text, "sampling grid, min:max:count per parameter")
            ->required();
    cmd->add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", opt.out_path, "also write the structured report to this file");
    cmd->add_option("--tol", opt.tol.residual_tol, "residual tolerance for verdicts");
    cmd->add_option("--frame-cond-max", opt.tol.frame_condition_max,
                    "frame condition number limit");
    cmd->add_flag("--fd-check", opt.tol.fd_check,
                  "cross-check the decomposition with finite differences");
}

Eigen::VectorXd parse_point(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        vals.push_back(std::stod(item, &used));
        if (used != item.size()) throw subpot::SchemaError("bad coordinate '" + item + "'");
    }
    if (vals.empty()) throw subpot::SchemaError("empty point '" + text + "'");
    Eigen::VectorXd u(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) u(static_cast<Eigen::Index>(i)) = vals[i];
    return u;
}

int emit(const Json& report, const CommonOptions& opt) {
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "error: cannot write " << opt.out_path << "\n";
            return 2;
        }
        out << report.dump(2) << "\n";
    }
    if (opt.format == "structured") std::cout << report.dump(2) << "\n";
    else std::cout << subpot::render_text(report);
    return subpot::report_passed(report) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local theory of submanifolds with potential of normals", "subpot"};
    app.set_version_flag("--version", std::string(subpot::kVersion));
    app.require_subcommand(1);

    CommonOptions analyze_opt, dualize_opt, wdvv_opt, realize_opt;
    std::string from_text, to_text, report_path, report_format = "text";
    std::vector<std::string> via_texts;
    subpot::RealizeOptions realize_params;

    auto* analyze = app.add_subcommand("analyze", "run the pointwise analysis over a grid");
    add_common(analyze, analyze_opt, true);

    auto* dual = app.add_subcommand("dualize", "analyze a spec and its dual, verify the swap");
    add_common(dual, dualize_opt, true);

    auto* wdvv = app.add_subcommand("wdvv", "associativity residual over a grid");
    add_common(wdvv, wdvv_opt, true);

    auto* realize = app.add_subcommand("realize", "integrate the frame system along a path");
    add_common(realize, realize_opt, false);
    realize->add_option("--from", from_text, "start point, comma-separated")->required();
    realize->add_option("--to", to_text, "end point, comma-separated")->required();
    realize->add_option("--via", via_texts, "intermediate waypoints, comma-separated each");
    realize->add_option("--step", realize_params.step, "integration step in parameter space");
    realize->add_option("--wdvv-gate", realize_params.wdvv_gate,
                        "associativity residual gate checked along the path");

    auto* render = app.add_subcommand("report", "render a stored structured report");
    render->add_option("file", report_path, "structured report file")->required();
    render->add_option("--format", report_format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) {
            const auto spec = subpot::load_spec(analyze_opt.spec_path);
            const auto grid = subpot::GridSpec::parse(analyze_opt.grid_text);
            return emit(subpot::analyze_report(spec, grid, analyze_opt.tol), analyze_opt);
        }
        if (app.got_subcommand(dual)) {
            const auto spec = subpot::load_spec(dualize_opt.spec_path);
            const auto grid = subpot::GridSpec::parse(dualize_opt.grid_text);
            return emit(subpot::dualize_report(spec, grid, dualize_opt.tol), dualize_opt);
        }
        if (app.got_subcommand(wdvv)) {
            const auto spec = subpot::load_spec(wdvv_opt.spec_path);
            const auto grid = subpot::GridSpec::parse(wdvv_opt.grid_text);
            return emit(subpot::wdvv_report(spec, grid, wdvv_opt.tol), wdvv_opt);
        }
        if (app.got_subcommand(realize)) {
            const auto spec = subpot::load_spec(realize_opt.spec_path);
            std::vector<Eigen::VectorXd> path;
            path.push_back(parse_point(from_text));
            for (const auto& v : via_texts) path.push_back(parse_point(v));
            path.push_back(parse_point(to_text));
            realize_opt.tol.integration_step = realize_params.step;
            return emit(subpot::realize_report(spec, path, realize_params, realize_opt.tol),
                        realize_opt);
        }
        if (app.got_subcommand(render)) {
            std::ifstream in(report_path);
            if (!in) {
                std::cerr << "error: cannot open " << report_path << "\n";
                return 2;
            }
            const Json report = Json::parse(in);
            if (report_format == "structured") std::cout << report.dump(2) << "\n";
            else std::cout << subpot::render_text(report);
            return subpot::report_passed(report) ? 0 : 1;
        }
    } catch (const subpot::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
