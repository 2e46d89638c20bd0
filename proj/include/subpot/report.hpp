#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "subpot/frobenius.hpp"
#include "subpot/geometry.hpp"

namespace subpot {

// Reports and spec files are JSON; ordered_json keeps emission order equal to
// insertion order so identical inputs produce byte-identical output.
using Json = nlohmann::ordered_json;

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
};

/// Sampling grid, one axis per parameter. Points include both endpoints and
/// are iterated in row-major order (first axis slowest).
struct GridSpec {
    std::vector<GridAxis> axes;

    /// Parse "min:max:count,min:max:count,...".
    static GridSpec parse(std::string_view text);

    long total() const;
    Eigen::VectorXd point(long index) const;
    void validate(int expected_axes) const;
};

using AnySpec = std::variant<SubmanifoldSpec, FrobeniusSpec>;

struct LoadedSpec {
    AnySpec spec;
    Json echo; // normalized spec document, embedded in reports
};

/// Load and fully validate a spec file. Throws Error for I/O problems,
/// SchemaError naming the offending field, ParseError for bad expressions and
/// ValidationError for invariant violations.
LoadedSpec load_spec(const std::filesystem::path& path);
LoadedSpec parse_spec_json(const Json& doc);

Json analyze_report(const LoadedSpec& spec, const GridSpec& grid, const ToleranceConfig& tol);
Json dualize_report(const LoadedSpec& spec, const GridSpec& grid, const ToleranceConfig& tol);
Json wdvv_report(const LoadedSpec& spec, const GridSpec& grid, const ToleranceConfig& tol);
Json realize_report(const LoadedSpec& spec, const std::vector<Eigen::VectorXd>& path,
                    const RealizeOptions& options, const ToleranceConfig& tol);

/// Fixed-width text rendering of any report produced above.
std::string render_text(const Json& report);

bool report_passed(const Json& report);

/// Finite-difference cross-check of the frame decomposition: rebuilds the
/// frame and the second derivatives of r and n with central differences,
/// re-solves, and returns the largest deviation from the jet-based
/// coefficients.
double fd_decomposition_defect(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                               const ToleranceConfig& tol);

} // namespace subpot
