#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "subpot/expr.hpp"
#include "subpot/tensor3.hpp"

namespace subpot {

/// Diagonal +-1 bilinear form on R^dim.
struct AmbientForm {
    Eigen::VectorXd signs; // each entry +1 or -1

    int dim() const { return static_cast<int>(signs.size()); }
    int minus_count() const;

    static AmbientForm euclidean(int dim);
    static AmbientForm from_signs(const std::vector<int>& s);

    /// Sum of signs[a] * x[a] * y[a]. Throws DimensionError on length mismatch.
    double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

    Eigen::MatrixXd matrix() const { return signs.asDiagonal(); }
};

/// An N-dimensional immersion r into a 2N-dimensional ambient space together
/// with a potential whose partial derivatives span the normal space.
struct SubmanifoldSpec {
    int param_dim = 0;              // N
    AmbientForm ambient;            // dimension 2N
    VectorFunction position;        // r(u)
    VectorFunction normal_potential; // n(u)

    /// Shape checks (dimensions only; pointwise invariants are checked per
    /// analysis). Throws ValidationError.
    void validate() const;
};

/// Swap the roles of position and potential of normals. An involution.
SubmanifoldSpec dualize(const SubmanifoldSpec& spec);

struct ToleranceConfig {
    double frame_condition_max = 1e8;
    double residual_tol = 1e-8;
    bool fd_check = false;
    double integration_step = 1e-3;

    /// All numeric entries must be positive. Throws ValidationError.
    void validate() const;
};

/// Everything the local theory produces at one parameter point. All rank-3
/// tensors are indexed (k, i, j) = upper index first and are symmetric in
/// (i, j).
struct PointAnalysis {
    Eigen::VectorXd u;
    Eigen::MatrixXd g; // first fundamental form (r_i, r_j)
    Eigen::MatrixXd h; // induced normal metric (n_i, n_j)
    Tensor3 a, b, c, d;
    double gauss_residual = 0.0;
    double codazzi_residual = 0.0;
    double ricci_residual = 0.0;
    double levi_civita_defect_a = 0.0;
    double levi_civita_defect_d = 0.0;
    double orthogonality_defect = 0.0;
    double frame_condition = 0.0;
    double reconstruction_defect = 0.0;
};

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> fundamental_forms(const SubmanifoldSpec& spec,
                                                              const Eigen::VectorXd& u);

struct Decomposition {
    Tensor3 a, b, c, d;
    double frame_condition = 0.0;
    double reconstruction_defect = 0.0;
};

/// Expand the second derivatives of r and n in the combined tangent+normal
/// frame by solving against the frame matrix. Throws NonisotropyError if the
/// frame condition estimate exceeds the configured threshold.
Decomposition decompose(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                        const ToleranceConfig& tol = {});

/// Christoffel symbols of a metric from its value and first derivatives at a
/// point; dmetric(k, i, j) = d metric_ij / d u^k. Returns Gamma(k, i, j) =
/// Gamma^k_ij.
Tensor3 christoffel(const Eigen::MatrixXd& metric, const Tensor3& dmetric);

// Frame connection convention used throughout: with F the 2N x 2N matrix
// whose columns are r_1..r_N, n_1..n_N, the decomposition reads
// dF/du^i = F * C_i, where C_i has the block layout
//
//        [ a_i  c_i ]            (a_i)_kj = a^k_ij, (b_i)_kj = b^k_ij,
//  C_i = [          ]    with
//        [ b_i  d_i ]            (c_i)_kj = c^k_ij, (d_i)_kj = d^k_ij.
//
// Flatness of the ambient space makes mixed partials of the frame commute,
// which is the zero-curvature condition
//
//  R_ij = d_j C_i - d_i C_j + C_j C_i - C_i C_j = 0.
//
// Its tangent-tangent block is the Gauss equations, the two mixed blocks are
// the Codazzi equations and the normal-normal block is the Ricci equations.
struct ConnectionData {
    std::vector<Eigen::MatrixXd> connection;                 // C_i, i = 0..N-1
    std::vector<std::vector<Eigen::MatrixXd>> dconnection;   // dconnection[j][i] = d_j C_i
};

ConnectionData frame_connection(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                                const ToleranceConfig& tol = {});

struct CurvatureResidual {
    double gauss = 0.0;
    double codazzi = 0.0;
    double ricci = 0.0;
};

/// Block max-norms of R_ij over all i < j for given connection matrices and
/// their derivatives.
CurvatureResidual connection_curvature(const std::vector<Eigen::MatrixXd>& connection,
                                       const std::vector<std::vector<Eigen::MatrixXd>>& dconnection);

CurvatureResidual curvature_residual(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                                     const ToleranceConfig& tol = {});

/// Full pointwise analysis: forms, decomposition coefficients, Levi-Civita
/// defects, orthogonality defect and zero-curvature residuals. Throws
/// ValidationError if the potential basis is not normal to the tangent space
/// at u and DegeneracyError / NonisotropyError on singular data.
PointAnalysis analyze_point(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                            const ToleranceConfig& tol = {});

} // namespace subpot
