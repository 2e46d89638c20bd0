#pragma once

#include <Eigen/Dense>
#include <vector>

#include "subpot/expr.hpp"
#include "subpot/geometry.hpp"

namespace subpot {

/// Flat case: constant normal metric eta, first fundamental form c * eta,
/// and all structure coefficients built from third derivatives of the
/// potential phi.
struct FrobeniusSpec {
    int param_dim = 0;      // N
    Eigen::MatrixXd eta;    // constant symmetric invertible
    double c_const = 1.0;   // nonzero scale between the two metrics
    ExprPtr phi;

    /// eta symmetric and invertible, c nonzero, phi present. Throws
    /// ValidationError.
    void validate() const;
};

/// Third-derivative matrices of phi at u: slice(i)(j,k) = d^3 phi / du^i du^j du^k.
std::vector<Eigen::MatrixXd> potential_third_derivatives(const FrobeniusSpec& spec,
                                                         const Eigen::VectorXd& u);

/// Max-norm violation of the associativity equations at u: the largest
/// |phi_ijs eta^sp phi_pkl - phi_iks eta^sp phi_pjl| over all index choices.
double wdvv_residual(const FrobeniusSpec& spec, const Eigen::VectorXd& u);

/// The frame connection matrices C_i of the flat case (convention of
/// geometry.hpp): zero diagonal blocks, lower-left block (b_i)_kj =
/// eta^ks phi_sij and upper-right block c_i = -(1/c) b_i.
std::vector<Eigen::MatrixXd> flat_connection(const FrobeniusSpec& spec, const Eigen::VectorXd& u);

/// Zero-curvature residual of the flat connection. The derivative terms
/// d_j C_i - d_i C_j cancel identically (they are built from fourth
/// derivatives of phi, symmetric in all indices), so only the commutator
/// blocks remain; these vanish exactly when the associativity equations hold.
CurvatureResidual flat_curvature(const FrobeniusSpec& spec, const Eigen::VectorXd& u);

/// Canonical ambient space for realization: the +-1 signature of
/// blockdiag(c * eta, eta) together with a congruence transform T satisfying
/// T^t diag(signs) T = blockdiag(c * eta, eta).
struct RealizationForm {
    AmbientForm form;
    Eigen::MatrixXd transform;
};

RealizationForm realization_form(const FrobeniusSpec& spec);

/// Frame and reconstructed immersion data carried along a realization path.
struct FrameState {
    Eigen::VectorXd u;
    Eigen::MatrixXd frame;      // columns r_1..r_N, n_1..n_N in ambient coordinates
    Eigen::VectorXd position;   // r(u)
    Eigen::VectorXd potential;  // n(u)
};

struct RealizeOptions {
    double step = 1e-3;
    double wdvv_gate = 1e-8;
    double gram_drift_abort = 1e-4;
};

/// Integrate dF/du^i = F C_i(u) together with dr/du^i = r_i, dn/du^i = n_i
/// along a polyline with classical fourth-order steps, starting from
/// F = realization_form(spec).transform and r = n = 0 at path.front().
/// The associativity residual is gated at every step and the Gram matrix of
/// the frame is monitored for drift; violations raise IntegrationError.
FrameState realize(const FrobeniusSpec& spec, const std::vector<Eigen::VectorXd>& path,
                   const RealizeOptions& options = {});

struct RealizeReport {
    double g_defect = 0.0;    // max |(F^t G F)_tt - c * eta|
    double h_defect = 0.0;    // max |(F^t G F)_nn - eta|
    double orth_defect = 0.0; // max |off-diagonal blocks|
};

RealizeReport realize_verify(const FrobeniusSpec& spec, const FrameState& state);

} // namespace subpot
