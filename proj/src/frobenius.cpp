#include "subpot/frobenius.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "subpot/errors.hpp"
#include "subpot/jet.hpp"

namespace subpot {

namespace {

std::string point_to_string(const Eigen::VectorXd& u) {
    char buf[64];
    std::string s = "[";
    for (int i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%g", u(i));
        s += (i ? std::string(", ") : std::string()) + buf;
    }
    return s + "]";
}

Eigen::MatrixXd block_metric(const FrobeniusSpec& spec) {
    const int n = spec.param_dim;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = spec.c_const * spec.eta;
    m.bottomRightCorner(n, n) = spec.eta;
    return m;
}

double gram_defect(const Eigen::MatrixXd& frame, const Eigen::MatrixXd& signs_diag,
                   const Eigen::MatrixXd& target) {
    return (frame.transpose() * signs_diag * frame - target).cwiseAbs().maxCoeff();
}

} // namespace

void FrobeniusSpec::validate() const {
    if (param_dim < 1) throw ValidationError("parameter dimension must be at least 1");
    if (eta.rows() != param_dim || eta.cols() != param_dim)
        throw ValidationError("eta must be an N x N matrix");
    const double scale = std::max(1.0, eta.cwiseAbs().maxCoeff());
    if ((eta - eta.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ValidationError("eta must be symmetric");
    if (std::abs(eta.determinant()) <= 1e-12 * std::pow(scale, param_dim))
        throw ValidationError("eta must be invertible");
    if (c_const == 0.0) throw ValidationError("c must be nonzero");
    if (!phi) throw ValidationError("phi expression is missing");
}

std::vector<Eigen::MatrixXd> potential_third_derivatives(const FrobeniusSpec& spec,
                                                         const Eigen::VectorXd& u) {
    spec.validate();
    if (u.size() != spec.param_dim)
        throw DimensionError("point dimension does not match parameter dimension");
    const Jet3 jet = eval_jet(*spec.phi, u);
    const int n = spec.param_dim;
    std::vector<Eigen::MatrixXd> slices(n, Eigen::MatrixXd(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) slices[i](j, k) = jet.third(i, j, k);
    return slices;
}

double wdvv_residual(const FrobeniusSpec& spec, const Eigen::VectorXd& u) {
    const auto c = potential_third_derivatives(spec, u);
    const int n = spec.param_dim;
    const Eigen::MatrixXd inv_eta = spec.eta.inverse();
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
        // lhs(i,j,k,l) = (C_i inv_eta C_k)(j,l); rhs(i,j,k,l) = (C_i inv_eta C_j)(k,l)
        std::vector<Eigen::MatrixXd> d(n);
        for (int m = 0; m < n; ++m) d[m] = c[i] * inv_eta * c[m];
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    residual = std::max(residual, std::abs(d[k](j, l) - d[j](k, l)));
    }
    return residual;
}

std::vector<Eigen::MatrixXd> flat_connection(const FrobeniusSpec& spec, const Eigen::VectorXd& u) {
    const auto c = potential_third_derivatives(spec, u);
    const int n = spec.param_dim;
    const Eigen::MatrixXd inv_eta = spec.eta.inverse();
    std::vector<Eigen::MatrixXd> conn(n, Eigen::MatrixXd::Zero(2 * n, 2 * n));
    for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd b = inv_eta * c[i];
        conn[i].bottomLeftCorner(n, n) = b;
        conn[i].topRightCorner(n, n) = -(1.0 / spec.c_const) * b;
    }
    return conn;
}

CurvatureResidual flat_curvature(const FrobeniusSpec& spec, const Eigen::VectorXd& u) {
    return connection_curvature(flat_connection(spec, u), {});
}

RealizationForm realization_form(const FrobeniusSpec& spec) {
    spec.validate();
    const Eigen::MatrixXd m = block_metric(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw DegeneracyError("eigendecomposition of eta failed");
    const Eigen::VectorXd lambda = es.eigenvalues();
    const int dim = 2 * spec.param_dim;
    RealizationForm rf;
    rf.form.signs.resize(dim);
    Eigen::VectorXd root(dim);
    for (int i = 0; i < dim; ++i) {
        if (lambda(i) == 0.0) throw DegeneracyError("eta is numerically singular");
        rf.form.signs(i) = lambda(i) > 0.0 ? 1.0 : -1.0;
        root(i) = std::sqrt(std::abs(lambda(i)));
    }
    // T = |L|^(1/2) Q^t gives T^t diag(sign L) T = Q L Q^t = blockdiag(c eta, eta)
    rf.transform = root.asDiagonal() * es.eigenvectors().transpose();
    return rf;
}

FrameState realize(const FrobeniusSpec& spec, const std::vector<Eigen::VectorXd>& path,
                   const RealizeOptions& options) {
    spec.validate();
    if (path.size() < 2) throw IntegrationError("path needs at least two waypoints");
    if (!(options.step > 0.0)) throw IntegrationError("step must be positive");
    const int n = spec.param_dim;
    for (const auto& w : path)
        if (w.size() != n) throw DimensionError("waypoint dimension does not match N");

    const RealizationForm rf = realization_form(spec);
    const Eigen::MatrixXd target = block_metric(spec);
    const Eigen::MatrixXd signs_diag = rf.form.matrix();

    FrameState state;
    state.u = path.front();
    state.frame = rf.transform;
    state.position = Eigen::VectorXd::Zero(2 * n);
    state.potential = Eigen::VectorXd::Zero(2 * n);

    const auto gate = [&](const Eigen::VectorXd& u) {
        const double res = wdvv_residual(spec, u);
        if (res > options.wdvv_gate)
            throw IntegrationError("associativity residual " + std::to_string(res) +
                                   " exceeds gate at u = " + point_to_string(u));
    };

    // One derivative evaluation of the combined (frame, r, n) state.
    struct Derivative {
        Eigen::MatrixXd dframe;
        Eigen::VectorXd dposition, dpotential;
    };
    const auto rhs = [&](const Eigen::VectorXd& u, const Eigen::MatrixXd& frame,
                         const Eigen::VectorXd& v) {
        const auto conn = flat_connection(spec, u);
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) c += v(i) * conn[i];
        Derivative d;
        d.dframe = frame * c;
        d.dposition = frame.leftCols(n) * v;
        d.dpotential = frame.rightCols(n) * v;
        return d;
    };

    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const Eigen::VectorXd v = path[seg + 1] - path[seg];
        const double length = v.norm();
        if (length == 0.0) continue;
        const int steps = std::max(1, static_cast<int>(std::ceil(length / options.step)));
        const double dt = 1.0 / steps;
        for (int s = 0; s < steps; ++s) {
            const Eigen::VectorXd u0 = path[seg] + (static_cast<double>(s) * dt) * v;
            const Eigen::VectorXd um = path[seg] + ((s + 0.5) * dt) * v;
            const Eigen::VectorXd u1 = path[seg] + ((s + 1.0) * dt) * v;
            gate(u0);

            const Derivative k1 = rhs(u0, state.frame, v);
            const Derivative k2 = rhs(um, state.frame + 0.5 * dt * k1.dframe, v);
            const Derivative k3 = rhs(um, state.frame + 0.5 * dt * k2.dframe, v);
            const Derivative k4 = rhs(u1, state.frame + dt * k3.dframe, v);

            state.position +=
                dt / 6.0 *
                (k1.dposition + 2.0 * k2.dposition + 2.0 * k3.dposition + k4.dposition);
            state.potential +=
                dt / 6.0 *
                (k1.dpotential + 2.0 * k2.dpotential + 2.0 * k3.dpotential + k4.dpotential);
            state.frame +=
                dt / 6.0 * (k1.dframe + 2.0 * k2.dframe + 2.0 * k3.dframe + k4.dframe);
            state.u = u1;

            const double drift = gram_defect(state.frame, signs_diag, target);
            if (drift > options.gram_drift_abort)
                throw IntegrationError("frame Gram drift " + std::to_string(drift) +
                                       " exceeds abort threshold at u = " + point_to_string(u1));
        }
        state.u = path[seg + 1];
    }
    gate(state.u);
    return state;
}

RealizeReport realize_verify(const FrobeniusSpec& spec, const FrameState& state) {
    spec.validate();
    const int n = spec.param_dim;
    if (state.frame.rows() != 2 * n || state.frame.cols() != 2 * n)
        throw DimensionError("frame shape does not match 2N x 2N");
    const RealizationForm rf = realization_form(spec);
    const Eigen::MatrixXd gram = state.frame.transpose() * rf.form.matrix() * state.frame;
    RealizeReport rep;
    rep.g_defect = (gram.topLeftCorner(n, n) - spec.c_const * spec.eta).cwiseAbs().maxCoeff();
    rep.h_defect = (gram.bottomRightCorner(n, n) - spec.eta).cwiseAbs().maxCoeff();
    rep.orth_defect = std::max(gram.topRightCorner(n, n).cwiseAbs().maxCoeff(),
                               gram.bottomLeftCorner(n, n).cwiseAbs().maxCoeff());
    return rep;
}

} // namespace subpot
