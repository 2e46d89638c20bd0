#include "subpot/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "subpot/errors.hpp"
#include "subpot/jet.hpp"

namespace subpot {

int AmbientForm::minus_count() const {
    int k = 0;
    for (int i = 0; i < dim(); ++i)
        if (signs(i) < 0) ++k;
    return k;
}

AmbientForm AmbientForm::euclidean(int dim) {
    AmbientForm f;
    f.signs = Eigen::VectorXd::Ones(dim);
    return f;
}

AmbientForm AmbientForm::from_signs(const std::vector<int>& s) {
    AmbientForm f;
    f.signs.resize(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 1 && s[i] != -1)
            throw ValidationError("ambient form entries must be +1 or -1, got " +
                                  std::to_string(s[i]));
        f.signs(static_cast<Eigen::Index>(i)) = s[i];
    }
    return f;
}

double AmbientForm::inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    if (x.size() != signs.size() || y.size() != signs.size())
        throw DimensionError("inner product operand length does not match form dimension");
    double acc = 0.0;
    for (int i = 0; i < dim(); ++i) acc += signs(i) * x(i) * y(i);
    return acc;
}

void SubmanifoldSpec::validate() const {
    if (param_dim < 1) throw ValidationError("parameter dimension must be at least 1");
    const int m = 2 * param_dim;
    if (ambient.dim() != m)
        throw ValidationError("ambient form dimension must be 2N = " + std::to_string(m));
    if (position.ambient_dim != m || position.param_dim != param_dim)
        throw ValidationError("r must have 2N components in N variables");
    if (normal_potential.ambient_dim != m || normal_potential.param_dim != param_dim)
        throw ValidationError("n must have 2N components in N variables");
}

SubmanifoldSpec dualize(const SubmanifoldSpec& spec) {
    SubmanifoldSpec dual = spec;
    std::swap(dual.position, dual.normal_potential);
    return dual;
}

void ToleranceConfig::validate() const {
    if (!(frame_condition_max > 0.0) || !(residual_tol > 0.0) || !(integration_step > 0.0))
        throw ValidationError("tolerances must be positive");
}

namespace {

constexpr double kDegeneracyTol = 1e-12;
constexpr double kOrthogonalityTol = 1e-9;

std::string point_to_string(const Eigen::VectorXd& u) {
    char buf[64];
    std::string s = "[";
    for (int i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%g", u(i));
        s += (i ? std::string(", ") : std::string()) + buf;
    }
    return s + "]";
}

// All jet-derived data the pointwise operations share.
struct PointEval {
    int n = 0; // parameter dimension N
    std::vector<Jet3> r_jets, n_jets;
    Eigen::MatrixXd frame;  // columns r_1..r_N, n_1..n_N
    Eigen::MatrixXd g, h;
    Tensor3 dg, dh;         // dg(k,i,j) = d g_ij / d u^k
    double frame_condition = 0.0;
    double orthogonality_defect = 0.0;
    double orthogonality_violation = 0.0; // defect relative to its scale bound
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};

Eigen::VectorXd first_derivative(const std::vector<Jet3>& jets, int i) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(jets.size()));
    for (std::size_t k = 0; k < jets.size(); ++k) v(static_cast<Eigen::Index>(k)) = jets[k].grad(i);
    return v;
}

Eigen::VectorXd second_derivative(const std::vector<Jet3>& jets, int i, int j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(jets.size()));
    for (std::size_t k = 0; k < jets.size(); ++k)
        v(static_cast<Eigen::Index>(k)) = jets[k].hess(i, j);
    return v;
}

Eigen::VectorXd third_derivative(const std::vector<Jet3>& jets, int i, int j, int k) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(jets.size()));
    for (std::size_t m = 0; m < jets.size(); ++m)
        v(static_cast<Eigen::Index>(m)) = jets[m].third(i, j, k);
    return v;
}

// Gram matrix and its u-derivatives for one family of frame vectors.
void gram(const AmbientForm& form, const std::vector<Jet3>& jets, Eigen::MatrixXd& metric,
          Tensor3& dmetric, int n) {
    metric.resize(n, n);
    dmetric = Tensor3(n);
    const int m = form.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (int al = 0; al < m; ++al)
                acc += form.signs(al) * jets[al].grad(i) * jets[al].grad(j);
            metric(i, j) = acc;
            metric(j, i) = acc;
            for (int k = 0; k < n; ++k) {
                double dacc = 0.0;
                for (int al = 0; al < m; ++al)
                    dacc += form.signs(al) * (jets[al].hess(i, k) * jets[al].grad(j) +
                                              jets[al].grad(i) * jets[al].hess(j, k));
                dmetric(k, i, j) = dacc;
                dmetric(k, j, i) = dacc;
            }
        }
}

void require_nondegenerate(const Eigen::MatrixXd& m, const char* name) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double det = m.determinant();
    if (std::abs(det) <= kDegeneracyTol * std::pow(scale, m.rows()))
        throw DegeneracyError(std::string(name) + " is degenerate (det = " + std::to_string(det) +
                              ")");
}

PointEval evaluate_point(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                         const ToleranceConfig& tol) {
    spec.validate();
    if (u.size() != spec.param_dim)
        throw DimensionError("point dimension does not match parameter dimension");

    PointEval pe;
    pe.n = spec.param_dim;
    const int n = pe.n;
    const int m = 2 * n;
    try {
        pe.r_jets = spec.position.eval_jets(u);
    } catch (const DomainError& e) {
        throw DomainError(std::string("r: ") + e.what());
    }
    try {
        pe.n_jets = spec.normal_potential.eval_jets(u);
    } catch (const DomainError& e) {
        throw DomainError(std::string("n: ") + e.what());
    }

    pe.frame.resize(m, m);
    for (int i = 0; i < n; ++i) {
        pe.frame.col(i) = first_derivative(pe.r_jets, i);
        pe.frame.col(n + i) = first_derivative(pe.n_jets, i);
    }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Eigen::VectorXd ri = pe.frame.col(i);
            const Eigen::VectorXd nj = pe.frame.col(n + j);
            const double ip = std::abs(spec.ambient.inner(ri, nj));
            pe.orthogonality_defect = std::max(pe.orthogonality_defect, ip);
            const double bound = kOrthogonalityTol * (1.0 + ri.norm() * nj.norm());
            pe.orthogonality_violation = std::max(pe.orthogonality_violation, ip - bound);
        }
    if (pe.orthogonality_violation > 0.0)
        throw ValidationError("potential basis is not normal to the tangent space at u = " +
                              point_to_string(u) + " (orthogonality defect " +
                              std::to_string(pe.orthogonality_defect) + ")");

    gram(spec.ambient, pe.r_jets, pe.g, pe.dg, n);
    gram(spec.ambient, pe.n_jets, pe.h, pe.dh, n);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pe.frame);
    const double smin = svd.singularValues()(m - 1);
    pe.frame_condition =
        smin > 0.0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
    if (!(pe.frame_condition <= tol.frame_condition_max))
        throw NonisotropyError("tangent+normal frame is singular or ill-conditioned (condition " +
                               std::to_string(pe.frame_condition) + ") at the analyzed point");
    pe.qr.compute(pe.frame);
    return pe;
}

struct ConnectionSolve {
    std::vector<Eigen::MatrixXd> conn;                    // C_i
    std::vector<std::vector<Eigen::MatrixXd>> dconn;      // dconn[j][i] = d_j C_i
    double reconstruction_defect = 0.0;
};

// Expands second derivatives of r and n in the frame, then differentiates the
// linear system once more to get d_k C_i exactly (no nested differencing):
// F x = w  =>  F (d_k x) = d_k w - (d_k F) x.
ConnectionSolve solve_connection(const PointEval& pe, bool with_derivatives) {
    const int n = pe.n;
    const int m = 2 * n;
    ConnectionSolve cs;
    cs.conn.assign(n, Eigen::MatrixXd::Zero(m, m));

    std::vector<Eigen::MatrixXd> dframe(n, Eigen::MatrixXd(m, m));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            dframe[k].col(j) = second_derivative(pe.r_jets, j, k);
            dframe[k].col(n + j) = second_derivative(pe.n_jets, j, k);
        }

    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Eigen::VectorXd wr = second_derivative(pe.r_jets, i, j);
            const Eigen::VectorXd wn = second_derivative(pe.n_jets, i, j);
            const Eigen::VectorXd x = pe.qr.solve(wr);
            const Eigen::VectorXd y = pe.qr.solve(wn);
            const double res_r =
                (pe.frame * x - wr).cwiseAbs().maxCoeff() / (1.0 + wr.cwiseAbs().maxCoeff());
            const double res_n =
                (pe.frame * y - wn).cwiseAbs().maxCoeff() / (1.0 + wn.cwiseAbs().maxCoeff());
            cs.reconstruction_defect = std::max({cs.reconstruction_defect, res_r, res_n});
            cs.conn[i].col(j) = x;
            cs.conn[i].col(n + j) = y;
            cs.conn[j].col(i) = x;
            cs.conn[j].col(n + i) = y;
        }

    if (with_derivatives) {
        cs.dconn.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(m, m)));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Eigen::VectorXd tr = third_derivative(pe.r_jets, i, j, k);
                    const Eigen::VectorXd tn = third_derivative(pe.n_jets, i, j, k);
                    cs.dconn[k][i].col(j) = pe.qr.solve(tr - dframe[k] * cs.conn[i].col(j));
                    cs.dconn[k][i].col(n + j) =
                        pe.qr.solve(tn - dframe[k] * cs.conn[i].col(n + j));
                }
    }
    return cs;
}

void extract_tensors(const ConnectionSolve& cs, int n, Tensor3& a, Tensor3& b, Tensor3& c,
                     Tensor3& d) {
    a = Tensor3(n);
    b = Tensor3(n);
    c = Tensor3(n);
    d = Tensor3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                a(k, i, j) = cs.conn[i](k, j);
                b(k, i, j) = cs.conn[i](n + k, j);
                c(k, i, j) = cs.conn[i](k, n + j);
                d(k, i, j) = cs.conn[i](n + k, n + j);
            }
}

} // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> fundamental_forms(const SubmanifoldSpec& spec,
                                                              const Eigen::VectorXd& u) {
    spec.validate();
    if (u.size() != spec.param_dim)
        throw DimensionError("point dimension does not match parameter dimension");
    const auto r_jets = spec.position.eval_jets(u);
    const auto n_jets = spec.normal_potential.eval_jets(u);
    Eigen::MatrixXd g, h;
    Tensor3 dg, dh;
    gram(spec.ambient, r_jets, g, dg, spec.param_dim);
    gram(spec.ambient, n_jets, h, dh, spec.param_dim);
    require_nondegenerate(g, "first fundamental form g");
    require_nondegenerate(h, "normal metric h");
    return {g, h};
}

Decomposition decompose(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                        const ToleranceConfig& tol) {
    const PointEval pe = evaluate_point(spec, u, tol);
    const ConnectionSolve cs = solve_connection(pe, /*with_derivatives=*/false);
    Decomposition dec;
    extract_tensors(cs, pe.n, dec.a, dec.b, dec.c, dec.d);
    dec.frame_condition = pe.frame_condition;
    dec.reconstruction_defect = cs.reconstruction_defect;
    return dec;
}

Tensor3 christoffel(const Eigen::MatrixXd& metric, const Tensor3& dmetric) {
    const int n = static_cast<int>(metric.rows());
    require_nondegenerate(metric, "metric");
    const Eigen::MatrixXd inv = metric.inverse();
    Tensor3 gamma(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l)
                    acc += inv(k, l) * (dmetric(i, j, l) + dmetric(j, i, l) - dmetric(l, i, j));
                gamma(k, i, j) = 0.5 * acc;
            }
    return gamma;
}

ConnectionData frame_connection(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                                const ToleranceConfig& tol) {
    const PointEval pe = evaluate_point(spec, u, tol);
    ConnectionSolve cs = solve_connection(pe, /*with_derivatives=*/true);
    return {std::move(cs.conn), std::move(cs.dconn)};
}

CurvatureResidual connection_curvature(
    const std::vector<Eigen::MatrixXd>& connection,
    const std::vector<std::vector<Eigen::MatrixXd>>& dconnection) {
    const int n = static_cast<int>(connection.size());
    CurvatureResidual res;
    if (n == 0) return res;
    const int nn = static_cast<int>(connection[0].rows()) / 2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXd r = connection[j] * connection[i] - connection[i] * connection[j];
            if (!dconnection.empty()) r += dconnection[j][i] - dconnection[i][j];
            res.gauss = std::max(res.gauss, r.topLeftCorner(nn, nn).cwiseAbs().maxCoeff());
            res.codazzi = std::max({res.codazzi, r.topRightCorner(nn, nn).cwiseAbs().maxCoeff(),
                                    r.bottomLeftCorner(nn, nn).cwiseAbs().maxCoeff()});
            res.ricci = std::max(res.ricci, r.bottomRightCorner(nn, nn).cwiseAbs().maxCoeff());
        }
    return res;
}

CurvatureResidual curvature_residual(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                                     const ToleranceConfig& tol) {
    const ConnectionData cd = frame_connection(spec, u, tol);
    return connection_curvature(cd.connection, cd.dconnection);
}

PointAnalysis analyze_point(const SubmanifoldSpec& spec, const Eigen::VectorXd& u,
                            const ToleranceConfig& tol) {
    const PointEval pe = evaluate_point(spec, u, tol);
    require_nondegenerate(pe.g, "first fundamental form g");
    require_nondegenerate(pe.h, "normal metric h");

    const ConnectionSolve cs = solve_connection(pe, /*with_derivatives=*/true);

    PointAnalysis pa;
    pa.u = u;
    pa.g = pe.g;
    pa.h = pe.h;
    extract_tensors(cs, pe.n, pa.a, pa.b, pa.c, pa.d);
    pa.frame_condition = pe.frame_condition;
    pa.orthogonality_defect = pe.orthogonality_defect;
    pa.reconstruction_defect = cs.reconstruction_defect;

    const Tensor3 gamma_g = christoffel(pe.g, pe.dg);
    const Tensor3 gamma_h = christoffel(pe.h, pe.dh);
    pa.levi_civita_defect_a = (pa.a - gamma_g).maxAbs();
    pa.levi_civita_defect_d = (pa.d - gamma_h).maxAbs();

    const CurvatureResidual cr = connection_curvature(cs.conn, cs.dconn);
    pa.gauss_residual = cr.gauss;
    pa.codazzi_residual = cr.codazzi;
    pa.ricci_residual = cr.ricci;
    return pa;
}

} // namespace subpot
