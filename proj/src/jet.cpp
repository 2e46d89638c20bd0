#include "subpot/jet.hpp"

#include <array>
#include <cmath>
#include <string>

#include "subpot/errors.hpp"

namespace subpot {

namespace {

void require_same_dim(const Jet3& x, const Jet3& y) {
    if (x.dim() != y.dim())
        throw DimensionError("jet dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                             std::to_string(y.dim()));
}

} // namespace

Jet3 Jet3::constant(double value, int dim) {
    Jet3 j(dim);
    j.value = value;
    return j;
}

Jet3 Jet3::variable(int index, double value, int dim) {
    if (index < 0 || index >= dim)
        throw DimensionError("variable index " + std::to_string(index) +
                             " out of range for dimension " + std::to_string(dim));
    Jet3 j(dim);
    j.value = value;
    j.grad(index) = 1.0;
    return j;
}

Jet3 operator-(const Jet3& x) {
    Jet3 r(x.dim());
    r.value = -x.value;
    r.grad = -x.grad;
    r.hess = -x.hess;
    const int n = x.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) r.third(i, j, k) = -x.third(i, j, k);
    return r;
}

Jet3 operator+(const Jet3& x, const Jet3& y) {
    require_same_dim(x, y);
    Jet3 r(x.dim());
    r.value = x.value + y.value;
    r.grad = x.grad + y.grad;
    r.hess = x.hess + y.hess;
    const int n = x.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) r.third(i, j, k) = x.third(i, j, k) + y.third(i, j, k);
    return r;
}

Jet3 operator-(const Jet3& x, const Jet3& y) { return x + (-y); }

Jet3 operator*(const Jet3& x, const Jet3& y) {
    require_same_dim(x, y);
    const int n = x.dim();
    Jet3 r(n);
    r.value = x.value * y.value;
    r.grad = x.value * y.grad + y.value * x.grad;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.hess(i, j) = x.hess(i, j) * y.value + x.grad(i) * y.grad(j) +
                           x.grad(j) * y.grad(i) + x.value * y.hess(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r.third(i, j, k) = x.third(i, j, k) * y.value + x.hess(i, j) * y.grad(k) +
                                   x.hess(i, k) * y.grad(j) + x.hess(j, k) * y.grad(i) +
                                   x.grad(i) * y.hess(j, k) + x.grad(j) * y.hess(i, k) +
                                   x.grad(k) * y.hess(i, j) + x.value * y.third(i, j, k);
    return r;
}

Jet3 operator/(const Jet3& x, const Jet3& y) {
    require_same_dim(x, y);
    if (y.value == 0.0) throw DomainError("division by a jet with zero value");
    const double v = y.value;
    const Jet3 inv = compose(y, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v));
    return x * inv;
}

Jet3 operator+(const Jet3& x, double s) {
    Jet3 r = x;
    r.value += s;
    return r;
}
Jet3 operator+(double s, const Jet3& x) { return x + s; }
Jet3 operator-(const Jet3& x, double s) { return x + (-s); }
Jet3 operator-(double s, const Jet3& x) { return (-x) + s; }
Jet3 operator*(const Jet3& x, double s) { return x * Jet3::constant(s, x.dim()); }
Jet3 operator*(double s, const Jet3& x) { return x * s; }
Jet3 operator/(const Jet3& x, double s) {
    if (s == 0.0) throw DomainError("division by zero");
    return x * (1.0 / s);
}
Jet3 operator/(double s, const Jet3& x) { return Jet3::constant(s, x.dim()) / x; }

Jet3 compose(const Jet3& x, double f0, double f1, double f2, double f3) {
    const int n = x.dim();
    Jet3 r(n);
    r.value = f0;
    r.grad = f1 * x.grad;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.hess(i, j) = f1 * x.hess(i, j) + f2 * x.grad(i) * x.grad(j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                r.third(i, j, k) = f1 * x.third(i, j, k) +
                                   f2 * (x.grad(i) * x.hess(j, k) + x.grad(j) * x.hess(i, k) +
                                         x.grad(k) * x.hess(i, j)) +
                                   f3 * x.grad(i) * x.grad(j) * x.grad(k);
    return r;
}

Jet3 sin(const Jet3& x) {
    const double s = std::sin(x.value), c = std::cos(x.value);
    return compose(x, s, c, -s, -c);
}

Jet3 cos(const Jet3& x) {
    const double s = std::sin(x.value), c = std::cos(x.value);
    return compose(x, c, -s, -c, s);
}

Jet3 exp(const Jet3& x) {
    const double e = std::exp(x.value);
    return compose(x, e, e, e, e);
}

Jet3 log(const Jet3& x) {
    const double v = x.value;
    if (v <= 0.0) throw DomainError("ln of nonpositive value " + std::to_string(v));
    return compose(x, std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet3 sqrt(const Jet3& x) {
    const double v = x.value;
    if (v <= 0.0) throw DomainError("sqrt of nonpositive value " + std::to_string(v));
    const double s = std::sqrt(v);
    return compose(x, s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

namespace {

// v^e scaled by the k-th falling factorial of e; the factor is applied first
// so that zero factors (integer exponents) suppress the power entirely.
double pow_derivative(double v, double e, int k) {
    double factor = 1.0;
    for (int m = 0; m < k; ++m) factor *= (e - m);
    if (factor == 0.0) return 0.0;
    const double p = e - k;
    if (v == 0.0 && p < 0.0) throw DomainError("zero base with negative effective exponent");
    if (v < 0.0 && p != std::floor(p)) throw DomainError("fractional power of negative base");
    return factor * std::pow(v, p);
}

} // namespace

Jet3 pow(const Jet3& x, double exponent) {
    const double v = x.value;
    return compose(x, pow_derivative(v, exponent, 0), pow_derivative(v, exponent, 1),
                   pow_derivative(v, exponent, 2), pow_derivative(v, exponent, 3));
}

double default_fd_step(int order) { return order >= 3 ? 5e-3 : 1e-3; }

double fd_partial(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& u,
                  std::span<const int> indices, double step) {
    const int order = static_cast<int>(indices.size());
    if (order < 1 || order > 3) throw DimensionError("fd_partial supports orders 1 to 3");
    if (!(step > 0.0)) throw DomainError("fd_partial requires a positive step");
    for (int idx : indices)
        if (idx < 0 || idx >= u.size()) throw DimensionError("fd_partial index out of range");

    if (order == 1) {
        Eigen::VectorXd up = u, um = u;
        up(indices[0]) += step;
        um(indices[0]) -= step;
        return (f(up) - f(um)) / (2.0 * step);
    }
    if (order == 2) {
        const int i = indices[0], j = indices[1];
        if (i == j) {
            Eigen::VectorXd up = u, um = u;
            up(i) += step;
            um(i) -= step;
            return (f(up) - 2.0 * f(u) + f(um)) / (step * step);
        }
        Eigen::VectorXd pp = u, pm = u, mp = u, mm = u;
        pp(i) += step;
        pp(j) += step;
        pm(i) += step;
        pm(j) -= step;
        mp(i) -= step;
        mp(j) += step;
        mm(i) -= step;
        mm(j) -= step;
        return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * step * step);
    }
    // order 3: central difference of the order-2 stencil in the last index
    const std::array<int, 2> inner{indices[0], indices[1]};
    Eigen::VectorXd up = u, um = u;
    up(indices[2]) += step;
    um(indices[2]) -= step;
    return (fd_partial(f, up, inner, step) - fd_partial(f, um, inner, step)) / (2.0 * step);
}

} // namespace subpot
