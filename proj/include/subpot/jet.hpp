#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "subpot/tensor3.hpp"

namespace subpot {

/// Degree-3 truncated multivariate Taylor scalar in N variables.
///
/// Carries the value together with all first, second and third partial
/// derivatives at the expansion point. hess is symmetric and third is
/// symmetric under any permutation of its indices; all operations preserve
/// these symmetries exactly. Jets are immutable value types: every operation
/// returns a fresh jet, so concurrent evaluation needs no coordination.
class Jet3 {
  public:
    Jet3() = default;

    /// Zero jet in `dim` variables.
    explicit Jet3(int dim)
        : value(0.0), grad(Eigen::VectorXd::Zero(dim)), hess(Eigen::MatrixXd::Zero(dim, dim)),
          third(dim) {}

    static Jet3 constant(double value, int dim);

    /// Seed jet of the coordinate u_index: unit gradient entry, all higher
    /// coefficients zero. Throws DimensionError if index is out of range.
    static Jet3 variable(int index, double value, int dim);

    int dim() const { return static_cast<int>(grad.size()); }

    double value = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    Tensor3 third;
};

Jet3 operator-(const Jet3& x);
Jet3 operator+(const Jet3& x, const Jet3& y);
Jet3 operator-(const Jet3& x, const Jet3& y);
Jet3 operator*(const Jet3& x, const Jet3& y);
Jet3 operator/(const Jet3& x, const Jet3& y);

Jet3 operator+(const Jet3& x, double s);
Jet3 operator+(double s, const Jet3& x);
Jet3 operator-(const Jet3& x, double s);
Jet3 operator-(double s, const Jet3& x);
Jet3 operator*(const Jet3& x, double s);
Jet3 operator*(double s, const Jet3& x);
Jet3 operator/(const Jet3& x, double s);
Jet3 operator/(double s, const Jet3& x);

/// Univariate chain rule to degree 3: result = f(x) given f and its first
/// three derivatives evaluated at x.value.
Jet3 compose(const Jet3& x, double f0, double f1, double f2, double f3);

Jet3 sin(const Jet3& x);
Jet3 cos(const Jet3& x);
Jet3 exp(const Jet3& x);
Jet3 log(const Jet3& x);
Jet3 sqrt(const Jet3& x);
/// x raised to a constant real exponent.
Jet3 pow(const Jet3& x, double exponent);

/// Central-difference estimate of a mixed partial of f at u. The order is
/// the number of indices (1 to 3); the estimate's truncation error is
/// O(step^2). Third-order stencils nest a central difference around the
/// second-order one.
double fd_partial(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& u,
                  std::span<const int> indices, double step);

/// Step balancing truncation against roundoff: 1e-3 for orders 1-2, 5e-3
/// for order 3.
double default_fd_step(int order);

} // namespace subpot
