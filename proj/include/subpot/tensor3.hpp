#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace subpot {

/// Dense rank-3 tensor over a single dimension n, stored row-major.
class Tensor3 {
  public:
    Tensor3() = default;
    explicit Tensor3(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

    int dim() const { return dim_; }

    double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

    void setZero() { data_.assign(data_.size(), 0.0); }

    double maxAbs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    friend Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
        Tensor3 r(a.dim_);
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }

  private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
    }

    int dim_ = 0;
    std::vector<double> data_;
};

} // namespace subpot
