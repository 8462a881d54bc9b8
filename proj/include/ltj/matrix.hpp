#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ltj {

using cplx = std::complex<double>;

/// Square dense matrix, row-major.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  std::size_t order() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  DenseMatrix transpose() const {
    DenseMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix adjoint() const {
    DenseMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = conj_of((*this)(i, j));
    return t;
  }

  /// Maximum absolute row sum.
  double norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
      best = std::max(best, row);
    }
    return best;
  }

  /// True when every entry below the first subdiagonal is exactly zero.
  bool is_hessenberg() const {
    for (std::size_t i = 2; i < n_; ++i)
      for (std::size_t j = 0; j + 1 < i; ++j)
        if ((*this)(i, j) != T{}) return false;
    return true;
  }

  bool is_tridiagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if ((i > j + 1 || j > i + 1) && (*this)(i, j) != T{}) return false;
    return true;
  }

  T trace() const {
    T s{};
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  DenseMatrix operator-() const {
    DenseMatrix m(*this);
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  static T conj_of(const T& x) {
    if constexpr (std::is_same_v<T, cplx>)
      return std::conj(x);
    else
      return x;
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<cplx>;
using RealMatrix = DenseMatrix<double>;

}  // namespace ltj
