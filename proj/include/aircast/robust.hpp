#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "aircast/error.hpp"

// Scalar-generic robust least-squares kernels. Everything here operates on
// plain dense matrices; feature semantics (standardization, labels, slots)
// live one layer up in model.cpp.

namespace aircast {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Median of the elements (even length: mean of the two middle values).
template <typename Derived>
typename Derived::Scalar median(const Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> tmp(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) tmp[static_cast<std::size_t>(i)] = v(i);
  const std::size_t n = tmp.size();
  const std::size_t mid = n / 2;
  std::nth_element(tmp.begin(), tmp.begin() + mid, tmp.end());
  Scalar hi = tmp[mid];
  if (n % 2 == 1) return hi;
  std::nth_element(tmp.begin(), tmp.begin() + (mid - 1), tmp.begin() + mid);
  return (tmp[mid - 1] + hi) / Scalar(2);
}

// Median absolute deviation about the median (unscaled).
template <typename Derived>
typename Derived::Scalar mad(const Eigen::DenseBase<Derived>& v) {
  const auto m = median(v);
  return median((v.derived().array() - m).abs().matrix().eval());
}

// Huber objective Σ ρ_t(rᵢ) with threshold t = delta·sigma:
// ρ_t(r) = r²/2 for |r| ≤ t, else t·|r| − t²/2.
template <typename Derived, typename Scalar>
Scalar huber_objective(const Eigen::DenseBase<Derived>& residuals, Scalar delta,
                       Scalar sigma) {
  const Scalar t = delta * sigma;
  Scalar sum = Scalar(0);
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    const Scalar a = std::abs(residuals(i));
    sum += a <= t ? a * a / Scalar(2) : t * (a - t / Scalar(2));
  }
  return sum;
}

// Least squares via rank-revealing QR. On rank deficiency, retries the
// normal equations with a small ridge on every column except the first
// (callers put the intercept there).
template <typename Scalar>
DenseVector<Scalar> lsq_solve(const DenseMatrix<Scalar>& A,
                              const DenseVector<Scalar>& b,
                              Scalar ridge = Scalar(1e-8)) {
  Eigen::ColPivHouseholderQR<DenseMatrix<Scalar>> qr(A);
  if (qr.rank() == A.cols()) {
    DenseVector<Scalar> x = qr.solve(b);
    if (x.allFinite()) return x;
  }
  DenseMatrix<Scalar> gram = A.transpose() * A;
  for (Eigen::Index i = 1; i < gram.rows(); ++i) gram(i, i) += ridge;
  Eigen::LDLT<DenseMatrix<Scalar>> ldlt(gram);
  DenseVector<Scalar> x = ldlt.solve(A.transpose() * b);
  if (ldlt.info() != Eigen::Success || !x.allFinite()) {
    throw Error(Errc::singular_system,
                "normal equations singular even with ridge fallback");
  }
  return x;
}

template <typename Scalar>
struct IrlsStep {
  Scalar sigma;       // robust scale the step's weights were built from
  Scalar obj_before;  // Huber objective at that scale, before the step
  Scalar obj_after;   // and after; never larger up to rounding
};
template <typename Scalar>
using IrlsTrace = std::vector<IrlsStep<Scalar>>;

template <typename Scalar>
struct IrlsFit {
  DenseVector<Scalar> coeffs;
  int iterations = 0;
  bool converged = false;
};

// Huber-loss regression of y on the columns of A by iteratively reweighted
// least squares. Scale is re-estimated each pass as MAD/0.6745; an exact
// fit (scale collapsing to zero) counts as converged.
template <typename Scalar>
IrlsFit<Scalar> huber_irls(const DenseMatrix<Scalar>& A, const DenseVector<Scalar>& y,
                           Scalar delta, int max_iter, Scalar tol,
                           IrlsTrace<Scalar>* trace = nullptr) {
  const Scalar sigma_floor =
      Scalar(1e-12) * std::max(Scalar(1), mad(y) / Scalar(0.6745));

  IrlsFit<Scalar> fit;
  fit.coeffs = lsq_solve(A, y);
  for (int it = 0; it < max_iter; ++it) {
    const DenseVector<Scalar> r = y - A * fit.coeffs;
    const Scalar sigma = mad(r) / Scalar(0.6745);
    if (sigma < sigma_floor) {
      fit.converged = true;
      break;
    }
    const Scalar t = delta * sigma;
    DenseVector<Scalar> sw(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      const Scalar a = std::abs(r(i));
      sw(i) = std::sqrt(a <= t ? Scalar(1) : t / a);
    }
    const DenseMatrix<Scalar> Aw = sw.asDiagonal() * A;
    const DenseVector<Scalar> yw = sw.cwiseProduct(y);
    const DenseVector<Scalar> next = lsq_solve(Aw, yw);
    if (trace) {
      trace->push_back({sigma, huber_objective(r, delta, sigma),
                        huber_objective((y - A * next).eval(), delta, sigma)});
    }
    const Scalar change = (next - fit.coeffs).cwiseAbs().maxCoeff();
    fit.coeffs = next;
    fit.iterations = it + 1;
    if (change < tol) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

}  // namespace aircast
