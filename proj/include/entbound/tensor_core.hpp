#pragma once

// Dense complex linear algebra on bipartite m (x) n operators.
//
// Composite index convention used by every reshape in the library:
// basis vector |i>_A (x) |j>_B sits at position i*n + j (A-major).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "entbound/errors.hpp"

namespace entbound {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-9;  // relative to max |entry|
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double eig_residual = 1e-10;
}  // namespace tol

inline void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw InvalidMatrixError(std::string(what) + ": matrix has non-finite entries");
  }
}

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& h, double rel_tol = tol::hermitian) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(1.0, max_abs(h));
  return max_abs(h - h.adjoint()) <= rel_tol * scale;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Singular values in nonincreasing order; min(rows, cols) of them.
inline RealVector singular_values(const ComplexMatrix& a) {
  require_finite(a, "singular_values");
  if (a.size() == 0) return RealVector{};
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

struct Eigensystem {
  RealVector values;     // nonincreasing
  ComplexMatrix vectors;  // column i pairs with values(i)
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues nonincreasing.
inline Eigensystem hermitian_eigensystem(const ComplexMatrix& h) {
  require_finite(h, "hermitian_eigensystem");
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eigensystem: matrix is not square");
  if (!is_hermitian(h)) throw SymmetryError("hermitian_eigensystem: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw InvalidMatrixError("hermitian_eigensystem: solver failed");
  Eigensystem out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

inline RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_finite(h, "hermitian_eigenvalues");
  if (h.rows() != h.cols()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  if (!is_hermitian(h)) throw SymmetryError("hermitian_eigenvalues: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

inline double trace_norm(const ComplexMatrix& a) { return singular_values(a).sum(); }

/// Sum of the k largest singular values.
inline double ky_fan_norm(const ComplexMatrix& a, Index k) {
  const Index q = std::min(a.rows(), a.cols());
  if (k < 1 || k > q) {
    throw DomainError("ky_fan_norm: k=" + std::to_string(k) + " outside [1, " + std::to_string(q) + "]");
  }
  return singular_values(a).head(k).sum();
}

/// Ky Fan k-norm of a Hermitian matrix from eigenvalue magnitudes. k = 0 gives 0.
inline double hermitian_ky_fan_norm(const ComplexMatrix& h, Index k) {
  if (k == 0) return 0.0;
  RealVector mags = hermitian_eigenvalues(h).cwiseAbs();
  if (k < 0 || k > mags.size()) throw DomainError("hermitian_ky_fan_norm: k out of range");
  std::sort(mags.data(), mags.data() + mags.size(), std::greater<>());
  return mags.head(k).sum();
}

/// Square operator on C^m (x) C^n with m <= n.
class BipartiteOperator {
 public:
  BipartiteOperator(Index dim_a, Index dim_b, ComplexMatrix matrix)
      : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
    if (dim_a_ < 2) throw DimensionError("BipartiteOperator: dim_a must be >= 2");
    if (dim_b_ < dim_a_) throw DimensionError("BipartiteOperator: dim_a must not exceed dim_b");
    const Index side = dim_a_ * dim_b_;
    if (matrix_.rows() != side || matrix_.cols() != side) {
      throw DimensionError("BipartiteOperator: expected " + std::to_string(side) + "x" + std::to_string(side) +
                           " matrix, got " + std::to_string(matrix_.rows()) + "x" +
                           std::to_string(matrix_.cols()));
    }
    require_finite(matrix_, "BipartiteOperator");
  }

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index side() const { return dim_a_ * dim_b_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  Index dim_a_;
  Index dim_b_;
  ComplexMatrix matrix_;
};

/// Validated bipartite density operator. The stored spectrum has noise-level
/// negative eigenvalues (>= -tol::psd) clamped to zero.
class DensityOperator {
 public:
  explicit DensityOperator(BipartiteOperator op) : op_(std::move(op)) { validate(); }
  DensityOperator(Index dim_a, Index dim_b, ComplexMatrix matrix)
      : DensityOperator(BipartiteOperator(dim_a, dim_b, std::move(matrix))) {}

  const BipartiteOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  Index dim_a() const { return op_.dim_a(); }
  Index dim_b() const { return op_.dim_b(); }
  Index side() const { return op_.side(); }

  const RealVector& spectrum() const { return spectrum_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

  Index rank(double cutoff = 1e-9) const { return (spectrum_.array() > cutoff).count(); }

 private:
  void validate() {
    const ComplexMatrix& m = op_.matrix();
    if (!is_hermitian(m, tol::hermitian)) throw SymmetryError("DensityOperator: matrix is not Hermitian");
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol::trace) {
      throw DomainError("DensityOperator: trace " + std::to_string(tr) + " differs from 1");
    }
    op_ = BipartiteOperator(op_.dim_a(), op_.dim_b(), 0.5 * (m + m.adjoint()));
    Eigensystem es = hermitian_eigensystem(op_.matrix());
    if (es.values.size() > 0 && es.values.minCoeff() < -tol::psd) {
      throw DomainError("DensityOperator: negative eigenvalue " + std::to_string(es.values.minCoeff()));
    }
    spectrum_ = es.values.cwiseMax(0.0);
    eigenvectors_ = std::move(es.vectors);
  }

  BipartiteOperator op_;
  RealVector spectrum_;
  ComplexMatrix eigenvectors_;
};

namespace detail {

inline ComplexMatrix partial_transpose_b(const ComplexMatrix& rho, Index m, Index n) {
  ComplexMatrix out(m * n, m * n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < n; ++l) out(i * n + j, k * n + l) = rho(i * n + l, k * n + j);
  return out;
}

inline ComplexMatrix partial_transpose_a(const ComplexMatrix& rho, Index m, Index n) {
  ComplexMatrix out(m * n, m * n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < n; ++l) out(i * n + j, k * n + l) = rho(k * n + j, i * n + l);
  return out;
}

inline ComplexMatrix partial_trace_b(const ComplexMatrix& x, Index m, Index n) {
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k < m; ++k)
      for (Index j = 0; j < n; ++j) out(i, k) += x(i * n + j, k * n + j);
  return out;
}

inline ComplexMatrix partial_trace_a(const ComplexMatrix& x, Index m, Index n) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index l = 0; l < n; ++l)
      for (Index i = 0; i < m; ++i) out(j, l) += x(i * n + j, i * n + l);
  return out;
}

}  // namespace detail

/// (rho^{T_B})_{(ij),(kl)} = rho_{(il),(kj)}.
inline BipartiteOperator partial_transpose_b(const BipartiteOperator& rho) {
  return {rho.dim_a(), rho.dim_b(), detail::partial_transpose_b(rho.matrix(), rho.dim_a(), rho.dim_b())};
}

/// (rho^{T_A})_{(ij),(kl)} = rho_{(kj),(il)}.
inline BipartiteOperator partial_transpose_a(const BipartiteOperator& rho) {
  return {rho.dim_a(), rho.dim_b(), detail::partial_transpose_a(rho.matrix(), rho.dim_a(), rho.dim_b())};
}

/// Realignment: R_{(i j),(k l)} = rho_{(i k),(j l)} with i, j on A and k, l on B.
/// Output is m^2 x n^2.
inline ComplexMatrix realign(const BipartiteOperator& rho) {
  const Index m = rho.dim_a();
  const Index n = rho.dim_b();
  const ComplexMatrix& x = rho.matrix();
  ComplexMatrix out(m * m, n * n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < n; ++l) out(i * m + j, k * n + l) = x(i * n + k, j * n + l);
  return out;
}

inline ComplexMatrix partial_trace_b(const BipartiteOperator& rho) {
  return detail::partial_trace_b(rho.matrix(), rho.dim_a(), rho.dim_b());
}

inline ComplexMatrix partial_trace_a(const BipartiteOperator& rho) {
  return detail::partial_trace_a(rho.matrix(), rho.dim_a(), rho.dim_b());
}

struct TracePairing {
  double lower;  // sum lambda_i(A) desc * lambda_i(B) asc
  double upper;  // sum lambda_i(A) desc * lambda_i(B) desc
};

/// Eigenvalue-pairing interval that contains tr{AB} for Hermitian A, B.
inline TracePairing trace_pairing_bounds(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("trace_pairing_bounds: shape mismatch");
  const RealVector la = hermitian_eigenvalues(a);
  const RealVector lb = hermitian_eigenvalues(b);
  return {la.dot(lb.reverse()), la.dot(lb)};
}

}  // namespace entbound
