#pragma once

// Subspaces V of C^m (x) C^n and the quantity
//   lambda_sup(V) = sup_{Psi in V, |Psi| = 1} lambda_1(Psi),
// the largest squared Schmidt coefficient attainable inside V.
//
// lambda_sup equals max over unit alpha, beta of <alpha beta|Pi_V|alpha beta>:
// the best overlap of a product vector with V is the norm of its projection,
// and the best product approximation of a unit Psi has overlap lambda_1(Psi).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entbound/random.hpp"
#include "entbound/states.hpp"
#include "entbound/tensor_core.hpp"

namespace entbound {

/// Orthonormal basis {|Psi_k>} of an l-dimensional subspace.
class Subspace {
 public:
  Subspace(Index dim_a, Index dim_b, std::vector<PureState> basis) : dim_a_(dim_a), dim_b_(dim_b), basis_(std::move(basis)) {
    if (basis_.empty()) throw DomainError("Subspace: empty basis");
    if (static_cast<Index>(basis_.size()) > dim_a_ * dim_b_) throw DimensionError("Subspace: too many basis vectors");
    matrix_.resize(dim_a_ * dim_b_, static_cast<Index>(basis_.size()));
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (basis_[k].dim_a() != dim_a_ || basis_[k].dim_b() != dim_b_) {
        throw DimensionError("Subspace: basis vector dimensions differ from subspace dimensions");
      }
      matrix_.col(static_cast<Index>(k)) = basis_[k].amplitudes();
    }
    const Index l = matrix_.cols();
    const double gram_err = max_abs(matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(l, l));
    if (gram_err > 1e-10) throw DomainError("Subspace: basis is not orthonormal (Gram error " + std::to_string(gram_err) + ")");
  }

  /// Orthonormalizes the given spanning vectors (must be linearly independent).
  static Subspace orthonormalize(Index dim_a, Index dim_b, const std::vector<ComplexVector>& vectors) {
    if (vectors.empty()) throw DomainError("Subspace::orthonormalize: no vectors");
    ComplexMatrix a(dim_a * dim_b, static_cast<Index>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      if (vectors[k].size() != a.rows()) throw DimensionError("Subspace::orthonormalize: vector length mismatch");
      a.col(static_cast<Index>(k)) = vectors[k];
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(a);
    const ComplexMatrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    const double scale = std::max(1.0, max_abs(a));
    for (Index k = 0; k < a.cols(); ++k)
      if (std::abs(r(k, k)) < 1e-10 * scale) throw DomainError("Subspace::orthonormalize: vectors are linearly dependent");
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(a.rows(), a.cols());
    std::vector<PureState> basis;
    for (Index k = 0; k < q.cols(); ++k) basis.emplace_back(dim_a, dim_b, q.col(k));
    return {dim_a, dim_b, std::move(basis)};
  }

  static Subspace span_of(const PureState& psi) { return {psi.dim_a(), psi.dim_b(), {psi}}; }

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index dim() const { return matrix_.cols(); }
  const std::vector<PureState>& basis() const { return basis_; }
  /// (m n) x l matrix whose columns are the basis vectors.
  const ComplexMatrix& basis_matrix() const { return matrix_; }

 private:
  Index dim_a_;
  Index dim_b_;
  std::vector<PureState> basis_;
  ComplexMatrix matrix_;
};

/// Pi_V = sum_k |Psi_k><Psi_k|.
inline BipartiteOperator projector(const Subspace& v) {
  return {v.dim_a(), v.dim_b(), v.basis_matrix() * v.basis_matrix().adjoint()};
}

/// |Pi_V phi|^2, which is also the largest |<phi|Psi>|^2 over unit Psi in V.
inline double best_overlap_in_v(const PureState& phi, const Subspace& v) {
  if (phi.dim_a() != v.dim_a() || phi.dim_b() != v.dim_b()) throw DimensionError("best_overlap_in_v: dimension mismatch");
  return (v.basis_matrix().adjoint() * phi.amplitudes()).squaredNorm();
}

/// Orthonormal basis of V-perp (requires dim V < m n).
inline Subspace orthogonal_complement(const Subspace& v) {
  const Index side = v.dim_a() * v.dim_b();
  if (v.dim() >= side) throw DomainError("orthogonal_complement: V is the whole space");
  const ComplexMatrix p = ComplexMatrix::Identity(side, side) - projector(v).matrix();
  const Eigensystem es = hermitian_eigensystem(p);
  std::vector<PureState> basis;
  for (Index k = 0; k < side - v.dim(); ++k) basis.push_back(PureState::normalized(v.dim_a(), v.dim_b(), es.vectors.col(k)));
  return {v.dim_a(), v.dim_b(), std::move(basis)};
}

inline Subspace antisym_subspace(Index d) { return {d, d, antisym_basis(d)}; }

inline Subspace phi_plus_subspace(Index m, Index n) { return Subspace::span_of(max_entangled(m, n)); }

/// Span of the eigenvectors of rho with eigenvalue above cutoff.
inline Subspace support_subspace(const DensityOperator& rho, double cutoff = 1e-9) {
  std::vector<PureState> basis;
  for (Index i = 0; i < rho.spectrum().size(); ++i) {
    if (rho.spectrum()(i) > cutoff) basis.push_back(PureState::normalized(rho.dim_a(), rho.dim_b(), rho.eigenvectors().col(i)));
  }
  return {rho.dim_a(), rho.dim_b(), std::move(basis)};
}

/// Random l-dimensional subspace (Haar isometry columns).
inline Subspace random_subspace(Index m, Index n, Index l, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix iso = haar_isometry(m * n, l, rng);
  std::vector<PureState> basis;
  for (Index k = 0; k < l; ++k) basis.push_back(PureState::normalized(m, n, iso.col(k)));
  return {m, n, std::move(basis)};
}

enum class LambdaSupStatus { exact_closed_form, heuristic_lower_estimate, certified_interval };

inline std::string to_string(LambdaSupStatus s) {
  switch (s) {
    case LambdaSupStatus::exact_closed_form: return "exact_closed_form";
    case LambdaSupStatus::heuristic_lower_estimate: return "heuristic_lower_estimate";
    case LambdaSupStatus::certified_interval: return "certified_interval";
  }
  return "unknown";
}

struct LambdaSup {
  double value = 1.0;
  LambdaSupStatus status = LambdaSupStatus::heuristic_lower_estimate;
  std::optional<std::pair<double, double>> interval;
  std::string method;
  std::size_t net_points = 0;

  /// Value a lower bound on an entanglement measure should use: the upper
  /// end of a certified interval, otherwise `value`.
  double for_bounds() const {
    return status == LambdaSupStatus::certified_interval && interval ? interval->second : value;
  }
  bool certified() const { return status != LambdaSupStatus::heuristic_lower_estimate; }
};

/// Closed forms: one-dimensional V (lambda_1 of its vector) and the full
/// antisymmetric subspace of C^d (x) C^d (1/2).
inline std::optional<LambdaSup> lambda_sup_closed_form(const Subspace& v) {
  if (v.dim() == 1) {
    return LambdaSup{v.basis().front().lambda_max(), LambdaSupStatus::exact_closed_form, std::nullopt,
                     "largest squared Schmidt coefficient of the spanning vector", 0};
  }
  const Index d = v.dim_a();
  if (d == v.dim_b() && v.dim() == d * (d - 1) / 2) {
    const ComplexMatrix diff = projector(v).matrix() - projector(antisym_subspace(d)).matrix();
    if (max_abs(diff) <= 1e-9) {
      return LambdaSup{0.5, LambdaSupStatus::exact_closed_form, std::nullopt, "antisymmetric subspace", 0};
    }
  }
  return std::nullopt;
}

namespace detail {

/// Coefficient matrices C_k (m x n) of the basis vectors.
inline std::vector<ComplexMatrix> coefficient_matrices(const Subspace& v) {
  std::vector<ComplexMatrix> out;
  out.reserve(v.basis().size());
  for (const auto& psi : v.basis()) out.push_back(psi.coefficients());
  return out;
}

/// Largest eigenvalue of conj(W) W^T, where the columns of W are the
/// overlaps; computed on whichever Gram side is smaller.
inline double top_gram_eigenvalue(const ComplexMatrix& w) {
  if (w.cols() == 1) return w.col(0).squaredNorm();
  const ComplexMatrix g = w.rows() <= w.cols() ? ComplexMatrix(w.conjugate() * w.transpose())
                                               : ComplexMatrix(w.transpose() * w.conjugate());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

/// Top eigenpair of a Hermitian PSD matrix.
inline std::pair<double, ComplexVector> top_eigenpair(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Index last = h.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

}  // namespace detail

/// <alpha (x) beta| Pi_V |alpha (x) beta> = sum_k |alpha^T conj(C_k) beta|^2.
inline double product_overlap(const Subspace& v, const ComplexVector& alpha, const ComplexVector& beta) {
  return (v.basis_matrix().adjoint() * kron(alpha, beta)).squaredNorm();
}

/// Hermitian contraction (M_beta)_{ii'} = <i beta|Pi_V|i' beta>, m x m.
inline ComplexMatrix contraction_over_b(const std::vector<ComplexMatrix>& coeffs, const ComplexVector& beta) {
  const Index m = coeffs.front().rows();
  ComplexMatrix w(m, static_cast<Index>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) w.col(static_cast<Index>(k)) = coeffs[k].conjugate() * beta;
  return w.conjugate() * w.transpose();
}

/// (N_alpha)_{jj'} = <alpha j|Pi_V|alpha j'>, n x n.
inline ComplexMatrix contraction_over_a(const std::vector<ComplexMatrix>& coeffs, const ComplexVector& alpha) {
  const Index n = coeffs.front().cols();
  ComplexMatrix u(n, static_cast<Index>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) u.col(static_cast<Index>(k)) = coeffs[k].adjoint() * alpha;
  return u.conjugate() * u.transpose();
}

struct ProductSeesawOptions {
  int restarts = 32;
  int max_sweeps = 500;
  double tolerance = 1e-12;  // stop when a sweep gains less than this
  std::uint64_t seed = 0x5eedULL;
};

struct ProductSeesawResult {
  double value = 0.0;
  ComplexVector alpha;
  ComplexVector beta;
  /// Objective after every half-step, one trace per restart.
  std::vector<std::vector<double>> traces;
};

/// Alternating top-eigenvector maximization of <alpha beta|Pi_V|alpha beta>.
/// Every value it returns is attained by a product vector, so it never
/// exceeds lambda_sup.
inline ProductSeesawResult product_seesaw(const Subspace& v, const ProductSeesawOptions& opts = {}) {
  const auto coeffs = detail::coefficient_matrices(v);
  Rng rng(opts.seed);
  ProductSeesawResult best;
  best.value = -1.0;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    ComplexVector alpha = haar_unit_vector(v.dim_a(), rng);
    ComplexVector beta = haar_unit_vector(v.dim_b(), rng);
    std::vector<double> trace{product_overlap(v, alpha, beta)};
    double previous = trace.back();
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      auto [va, a] = detail::top_eigenpair(contraction_over_b(coeffs, beta));
      alpha = a;
      trace.push_back(va);
      auto [vb, b] = detail::top_eigenpair(contraction_over_a(coeffs, alpha));
      beta = b;
      trace.push_back(vb);
      if (vb - previous < opts.tolerance) break;
      previous = vb;
    }
    const double value = product_overlap(v, alpha, beta);
    if (value > best.value) {
      best.value = value;
      best.alpha = alpha;
      best.beta = beta;
    }
    best.traces.push_back(std::move(trace));
  }
  return best;
}

/// Heuristic estimate of lambda_sup from below.
inline LambdaSup lambda_sup_seesaw(const Subspace& v, const ProductSeesawOptions& opts = {}) {
  const ProductSeesawResult r = product_seesaw(v, opts);
  return LambdaSup{std::min(r.value, 1.0), LambdaSupStatus::heuristic_lower_estimate, std::nullopt,
                   "product-vector seesaw, " + std::to_string(opts.restarts) + " restarts", 0};
}

struct NetOptions {
  Index max_local_dim = 4;
  std::size_t max_net_points = 4'000'000;
  ProductSeesawOptions seesaw;
};

/// Number of net points needed for a covering radius `radius` of unit
/// vectors in C^m modulo phase (before disk pruning).
inline std::size_t net_size(Index m, double radius, Index* per_axis = nullptr) {
  const Index real_dims = 2 * (m - 1);
  const double spacing = 2.0 * radius / std::sqrt(static_cast<double>(std::max<Index>(real_dims, 1)));
  const auto intervals = static_cast<Index>(std::ceil(2.0 / spacing));
  if (per_axis) *per_axis = intervals + 1;
  double count = static_cast<double>(m);
  for (Index k = 0; k < real_dims; ++k) count *= static_cast<double>(intervals + 1);
  return count > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(count);
}

/// Certified enclosure of lambda_sup with width at most eps.
///
/// g(alpha) = max_beta <alpha beta|Pi_V|alpha beta> = lambda_max(N_alpha) is
/// 2-Lipschitz in alpha (|Pi_V| = 1). The net covers unit alpha in C^m up
/// to phase: rotate so the largest-modulus component c is real positive and
/// divide by it; the remaining m-1 components lie in the unit disk and are
/// gridded on [-1, 1]^{2(m-1)}. Normalizing back is 1-Lipschitz outside the
/// unit ball, so a grid spacing h gives covering radius h sqrt(2(m-1))/2.
/// With covering radius eps/2 the enclosure is
///   [max(seesaw, net max), net max + eps].
inline LambdaSup lambda_sup_certified(const Subspace& v, double eps, const NetOptions& opts = {}) {
  if (!(eps > 0.0)) throw DomainError("lambda_sup_certified: eps must be positive");
  const Index m = v.dim_a();
  if (m > opts.max_local_dim || v.dim_b() > opts.max_local_dim) {
    throw BudgetExceededError("lambda_sup_certified: local dimension above cap " + std::to_string(opts.max_local_dim),
                              net_size(m, eps / 2.0));
  }
  const double radius = eps / 2.0;
  Index per_axis = 0;
  const std::size_t required = net_size(m, radius, &per_axis);
  if (required > opts.max_net_points) {
    throw BudgetExceededError("lambda_sup_certified: net budget " + std::to_string(opts.max_net_points) + " exceeded",
                              required);
  }
  const auto coeffs = detail::coefficient_matrices(v);
  const Index real_dims = 2 * (m - 1);
  const double spacing = 2.0 / static_cast<double>(per_axis - 1);
  const double disk_limit = 1.0 + spacing / std::sqrt(2.0);

  double net_max = 0.0;
  std::size_t evaluated = 0;
  std::vector<Index> counter(static_cast<std::size_t>(real_dims), 0);
  ComplexVector alpha(m);
  ComplexMatrix w(v.dim_b(), static_cast<Index>(coeffs.size()));
  for (Index c = 0; c < m; ++c) {
    std::fill(counter.begin(), counter.end(), 0);
    while (true) {
      bool inside = true;
      Index slot = 0;
      for (Index j = 0; j < m; ++j) {
        if (j == c) {
          alpha(j) = 1.0;
          continue;
        }
        const double re = -1.0 + spacing * static_cast<double>(counter[2 * slot]);
        const double im = -1.0 + spacing * static_cast<double>(counter[2 * slot + 1]);
        alpha(j) = Complex(re, im);
        if (std::abs(alpha(j)) > disk_limit) inside = false;
        ++slot;
      }
      if (inside) {
        const ComplexVector unit = alpha / alpha.norm();
        for (std::size_t k = 0; k < coeffs.size(); ++k) w.col(static_cast<Index>(k)) = coeffs[k].adjoint() * unit;
        net_max = std::max(net_max, detail::top_gram_eigenvalue(w));
        ++evaluated;
      }
      Index pos = 0;
      while (pos < real_dims && ++counter[static_cast<std::size_t>(pos)] == per_axis) {
        counter[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == real_dims) break;
    }
  }

  const double seesaw = product_seesaw(v, opts.seesaw).value;
  const double lo = std::max(seesaw, net_max);
  const double hi = std::min(1.0, net_max + eps);
  LambdaSup out;
  out.value = lo;
  out.status = LambdaSupStatus::certified_interval;
  out.interval = std::make_pair(lo, std::max(lo, hi));
  out.method = "product-state net, eps=" + std::to_string(eps);
  out.net_points = evaluated;
  return out;
}

}  // namespace entbound
