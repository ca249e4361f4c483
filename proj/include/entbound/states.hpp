#pragma once

// Pure and mixed bipartite states: Schmidt machinery, the standard
// isotropic / Werner families, explicit ensembles and seeded generators.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "entbound/random.hpp"
#include "entbound/tensor_core.hpp"

namespace entbound {

/// Unit vector on C^m (x) C^n together with its m x n coefficient matrix
/// and squared Schmidt coefficients lambda_1 >= ... >= lambda_m.
class PureState {
 public:
  /// Input must have unit norm within 1e-9; it is renormalized exactly.
  PureState(Index dim_a, Index dim_b, ComplexVector amplitudes) : dim_a_(dim_a), dim_b_(dim_b) {
    if (dim_a_ < 2) throw DimensionError("PureState: dim_a must be >= 2");
    if (dim_b_ < dim_a_) throw DimensionError("PureState: dim_a must not exceed dim_b");
    if (amplitudes.size() != dim_a_ * dim_b_) {
      throw DimensionError("PureState: expected " + std::to_string(dim_a_ * dim_b_) + " amplitudes, got " +
                           std::to_string(amplitudes.size()));
    }
    if (!amplitudes.allFinite()) throw InvalidMatrixError("PureState: non-finite amplitude");
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-9) throw DomainError("PureState: amplitudes not normalized (norm " +
                                                       std::to_string(norm) + ")");
    amplitudes_ = amplitudes / norm;
    coefficients_.resize(dim_a_, dim_b_);
    for (Index i = 0; i < dim_a_; ++i)
      for (Index j = 0; j < dim_b_; ++j) coefficients_(i, j) = amplitudes_(i * dim_b_ + j);
    schmidt_ = singular_values(coefficients_).array().square();
  }

  /// Normalizes any nonzero vector.
  static PureState normalized(Index dim_a, Index dim_b, const ComplexVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0)) throw DomainError("PureState::normalized: zero vector");
    return {dim_a, dim_b, v / norm};
  }

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  const ComplexMatrix& coefficients() const { return coefficients_; }
  const RealVector& schmidt() const { return schmidt_; }
  double lambda_max() const { return schmidt_(0); }

  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }
  DensityOperator density() const { return {dim_a_, dim_b_, projector()}; }

 private:
  Index dim_a_;
  Index dim_b_;
  ComplexVector amplitudes_;
  ComplexMatrix coefficients_;
  RealVector schmidt_;
};

struct SchmidtDecomposition {
  RealVector lambdas;   // squared coefficients, nonincreasing
  ComplexMatrix left;   // m x m, column i is alpha_i
  ComplexMatrix right;  // n x m, column i is beta_i

  ComplexVector reconstruct() const {
    ComplexVector out = ComplexVector::Zero(left.rows() * right.rows());
    for (Index i = 0; i < lambdas.size(); ++i) {
      out += std::sqrt(std::max(lambdas(i), 0.0)) * kron(ComplexVector(left.col(i)), ComplexVector(right.col(i)));
    }
    return out;
  }
};

/// |psi> = sum_i sqrt(lambda_i) |alpha_i> (x) |beta_i>. The first component of
/// each alpha_i with modulus above 1e-12 is made real positive.
inline SchmidtDecomposition schmidt_decompose(const PureState& psi) {
  Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficients(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.lambdas = svd.singularValues().array().square();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  for (Index c = 0; c < out.left.cols(); ++c) {
    for (Index r = 0; r < out.left.rows(); ++r) {
      const Complex z = out.left(r, c);
      if (std::abs(z) > 1e-12) {
        const Complex phase = z / std::abs(z);
        out.left.col(c) *= std::conj(phase);
        out.right.col(c) *= phase;
        break;
      }
    }
  }
  return out;
}

struct EnsembleMember {
  double weight;
  PureState state;
};

/// rho = sum_mu q_mu |Phi_mu><Phi_mu| with q_mu > 0 summing to one.
class EnsembleDecomposition {
 public:
  explicit EnsembleDecomposition(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    if (members_.empty()) throw DomainError("EnsembleDecomposition: no members");
    double total = 0.0;
    for (const auto& m : members_) {
      if (!(m.weight > 0.0)) throw DomainError("EnsembleDecomposition: weights must be positive");
      if (m.state.dim_a() != dim_a() || m.state.dim_b() != dim_b()) {
        throw DimensionError("EnsembleDecomposition: members have mismatched dimensions");
      }
      total += m.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("EnsembleDecomposition: weights sum to " + std::to_string(total));
  }

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  Index dim_a() const { return members_.front().state.dim_a(); }
  Index dim_b() const { return members_.front().state.dim_b(); }

  ComplexMatrix reconstruct_matrix() const {
    const Index side = dim_a() * dim_b();
    ComplexMatrix rho = ComplexMatrix::Zero(side, side);
    for (const auto& m : members_) rho += m.weight * m.state.projector();
    return rho;
  }

  DensityOperator reconstruct() const { return {dim_a(), dim_b(), reconstruct_matrix()}; }

 private:
  std::vector<EnsembleMember> members_;
};

/// Basis vector |i>_A (x) |j>_B.
inline ComplexVector product_basis_vector(Index m, Index n, Index i, Index j) {
  ComplexVector v = ComplexVector::Zero(m * n);
  v(i * n + j) = 1.0;
  return v;
}

/// (1/sqrt(m)) sum_{j<m} |jj> on C^m (x) C^n; the usual |Phi+> when m = n.
inline PureState max_entangled(Index m, Index n) {
  if (m < 2) throw DomainError("max_entangled: dimension must be >= 2");
  if (n < m) throw DimensionError("max_entangled: dim_a must not exceed dim_b");
  ComplexVector v = ComplexVector::Zero(m * n);
  for (Index j = 0; j < m; ++j) v(j * n + j) = 1.0 / std::sqrt(static_cast<double>(m));
  return {m, n, v};
}

inline PureState max_entangled(Index d) { return max_entangled(d, d); }

/// (|ij> + sign |ji>) / sqrt(2) for i != j.
inline PureState pair_state(Index d, Index i, Index j, double sign) {
  ComplexVector v = ComplexVector::Zero(d * d);
  v(i * d + j) = 1.0 / std::sqrt(2.0);
  v(j * d + i) += sign / std::sqrt(2.0);
  return {d, d, v};
}

/// Orthonormal basis {|Psi^-_ij>}, i < j, of the antisymmetric subspace.
inline std::vector<PureState> antisym_basis(Index d) {
  if (d < 2) throw DomainError("antisym_basis: d must be >= 2");
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>(d * (d - 1) / 2));
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) out.push_back(pair_state(d, i, j, -1.0));
  return out;
}

namespace detail {

inline void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
}

inline void require_dim(Index d, const char* who) {
  if (d < 2) throw DomainError(std::string(who) + ": d must be >= 2");
}

inline ComplexMatrix projector_sum(const std::vector<PureState>& states, Index side) {
  ComplexMatrix p = ComplexMatrix::Zero(side, side);
  for (const auto& s : states) p += s.projector();
  return p;
}

}  // namespace detail

/// rho_F = (1-F)/(d^2-1) (I - |Phi+><Phi+|) + F |Phi+><Phi+|.
inline DensityOperator isotropic(Index d, double fidelity) {
  detail::require_dim(d, "isotropic");
  detail::require_unit_interval(fidelity, "isotropic: F");
  const Index side = d * d;
  const ComplexMatrix phi = max_entangled(d).projector();
  const double noise = (1.0 - fidelity) / static_cast<double>(side - 1);
  ComplexMatrix rho = noise * (ComplexMatrix::Identity(side, side) - phi) + fidelity * phi;
  return {d, d, rho};
}

/// Werner state: 2(1-W)/(d(d+1)) times the symmetric projector plus
/// 2W/(d(d-1)) times the antisymmetric projector.
inline DensityOperator werner(Index d, double w) {
  detail::require_dim(d, "werner");
  detail::require_unit_interval(w, "werner: W");
  const Index side = d * d;
  const double dd = static_cast<double>(d);
  ComplexMatrix sym = ComplexMatrix::Zero(side, side);
  for (Index k = 0; k < d; ++k) sym(k * d + k, k * d + k) = 1.0;
  ComplexMatrix anti = ComplexMatrix::Zero(side, side);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      sym += pair_state(d, i, j, +1.0).projector();
      anti += pair_state(d, i, j, -1.0).projector();
    }
  ComplexMatrix rho = (2.0 * (1.0 - w) / (dd * (dd + 1.0))) * sym + (2.0 * w / (dd * (dd - 1.0))) * anti;
  return {d, d, rho};
}

/// 2F/(d(d-1)) sum_{i<j} |Psi^-_ij><Psi^-_ij| + (1-F) |Phi+><Phi+|.
inline DensityOperator mixture_antisym_phi_plus(Index d, double f) {
  detail::require_dim(d, "mixture_antisym_phi_plus");
  detail::require_unit_interval(f, "mixture_antisym_phi_plus: F");
  const double dd = static_cast<double>(d);
  const ComplexMatrix anti = detail::projector_sum(antisym_basis(d), d * d);
  ComplexMatrix rho = (2.0 * f / (dd * (dd - 1.0))) * anti + (1.0 - f) * max_entangled(d).projector();
  return {d, d, rho};
}

inline DensityOperator maximally_mixed(Index m, Index n) {
  const Index side = m * n;
  return {m, n, ComplexMatrix::Identity(side, side) / static_cast<double>(side)};
}

inline DensityOperator product_density(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  return {rho_a.rows(), rho_b.rows(), kron(rho_a, rho_b)};
}

/// Haar-random pure state (normalized complex Gaussian vector).
inline PureState random_pure(Index m, Index n, std::uint64_t seed) {
  if (m < 2 || n < m) throw DomainError("random_pure: need 2 <= m <= n");
  Rng rng(seed);
  return {m, n, haar_unit_vector(m * n, rng)};
}

/// G G^dagger / tr, G an (mn x rank) Ginibre matrix.
inline DensityOperator random_density(Index m, Index n, Index rank, std::uint64_t seed) {
  if (m < 2 || n < m) throw DomainError("random_density: need 2 <= m <= n");
  if (rank < 1 || rank > m * n) throw DomainError("random_density: rank outside [1, m*n]");
  Rng rng(seed);
  const ComplexMatrix g = gaussian_matrix(m * n, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {m, n, rho};
}

/// Spectral ensemble: eigenvectors with eigenvalue above cutoff.
inline EnsembleDecomposition eigen_ensemble(const DensityOperator& rho, double cutoff = 1e-12) {
  std::vector<EnsembleMember> members;
  double kept = 0.0;
  for (Index i = 0; i < rho.spectrum().size(); ++i)
    if (rho.spectrum()(i) > cutoff) kept += rho.spectrum()(i);
  for (Index i = 0; i < rho.spectrum().size(); ++i) {
    const double e = rho.spectrum()(i);
    if (e <= cutoff) continue;
    members.push_back({e / kept, PureState::normalized(rho.dim_a(), rho.dim_b(), rho.eigenvectors().col(i))});
  }
  return EnsembleDecomposition(std::move(members));
}

/// Random decomposition of rho into `size` pure states: the spectral
/// ensemble mixed by a Haar-random isometry (size x rank).
inline EnsembleDecomposition random_ensemble(const DensityOperator& rho, Index size, std::uint64_t seed) {
  constexpr double cutoff = 1e-12;
  std::vector<Index> support;
  for (Index i = 0; i < rho.spectrum().size(); ++i)
    if (rho.spectrum()(i) > cutoff) support.push_back(i);
  const auto rank = static_cast<Index>(support.size());
  if (size < rank) {
    throw DomainError("random_ensemble: size " + std::to_string(size) + " below rank " + std::to_string(rank));
  }
  Rng rng(seed);
  const ComplexMatrix iso = haar_isometry(size, rank, rng);
  ComplexMatrix scaled(rho.side(), rank);
  for (Index r = 0; r < rank; ++r) {
    scaled.col(r) = std::sqrt(rho.spectrum()(support[r])) * rho.eigenvectors().col(support[r]);
  }
  std::vector<EnsembleMember> members;
  std::vector<ComplexVector> raw;
  double total = 0.0;
  for (Index mu = 0; mu < size; ++mu) {
    ComplexVector v = scaled * iso.row(mu).transpose();
    const double q = v.squaredNorm();
    if (q <= 0.0) continue;
    total += q;
    raw.push_back(std::move(v));
  }
  for (auto& v : raw) {
    const double q = v.squaredNorm();
    members.push_back({q / total, PureState::normalized(rho.dim_a(), rho.dim_b(), v)});
  }
  return EnsembleDecomposition(std::move(members));
}

enum class FamilyKind { isotropic, werner, antisym_phi_mixture };

/// A named one-parameter family on C^d (x) C^d; `param` is F or W.
struct Family {
  FamilyKind kind;
  Index d;
  double param;
};

inline std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::isotropic: return "isotropic";
    case FamilyKind::werner: return "werner";
    case FamilyKind::antisym_phi_mixture: return "mixture";
  }
  return "unknown";
}

inline DensityOperator family_state(const Family& f) {
  switch (f.kind) {
    case FamilyKind::isotropic: return isotropic(f.d, f.param);
    case FamilyKind::werner: return werner(f.d, f.param);
    case FamilyKind::antisym_phi_mixture: return mixture_antisym_phi_plus(f.d, f.param);
  }
  throw UnsupportedError("family_state: unknown family");
}

/// Explicit spectral ensemble of a family member in a fixed basis:
///  isotropic  -> |Phi+>, the d-1 phase-twisted maximally entangled states, |ij> (i != j)
///  werner     -> |kk>, |Psi+_ij>, |Psi-_ij>
///  mixture    -> |Psi-_ij>, |Phi+>
/// Zero-weight members are dropped.
inline EnsembleDecomposition family_ensemble(const Family& f) {
  detail::require_dim(f.d, "family_ensemble");
  detail::require_unit_interval(f.param, "family_ensemble: parameter");
  const Index d = f.d;
  const double dd = static_cast<double>(d);
  std::vector<EnsembleMember> members;
  auto add = [&](double q, PureState s) {
    if (q > 0.0) members.push_back({q, std::move(s)});
  };
  switch (f.kind) {
    case FamilyKind::isotropic: {
      const double noise = (1.0 - f.param) / (dd * dd - 1.0);
      add(f.param, max_entangled(d));
      for (Index k = 1; k < d; ++k) {
        ComplexVector v = ComplexVector::Zero(d * d);
        for (Index j = 0; j < d; ++j) v(j * d + j) = std::polar(1.0 / std::sqrt(dd), 2.0 * std::numbers::pi * double(j * k) / dd);
        add(noise, PureState(d, d, v));
      }
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          if (i != j) add(noise, PureState(d, d, product_basis_vector(d, d, i, j)));
      break;
    }
    case FamilyKind::werner: {
      const double sym = 2.0 * (1.0 - f.param) / (dd * (dd + 1.0));
      const double anti = 2.0 * f.param / (dd * (dd - 1.0));
      for (Index k = 0; k < d; ++k) add(sym, PureState(d, d, product_basis_vector(d, d, k, k)));
      for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j) {
          add(sym, pair_state(d, i, j, +1.0));
          add(anti, pair_state(d, i, j, -1.0));
        }
      break;
    }
    case FamilyKind::antisym_phi_mixture: {
      const double anti = 2.0 * f.param / (dd * (dd - 1.0));
      for (auto& s : antisym_basis(d)) add(anti, std::move(s));
      add(1.0 - f.param, max_entangled(d));
      break;
    }
  }
  // Renormalize away rounding in the weights.
  double total = 0.0;
  for (const auto& m : members) total += m.weight;
  for (auto& m : members) m.weight /= total;
  return EnsembleDecomposition(std::move(members));
}

}  // namespace entbound
