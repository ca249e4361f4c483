#pragma once

// Entanglement measures where they are computable exactly, convex-roof upper
// bounds from explicit ensembles, and the generalized fully entangled
// fraction F_V(rho) = max_{U_A, U_B} Tr{(U_A (x) U_B) rho (U_A (x) U_B)^dagger Pi_V}.
//
// Pure-state negativity follows N(psi) = sum_{i<j} sqrt(lambda_i lambda_j),
// so N(|Phi+>) = (d-1)/2. Some references scale it by 2/(d-1); that
// convention is not used anywhere here.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "entbound/random.hpp"
#include "entbound/states.hpp"
#include "entbound/subspace.hpp"
#include "entbound/tensor_core.hpp"

namespace entbound {

enum class MeasureKind { exact, upper_bound, lower_bound };

inline std::string to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::exact: return "exact";
    case MeasureKind::upper_bound: return "upper_bound";
    case MeasureKind::lower_bound: return "lower_bound";
  }
  return "unknown";
}

struct MeasureValue {
  double value;
  MeasureKind kind;
  std::string method;
};

/// C(psi) = 2 sqrt(sum_{i<j} lambda_i lambda_j).
inline double concurrence_pure(const PureState& psi) {
  const RealVector& l = psi.schmidt();
  double pairs = 0.0;
  for (Index i = 0; i < l.size(); ++i)
    for (Index j = i + 1; j < l.size(); ++j) pairs += l(i) * l(j);
  return 2.0 * std::sqrt(std::max(pairs, 0.0));
}

/// C(psi) = sqrt(2 (1 - Tr rho_A^2)), through the reduced state.
inline double concurrence_pure_from_reduction(const PureState& psi) {
  const ComplexMatrix rho_a = detail::partial_trace_b(psi.projector(), psi.dim_a(), psi.dim_b());
  const double purity = (rho_a * rho_a).trace().real();
  return std::sqrt(std::max(2.0 * (1.0 - purity), 0.0));
}

/// N(rho) = (|rho^{T_B}|_1 - 1) / 2.
inline double negativity(const DensityOperator& rho) {
  return std::max(0.0, 0.5 * (trace_norm(partial_transpose_b(rho.op()).matrix()) - 1.0));
}

inline double negativity_pure_schmidt(const PureState& psi) {
  const RealVector& l = psi.schmidt();
  double sum = 0.0;
  for (Index i = 0; i < l.size(); ++i)
    for (Index j = i + 1; j < l.size(); ++j) sum += std::sqrt(std::max(l(i) * l(j), 0.0));
  return sum;
}

/// sum_mu q_mu N(Phi_mu): an upper bound on the convex-roof negativity.
inline MeasureValue cren_upper_from_ensemble(const EnsembleDecomposition& dec) {
  double sum = 0.0;
  for (const auto& m : dec.members()) sum += m.weight * negativity_pure_schmidt(m.state);
  const bool pure = dec.size() == 1;
  return {sum, pure ? MeasureKind::exact : MeasureKind::upper_bound, pure ? "pure state" : "ensemble average"};
}

inline MeasureValue concurrence_upper_from_ensemble(const EnsembleDecomposition& dec) {
  double sum = 0.0;
  for (const auto& m : dec.members()) sum += m.weight * concurrence_pure(m.state);
  const bool pure = dec.size() == 1;
  return {sum, pure ? MeasureKind::exact : MeasureKind::upper_bound, pure ? "pure state" : "ensemble average"};
}

/// Known exact convex-roof negativity of the isotropic and Werner families,
/// and of the antisymmetric / |Phi+> mixture at d = 2.
inline MeasureValue cren_exact_family(const Family& f) {
  detail::require_dim(f.d, "cren_exact_family");
  detail::require_unit_interval(f.param, "cren_exact_family: parameter");
  const double d = static_cast<double>(f.d);
  switch (f.kind) {
    case FamilyKind::isotropic: return {std::max((f.param * d - 1.0) / 2.0, 0.0), MeasureKind::exact, "isotropic closed form"};
    case FamilyKind::werner: return {std::max((2.0 * f.param - 1.0) / 2.0, 0.0), MeasureKind::exact, "Werner closed form"};
    case FamilyKind::antisym_phi_mixture:
      if (f.d == 2) return {std::abs(f.param - 0.5), MeasureKind::exact, "antisymmetric/Phi+ mixture, d=2"};
      break;
  }
  throw UnsupportedError("cren_exact_family: no closed form for " + family_name(f.kind) + " at d=" + std::to_string(f.d));
}

inline MeasureValue concurrence_exact_family(const Family& f) {
  detail::require_dim(f.d, "concurrence_exact_family");
  detail::require_unit_interval(f.param, "concurrence_exact_family: parameter");
  const double d = static_cast<double>(f.d);
  switch (f.kind) {
    case FamilyKind::isotropic:
      return {std::max(std::sqrt(2.0 * d / (d - 1.0)) * (f.param - 1.0 / d), 0.0), MeasureKind::exact,
              "isotropic closed form"};
    case FamilyKind::werner:
      return {std::max(std::sqrt(2.0 / (d * (d - 1.0))) * (2.0 * f.param - 1.0), 0.0), MeasureKind::exact,
              "Werner closed form"};
    case FamilyKind::antisym_phi_mixture: break;
  }
  throw UnsupportedError("concurrence_exact_family: no closed form for " + family_name(f.kind));
}

/// Options of the local-unitary seesaw for F_V.
struct SeesawOptions {
  int restarts = 16;  // the first restart starts from identity unitaries
  int max_sweeps = 200;
  double tolerance = 1e-10;
  std::uint64_t seed = 0xfe5eedULL;
};

struct FullyEntangledFraction {
  double value = 0.0;
  ComplexMatrix unitary_a;
  ComplexMatrix unitary_b;
  /// Objective after every sweep, one trace per restart.
  std::vector<std::vector<double>> traces;
  bool heuristic = true;
};

namespace detail {

/// Unitary W maximizing Re Tr{W M}: with M = X S Y^dagger, W = Y X^dagger.
inline ComplexMatrix polar_maximizer(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().adjoint();
}

inline double overlap_with(const ComplexMatrix& rho, const ComplexMatrix& pi) {
  return (rho * pi).trace().real();
}

}  // namespace detail

/// Alternating maximization over U_A and U_B. The objective is a convex
/// quadratic in each unitary, so replacing U by the maximizer of the
/// linearization Re Tr{W M}, M = Tr_B{rho' Pi_V} (resp. Tr_A), never
/// decreases it. Local optimum only.
inline FullyEntangledFraction fully_entangled_fraction_v(const DensityOperator& rho, const Subspace& v,
                                                         const SeesawOptions& opts = {}) {
  if (rho.dim_a() != v.dim_a() || rho.dim_b() != v.dim_b()) {
    throw DimensionError("fully_entangled_fraction_v: state and subspace dimensions differ");
  }
  const Index m = rho.dim_a();
  const Index n = rho.dim_b();
  const ComplexMatrix pi = projector(v).matrix();
  const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);
  Rng rng(opts.seed);

  FullyEntangledFraction best;
  best.value = -1.0;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    ComplexMatrix ua = r == 0 ? id_a : haar_unitary(m, rng);
    ComplexMatrix ub = r == 0 ? id_b : haar_unitary(n, rng);
    ComplexMatrix local = kron(ua, ub);
    ComplexMatrix rotated = local * rho.matrix() * local.adjoint();
    std::vector<double> trace{detail::overlap_with(rotated, pi)};
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const ComplexMatrix wa = detail::polar_maximizer(detail::partial_trace_b(rotated * pi, m, n));
      const ComplexMatrix step_a = kron(wa, id_b);
      rotated = step_a * rotated * step_a.adjoint();
      ua = wa * ua;
      const ComplexMatrix wb = detail::polar_maximizer(detail::partial_trace_a(rotated * pi, m, n));
      const ComplexMatrix step_b = kron(id_a, wb);
      rotated = step_b * rotated * step_b.adjoint();
      ub = wb * ub;
      trace.push_back(detail::overlap_with(rotated, pi));
      if (trace.back() - trace[trace.size() - 2] < opts.tolerance) break;
    }
    if (trace.back() > best.value) {
      best.value = trace.back();
      best.unitary_a = ua;
      best.unitary_b = ub;
    }
    best.traces.push_back(std::move(trace));
  }
  return best;
}

}  // namespace entbound
