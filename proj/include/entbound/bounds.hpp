#pragma once

// Lower bounds on concurrence and convex-roof negativity from the projector
// expectation Tr{rho Pi_V}:
//
//   N_CREN(rho) >= max((Tr{rho Pi_V} - lambda_sup) / (2 lambda_sup), 0)
//   C(rho)      >= max(sqrt(2/(m(m-1))) (Tr{rho Pi_V} - lambda_sup) / lambda_sup, 0)
//
// and the separability condition Tr{rho Pi_V} <= lambda_sup behind them.
//
// lambda_sup enters both the subtrahend and the denominator, so an
// underestimate inflates every bound. Closed forms are used as is, certified
// intervals contribute their upper end, and heuristic estimates produce
// bound values flagged `certified = false` and are refused for detection.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "entbound/measures.hpp"
#include "entbound/states.hpp"
#include "entbound/subspace.hpp"
#include "entbound/tensor_core.hpp"

namespace entbound {

enum class LambdaSupMode {
  automatic,  // closed form, then a certified net if within budget, then seesaw
  closed,     // closed form or error
  net,        // closed form, then certified net
  heuristic,  // closed form, then seesaw
};

struct LambdaSupPolicy {
  LambdaSupMode mode = LambdaSupMode::automatic;
  double net_eps = 0.01;
  NetOptions net;
  ProductSeesawOptions seesaw;
};

inline LambdaSup resolve_lambda_sup(const Subspace& v, const LambdaSupPolicy& policy = {}) {
  if (auto closed = lambda_sup_closed_form(v)) return *closed;
  switch (policy.mode) {
    case LambdaSupMode::closed:
      throw CertificationRequiredError("resolve_lambda_sup: no closed form for this subspace");
    case LambdaSupMode::net: return lambda_sup_certified(v, policy.net_eps, policy.net);
    case LambdaSupMode::heuristic: return lambda_sup_seesaw(v, policy.seesaw);
    case LambdaSupMode::automatic:
      try {
        return lambda_sup_certified(v, policy.net_eps, policy.net);
      } catch (const BudgetExceededError&) {
        return lambda_sup_seesaw(v, policy.seesaw);
      }
  }
  throw UnsupportedError("resolve_lambda_sup: unknown mode");
}

inline void require_compatible(const DensityOperator& rho, const Subspace& v, const char* who) {
  if (rho.dim_a() != v.dim_a() || rho.dim_b() != v.dim_b()) {
    throw DimensionError(std::string(who) + ": state is " + std::to_string(rho.dim_a()) + "x" +
                         std::to_string(rho.dim_b()) + " but subspace is " + std::to_string(v.dim_a()) + "x" +
                         std::to_string(v.dim_b()));
  }
}

/// Tr{rho Pi_V} = sum_k <Psi_k|rho|Psi_k>.
inline double projector_expectation(const DensityOperator& rho, const Subspace& v) {
  require_compatible(rho, v, "projector_expectation");
  const ComplexMatrix& b = v.basis_matrix();
  return (b.adjoint() * rho.matrix() * b).trace().real();
}

inline double cren_lower_value(double expectation, double lambda_sup) {
  return std::max((expectation - lambda_sup) / (2.0 * lambda_sup), 0.0);
}

/// m is the smaller local dimension.
inline double concurrence_lower_value(double expectation, double lambda_sup, Index m) {
  const double md = static_cast<double>(m);
  return std::max(std::sqrt(2.0 / (md * (md - 1.0))) * (expectation - lambda_sup) / lambda_sup, 0.0);
}

inline double cren_lower(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls) {
  return cren_lower_value(projector_expectation(rho, v), ls.for_bounds());
}

inline double cren_lower(const DensityOperator& rho, const Subspace& v, const LambdaSupPolicy& policy = {}) {
  return cren_lower(rho, v, resolve_lambda_sup(v, policy));
}

inline double concurrence_lower(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls) {
  return concurrence_lower_value(projector_expectation(rho, v), ls.for_bounds(), rho.dim_a());
}

inline double concurrence_lower(const DensityOperator& rho, const Subspace& v, const LambdaSupPolicy& policy = {}) {
  return concurrence_lower(rho, v, resolve_lambda_sup(v, policy));
}

enum class BoundWinner { sharp, generic, tie };

inline std::string to_string(BoundWinner w) {
  switch (w) {
    case BoundWinner::sharp: return "sharp";
    case BoundWinner::generic: return "generic";
    case BoundWinner::tie: return "tie";
  }
  return "unknown";
}

struct SharpConcurrenceBound {
  double sharp;    // max(2 (<Phi|rho|Phi> - lambda_1) / C(Phi), 0)
  double generic;  // the subspace bound with V = span{Phi}
  BoundWinner winner;
  double overlap;  // <Phi|rho|Phi>
  double lambda_max;
  double concurrence_phi;
};

/// Concurrence bound specialized to a one-dimensional projector on an
/// entangled |Phi>, reported next to the generic subspace bound.
inline SharpConcurrenceBound concurrence_lower_sharp(const DensityOperator& rho, const PureState& phi) {
  if (rho.dim_a() != phi.dim_a() || rho.dim_b() != phi.dim_b()) {
    throw DimensionError("concurrence_lower_sharp: state and phi dimensions differ");
  }
  const double c_phi = concurrence_pure(phi);
  if (c_phi <= 1e-10) throw DomainError("concurrence_lower_sharp: phi is a product state (C(phi) = 0)");
  const double overlap = (phi.amplitudes().adjoint() * rho.matrix() * phi.amplitudes())(0, 0).real();
  const double l1 = phi.lambda_max();
  SharpConcurrenceBound out{};
  out.overlap = overlap;
  out.lambda_max = l1;
  out.concurrence_phi = c_phi;
  out.sharp = std::max(2.0 * (overlap - l1) / c_phi, 0.0);
  out.generic = concurrence_lower_value(overlap, l1, rho.dim_a());
  const double gap = out.sharp - out.generic;
  out.winner = std::abs(gap) <= 1e-12 ? BoundWinner::tie : (gap > 0 ? BoundWinner::sharp : BoundWinner::generic);
  return out;
}

struct OptimizedBound {
  double cren_lower;
  double concurrence_lower;
  FullyEntangledFraction fraction;
  LambdaSup lambda_sup;
  bool heuristic = true;  // F_V is a local optimum
};

/// Bounds with Tr{rho Pi_V} replaced by the local-unitary optimized F_V.
inline OptimizedBound lower_bounds_optimized(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls,
                                             const SeesawOptions& opts = {}) {
  require_compatible(rho, v, "lower_bounds_optimized");
  FullyEntangledFraction fv = fully_entangled_fraction_v(rho, v, opts);
  const double lam = ls.for_bounds();
  return {cren_lower_value(fv.value, lam), concurrence_lower_value(fv.value, lam, rho.dim_a()), std::move(fv), ls, true};
}

inline double cren_lower_optimized(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls,
                                   const SeesawOptions& opts = {}) {
  return lower_bounds_optimized(rho, v, ls, opts).cren_lower;
}

inline double concurrence_lower_optimized(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls,
                                          const SeesawOptions& opts = {}) {
  return lower_bounds_optimized(rho, v, ls, opts).concurrence_lower;
}

struct SeparabilityVerdict {
  bool entangled;
  double delta;  // Tr{rho Pi_V} - lambda_sup
  double expectation;
  double lambda_sup;
  double delta_cap;  // |rho|_(k) - lambda_sup
};

/// Separable states satisfy Tr{rho Pi_V} <= lambda_sup; a positive margin
/// certifies entanglement. Requires a closed-form or certified lambda_sup.
inline SeparabilityVerdict separability_test(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls) {
  require_compatible(rho, v, "separability_test");
  if (!ls.certified()) throw CertificationRequiredError("separability_test: lambda_sup is a heuristic estimate");
  SeparabilityVerdict out{};
  out.expectation = projector_expectation(rho, v);
  out.lambda_sup = ls.for_bounds();
  out.delta = out.expectation - out.lambda_sup;
  out.entangled = out.delta > 0.0;
  out.delta_cap = rho.spectrum().head(v.dim()).sum() - out.lambda_sup;
  if (out.delta > out.delta_cap + 1e-9) throw std::logic_error("separability_test: margin exceeds Ky Fan cap");
  return out;
}

struct EnsembleViolation {
  std::size_t index;
  double weight;
  double lambda_max;
};

/// Members with lambda_1(Phi_mu) < q_mu. Any violation certifies that the
/// reconstructed state is entangled.
inline std::vector<EnsembleViolation> ensemble_separability_check(const EnsembleDecomposition& dec) {
  std::vector<EnsembleViolation> out;
  for (std::size_t i = 0; i < dec.members().size(); ++i) {
    const auto& m = dec.members()[i];
    if (m.state.lambda_max() < m.weight) out.push_back({i, m.weight, m.state.lambda_max()});
  }
  return out;
}

/// PPT / realignment concurrence bound:
/// sqrt(2/(m(m-1))) (max(|rho^{T_A}|_1, |R(rho)|_1) - 1), clamped at 0.
inline double baseline_ppt_realignment(const DensityOperator& rho) {
  const double md = static_cast<double>(rho.dim_a());
  const double pt = trace_norm(partial_transpose_a(rho.op()).matrix());
  const double re = trace_norm(realign(rho.op()));
  return std::max(std::sqrt(2.0 / (md * (md - 1.0))) * (std::max(pt, re) - 1.0), 0.0);
}

struct BoundReport {
  double expectation = 0.0;
  LambdaSup lambda_sup;
  double delta = 0.0;
  double cren_margin = 0.0;  // unclamped (expectation - lambda) / (2 lambda)
  double cren_lower = 0.0;
  double concurrence_lower = 0.0;
  bool certified = false;
  std::optional<double> baseline_ppt_realign;
  std::optional<SharpConcurrenceBound> sharp;
  std::optional<OptimizedBound> optimized;
  std::vector<std::string> notes;
};

struct BoundReportOptions {
  LambdaSupPolicy lambda_policy;
  bool include_baseline = true;
  bool optimize = false;
  SeesawOptions seesaw;
};

inline BoundReport bound_report(const DensityOperator& rho, const Subspace& v, const BoundReportOptions& opts = {}) {
  require_compatible(rho, v, "bound_report");
  BoundReport r;
  r.expectation = projector_expectation(rho, v);
  r.lambda_sup = resolve_lambda_sup(v, opts.lambda_policy);
  const double lam = r.lambda_sup.for_bounds();
  r.delta = r.expectation - lam;
  r.cren_margin = (r.expectation - lam) / (2.0 * lam);
  r.cren_lower = cren_lower_value(r.expectation, lam);
  r.concurrence_lower = concurrence_lower_value(r.expectation, lam, rho.dim_a());
  r.certified = r.lambda_sup.certified();
  if (!r.certified) r.notes.push_back("lambda_sup is a heuristic lower estimate; bounds may be too large");
  if (r.lambda_sup.status == LambdaSupStatus::certified_interval) {
    r.notes.push_back("bounds use the upper end of the certified lambda_sup interval");
  }
  if (opts.include_baseline) r.baseline_ppt_realign = baseline_ppt_realignment(rho);
  if (v.dim() == 1 && concurrence_pure(v.basis().front()) > 1e-10) {
    r.sharp = concurrence_lower_sharp(rho, v.basis().front());
    r.notes.push_back("one-dimensional projector: sharp concurrence bound winner = " + to_string(r.sharp->winner));
  }
  if (opts.optimize) {
    r.optimized = lower_bounds_optimized(rho, v, r.lambda_sup, opts.seesaw);
    r.notes.push_back("optimized bounds use a local-unitary seesaw (local optimum)");
  }
  return r;
}

}  // namespace entbound
