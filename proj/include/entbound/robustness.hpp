#pragma once

// Stability of detected entanglement. With Tr{rho Pi_V} = lambda_sup + delta,
// delta > 0, and k = dim V:
//  - any admissible Hermitian perturbation (traceless, keeps rho + Delta >= 0)
//    with |Delta|_(k) < delta leaves the state entangled;
//  - (1-p) rho + p rho_M stays entangled for
//      p < delta / (lambda_sup + delta + |rho_M|_(mn-k) - 1).

#include <algorithm>
#include <cmath>
#include <string>

#include "entbound/bounds.hpp"
#include "entbound/subspace.hpp"
#include "entbound/tensor_core.hpp"

namespace entbound {

struct PerturbationGate {
  Index k;
  double delta;
  double threshold;  // perturbations need |Delta|_(k) < threshold
  double lambda_sup;
  double delta_cap;  // |rho|_(k) - lambda_sup
};

inline PerturbationGate perturbation_gate(const DensityOperator& rho, const Subspace& v, const LambdaSup& ls) {
  const SeparabilityVerdict verdict = separability_test(rho, v, ls);
  if (!verdict.entangled) {
    throw NotDetectedError("perturbation_gate: delta = " + std::to_string(verdict.delta) + " is not positive");
  }
  return {v.dim(), verdict.delta, verdict.delta, verdict.lambda_sup, verdict.delta_cap};
}

enum class PerturbationVerdict { entangled_guaranteed, inconclusive };

inline std::string to_string(PerturbationVerdict v) {
  return v == PerturbationVerdict::entangled_guaranteed ? "entangled_guaranteed" : "inconclusive";
}

inline PerturbationVerdict check_perturbation(const PerturbationGate& gate, const DensityOperator& rho,
                                              const ComplexMatrix& delta) {
  if (delta.rows() != rho.side() || delta.cols() != rho.side()) {
    throw DimensionError("check_perturbation: perturbation shape does not match the state");
  }
  if (!delta.allFinite()) throw InvalidPerturbationError("check_perturbation: non-finite perturbation");
  if (!is_hermitian(delta)) throw InvalidPerturbationError("check_perturbation: perturbation is not Hermitian");
  if (std::abs(delta.trace().real()) > 1e-10) throw InvalidPerturbationError("check_perturbation: perturbation is not traceless");
  const ComplexMatrix sum = rho.matrix() + delta;
  if (hermitian_eigenvalues(0.5 * (sum + sum.adjoint())).minCoeff() < -tol::psd) {
    throw InvalidPerturbationError("check_perturbation: rho + Delta is not positive semidefinite");
  }
  // Strict inequality with a rounding margin, so that a norm equal to the
  // threshold never reads as a guarantee.
  const double norm = hermitian_ky_fan_norm(delta, gate.k);
  const double margin = 1e-12 * std::max(1.0, gate.threshold);
  return norm < gate.threshold - margin ? PerturbationVerdict::entangled_guaranteed : PerturbationVerdict::inconclusive;
}

struct OverlapInterval {
  double lo;  // 1 - |rho_M|_(mn-k)
  double hi;  // |rho_M|_(k)
};

/// Spectral enclosure of tr{Pi_V rho_M} knowing only the spectrum of rho_M.
inline OverlapInterval noise_overlap_bounds(const DensityOperator& rho_m, const Subspace& v) {
  require_compatible(rho_m, v, "noise_overlap_bounds");
  const Index side = rho_m.side();
  const Index k = v.dim();
  const RealVector& s = rho_m.spectrum();
  return {1.0 - s.head(side - k).sum(), s.head(k).sum()};
}

struct MixingThreshold {
  double p_max;
  double lambda_sup;
  double delta;
  double noise_kyfan;  // |rho_M|_(mn-k)
  Index k;
  bool support_case;  // V is the range of rho
  bool verified;      // the margin stayed positive on sampled p < p_max
};

/// Mixing probabilities below p_max keep (1-p) rho + p rho_M detectably
/// entangled. A non-positive denominator means no p in [0, 1] destroys
/// detection, so p_max = 1.
inline MixingThreshold mixing_threshold(const DensityOperator& rho, const Subspace& v, const DensityOperator& rho_m,
                                        const LambdaSup& ls, int verify_samples = 8) {
  require_compatible(rho_m, v, "mixing_threshold");
  const SeparabilityVerdict verdict = separability_test(rho, v, ls);
  if (!verdict.entangled) {
    throw NotDetectedError("mixing_threshold: delta = " + std::to_string(verdict.delta) + " is not positive");
  }
  MixingThreshold out{};
  out.k = v.dim();
  out.lambda_sup = verdict.lambda_sup;
  out.delta = verdict.delta;
  out.noise_kyfan = rho_m.spectrum().head(rho.side() - out.k).sum();
  const double denominator = out.lambda_sup + out.delta + out.noise_kyfan - 1.0;
  out.p_max = denominator <= 0.0 ? 1.0 : std::clamp(out.delta / denominator, 0.0, 1.0);
  out.support_case = v.dim() == rho.rank() && std::abs(verdict.expectation - 1.0) <= 1e-9;

  out.verified = true;
  for (int s = 1; s <= verify_samples; ++s) {
    const double p = out.p_max * static_cast<double>(s) / static_cast<double>(verify_samples + 1);
    const DensityOperator mixed(rho.dim_a(), rho.dim_b(), (1.0 - p) * rho.matrix() + p * rho_m.matrix());
    if (!separability_test(mixed, v, ls).entangled) out.verified = false;
  }
  return out;
}

}  // namespace entbound
