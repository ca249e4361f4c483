// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "entbound/entbound.hpp"
#include "oracles.hpp"

using namespace entbound;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

LambdaSup exact(const Subspace& v) { return *lambda_sup_closed_form(v); }

DensityOperator mix(const DensityOperator& rho, const DensityOperator& noise, double p) {
  return {rho.dim_a(), rho.dim_b(), (1.0 - p) * rho.matrix() + p * noise.matrix()};
}

double phi_plus_overlap(const DensityOperator& rho) {
  const ComplexVector phi = max_entangled(rho.dim_a(), rho.dim_b()).amplitudes();
  return (phi.adjoint() * rho.matrix() * phi)(0, 0).real();
}

// ------------------------------------------------------------------ AC1

Outcome ac1_isotropic() {
  const auto start = Clock::now();
  double err = 0.0;
  for (Index d : {2, 3, 4}) {
    const Subspace v = phi_plus_subspace(d, d);
    const LambdaSup ls = exact(v);
    err = std::max(err, std::abs(ls.value - 1.0 / double(d)));
    for (int i = 0; i <= 100; ++i) {
      const double f = i / 100.0;
      const DensityOperator rho = isotropic(d, f);
      const double dd = double(d);
      err = std::max(err, std::abs(cren_lower(rho, v, ls) - std::max((f * dd - 1.0) / 2.0, 0.0)));
      err = std::max(err, std::abs(concurrence_lower(rho, v, ls) -
                                   std::max(std::sqrt(2.0 * dd / (dd - 1.0)) * (f - 1.0 / dd), 0.0)));
    }
  }
  const double t = seconds_since(start);
  return {err <= 1e-10 && t < 5.0, fmt("max error %.2e over 3x101 points (tol 1e-10), %.3f s (limit 5 s)", err, t)};
}

// ------------------------------------------------------------------ AC2

Outcome ac2_werner() {
  double err = 0.0;
  for (Index d : {2, 3, 4}) {
    const Subspace v = antisym_subspace(d);
    const LambdaSup ls = exact(v);
    err = std::max(err, std::abs(ls.value - 0.5));
    const double dd = double(d);
    for (int i = 0; i <= 100; ++i) {
      const double w = i / 100.0;
      const DensityOperator rho = werner(d, w);
      err = std::max(err, std::abs(cren_lower(rho, v, ls) - std::max((2.0 * w - 1.0) / 2.0, 0.0)));
      err = std::max(err, std::abs(concurrence_lower(rho, v, ls) -
                                   std::max(std::sqrt(2.0 / (dd * (dd - 1.0))) * (2.0 * w - 1.0), 0.0)));
    }
  }
  return {err <= 1e-10, fmt("max error %.2e over 3x101 points (tol 1e-10)", err)};
}

// ------------------------------------------------------------------ AC3

Outcome ac3_antisym_lambda_sup() {
  double seesaw_err = 0.0;
  double sampled = 0.0;
  for (Index d : {2, 3, 4}) {
    const Subspace v = antisym_subspace(d);
    seesaw_err = std::max(seesaw_err, std::abs(lambda_sup_seesaw(v).value - 0.5));
    ComplexMatrix basis(d * d, v.dim());
    for (Index k = 0; k < v.dim(); ++k) basis.col(k) = v.basis()[static_cast<std::size_t>(k)].amplitudes();
    sampled = std::max(sampled, oracle::sampled_lambda_sup(basis, d, d, 100000, 900 + static_cast<std::uint64_t>(d)));
  }
  return {seesaw_err <= 1e-8 && sampled <= 0.5 + 1e-9,
          fmt("seesaw |value - 0.5| = %.2e (tol 1e-8); max sampled lambda_1 over 1e5 vectors per d = %.12f (limit 0.5 + 1e-9)",
              seesaw_err, sampled)};
}

// ------------------------------------------------------------------ AC4

Outcome ac4_mixture() {
  double lower_err = 0.0;
  double upper_err = 0.0;
  double d2_err = 0.0;
  for (Index d : {2, 3}) {
    const Subspace anti = antisym_subspace(d);
    const Subspace phi = phi_plus_subspace(d, d);
    const LambdaSup ls_anti = exact(anti);
    const LambdaSup ls_phi = exact(phi);
    const double dd = double(d);
    const double kink = dd / (dd + 2.0);
    for (int i = 0; i <= 100; ++i) {
      const double f = i / 100.0;
      const DensityOperator rho = mixture_antisym_phi_plus(d, f);
      const double envelope = std::max(cren_lower(rho, anti, ls_anti), cren_lower(rho, phi, ls_phi));
      const double piecewise = f <= kink ? 0.5 * (dd * (1.0 - f) - 1.0) : f - 0.5;
      lower_err = std::max(lower_err, std::abs(envelope - std::max(piecewise, 0.0)));
      const double upper = cren_upper_from_ensemble(family_ensemble({FamilyKind::antisym_phi_mixture, d, f})).value;
      upper_err = std::max(upper_err, std::abs(upper - 0.5 * (dd - 1.0 - (dd - 2.0) * f)));
      if (d == 2) d2_err = std::max(d2_err, std::abs(envelope - std::abs(f - 0.5)));
    }
  }
  const bool ok = lower_err <= 1e-10 && upper_err <= 1e-10 && d2_err <= 1e-10;
  return {ok, fmt("lower envelope error %.2e, ensemble upper error %.2e, d=2 |F-1/2| error %.2e (tol 1e-10)", lower_err,
                  upper_err, d2_err)};
}

// ------------------------------------------------------------------ AC5

Outcome ac5_phi_plus_recovery() {
  double err = 0.0;
  int positive = 0;
  Rng rng(55);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Index d : {2, 3}) {
    const Subspace v = phi_plus_subspace(d, d);
    const LambdaSup ls = exact(v);
    const double dd = double(d);
    for (std::uint64_t s = 0; s < 100; ++s) {
      const DensityOperator noise = random_density(d, d, 1 + static_cast<Index>(s % static_cast<std::uint64_t>(d * d)), 5000 + s);
      // Half the states sit near Phi+, so the bound is often positive.
      const DensityOperator rho = s % 2 == 0 ? noise : mix(max_entangled(d).density(), noise, unit(rng));
      const double expected = std::max(std::sqrt(2.0 * dd / (dd - 1.0)) * (phi_plus_overlap(rho) - 1.0 / dd), 0.0);
      const double got = concurrence_lower(rho, v, ls);
      if (got > 0.0) ++positive;
      err = std::max(err, std::abs(got - expected));
    }
  }
  return {err <= 1e-10, fmt("max error %.2e over 200 random states, %d with a positive bound (tol 1e-10)", err, positive)};
}

// ------------------------------------------------------------------ AC6

Outcome ac6_pure_soundness() {
  const auto start = Clock::now();
  int violations = 0;
  int positive = 0;
  int trials = 0;
  for (auto [m, n] : {std::pair<Index, Index>{2, 2}, {2, 3}, {3, 3}}) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const PureState phi = random_pure(m, n, derive_seed(61, static_cast<std::uint64_t>(m * 10 + n), s));
      if (phi.lambda_max() > 1.0 - 1e-9) continue;
      // Half of the states are small perturbations of phi so the bounds bite.
      Rng rng(derive_seed(62, static_cast<std::uint64_t>(m * 10 + n), s));
      const ComplexVector noise = haar_unit_vector(m * n, rng);
      const double eps = (s % 2 == 0) ? 0.0 : 0.6 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const PureState psi = s % 2 == 0 ? random_pure(m, n, derive_seed(63, static_cast<std::uint64_t>(m * 10 + n), s))
                                       : PureState::normalized(m, n, phi.amplitudes() + eps * noise);
      const DensityOperator rho = psi.density();
      const Subspace v = Subspace::span_of(phi);
      const LambdaSup ls = exact(v);
      const double conc = oracle::concurrence_pure(psi.amplitudes(), m, n);
      const double neg = oracle::negativity(psi.projector(), m, n);
      const double sharp = concurrence_lower_sharp(rho, phi).sharp;
      const double generic = concurrence_lower(rho, v, ls);
      const double cren = cren_lower(rho, v, ls);
      ++trials;
      if (sharp > 0.0 || generic > 0.0 || cren > 0.0) ++positive;
      if (sharp > conc + 1e-9 || generic > conc + 1e-9 || cren > neg + 1e-9) ++violations;
    }
  }
  const double t = seconds_since(start);
  return {violations == 0 && t < 30.0,
          fmt("%d violations in %d trials (%d with a positive bound), %.2f s (limit 30 s)", violations, trials, positive, t)};
}

// ------------------------------------------------------------------ AC7

Outcome ac7_von_neumann() {
  Rng rng(77);
  std::uniform_int_distribution<int> dim(1, 9);
  int violations = 0;
  double worst = -1e300;
  for (int i = 0; i < 10000; ++i) {
    const Index r = dim(rng);
    const Index c = dim(rng);
    const ComplexMatrix a = gaussian_matrix(r, c, rng);
    const ComplexMatrix b = gaussian_matrix(r, c, rng);
    const double lhs = std::abs((a.adjoint() * b).trace());
    const double rhs = oracle::singular_values(a).dot(oracle::singular_values(b));
    const double lib_rhs = singular_values(a).dot(singular_values(b));
    worst = std::max(worst, lhs - rhs);
    if (lhs > rhs + 1e-10 || lhs > lib_rhs + 1e-10) ++violations;
  }
  return {violations == 0, fmt("%d violations in 10000 pairs, max lhs - rhs = %.3e (slack 1e-10)", violations, worst)};
}

// ------------------------------------------------------------------ AC8

Outcome ac8_ppt_cross_validation() {
  int contradictions = 0;
  int flagged_test = 0, flagged_ensemble = 0, flagged_perturbation = 0, flagged_mixing = 0;
  int trials = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto npt = [](const ComplexMatrix& rho, Index m, Index n) { return oracle::min_pt_eigenvalue(rho, m, n) < 0.0; };
  for (auto [m, n] : {std::pair<Index, Index>{2, 2}, {2, 3}}) {
    const Index side = m * n;
    for (std::uint64_t s = 0; s < 500; ++s) {
      ++trials;
      const std::uint64_t stream = static_cast<std::uint64_t>(m * 10 + n);
      Rng rng(derive_seed(81, stream, s));
      const PureState phi = s % 3 == 0 ? max_entangled(m, n) : random_pure(m, n, derive_seed(82, stream, s));
      const DensityOperator noise =
          random_density(m, n, 1 + static_cast<Index>(s % static_cast<std::uint64_t>(side)), derive_seed(83, stream, s));
      const DensityOperator rho = mix(phi.density(), noise, unit(rng));
      const Subspace v = Subspace::span_of(phi);
      const LambdaSup ls = exact(v);

      const SeparabilityVerdict verdict = separability_test(rho, v, ls);
      if (verdict.entangled) {
        ++flagged_test;
        if (!npt(rho.matrix(), m, n)) ++contradictions;
      }

      // Spectral ensemble and a random ensemble of the same state.
      const Eigensystem es = hermitian_eigensystem(rho.matrix());
      std::vector<EnsembleMember> spectral;
      double total = 0.0;
      for (Index i = 0; i < side; ++i)
        if (es.values(i) > 1e-12) total += es.values(i);
      for (Index i = 0; i < side; ++i)
        if (es.values(i) > 1e-12) spectral.push_back({es.values(i) / total, PureState::normalized(m, n, es.vectors.col(i))});
      for (const EnsembleDecomposition& dec :
           {EnsembleDecomposition(spectral), random_ensemble(rho, rho.rank() + static_cast<Index>(s % 3), derive_seed(84, stream, s))}) {
        if (!ensemble_separability_check(dec).empty()) {
          ++flagged_ensemble;
          if (!npt(dec.reconstruct_matrix(), m, n)) ++contradictions;
        }
      }

      if (!verdict.entangled) continue;
      const PerturbationGate gate = perturbation_gate(rho, v, ls);
      if (const auto delta = oracle::admissible_perturbation(rho.matrix(), gate.k, 1.2 * gate.threshold * unit(rng), rng)) {
        if (check_perturbation(gate, rho, *delta) == PerturbationVerdict::entangled_guaranteed) {
          ++flagged_perturbation;
          if (!npt(rho.matrix() + *delta, m, n)) ++contradictions;
        }
      }

      const DensityOperator mix_noise =
          random_density(m, n, 1 + static_cast<Index>((s / 3) % static_cast<std::uint64_t>(side)), derive_seed(85, stream, s));
      const MixingThreshold threshold = mixing_threshold(rho, v, mix_noise, ls, 0);
      const double p = threshold.p_max * unit(rng);
      if (p < threshold.p_max) {
        ++flagged_mixing;
        if (!npt(mix(rho, mix_noise, p).matrix(), m, n)) ++contradictions;
      }
    }
  }
  const bool exercised = flagged_test > 0 && flagged_ensemble > 0 && flagged_perturbation > 0 && flagged_mixing > 0;
  return {contradictions == 0 && exercised,
          fmt("%d contradictions in %d trials; flagged: separability_test %d, ensemble check %d, perturbation %d, mixing %d",
              contradictions, trials, flagged_test, flagged_ensemble, flagged_perturbation, flagged_mixing)};
}

// ------------------------------------------------------------------ AC9

Outcome ac9_robustness() {
  std::vector<std::string> problems;

  const DensityOperator bell = max_entangled(2).density();
  const Subspace bell_support = support_subspace(bell);
  const MixingThreshold b = mixing_threshold(bell, bell_support, maximally_mixed(2, 2), exact(bell_support));
  const bool npt_below = oracle::min_pt_eigenvalue(mix(bell, maximally_mixed(2, 2), 2.0 / 3.0 - 1e-6).matrix(), 2, 2) < 0.0;
  const bool ppt_above = oracle::min_pt_eigenvalue(mix(bell, maximally_mixed(2, 2), 2.0 / 3.0 + 1e-6).matrix(), 2, 2) >= 0.0;
  if (std::abs(b.p_max - 2.0 / 3.0) > 1e-12) problems.push_back("Bell p_max");
  if (!npt_below || !ppt_above) problems.push_back("Bell NPT boundary");

  const DensityOperator w1 = werner(3, 1.0);
  const Subspace w1_support = support_subspace(w1);
  const MixingThreshold w = mixing_threshold(w1, w1_support, maximally_mixed(3, 3), exact(antisym_subspace(3)));
  if (std::abs(w.p_max - 0.75) > 1e-12) problems.push_back("Werner p_max");

  struct Config {
    DensityOperator rho;
    Subspace v;
  };
  const std::vector<Config> configs{
      {bell, phi_plus_subspace(2, 2)},
      {max_entangled(3).density(), phi_plus_subspace(3, 3)},
      {isotropic(3, 0.8), phi_plus_subspace(3, 3)},
      {w1, antisym_subspace(3)},
      {werner(2, 0.9), antisym_subspace(2)},
      {mixture_antisym_phi_plus(3, 0.1), phi_plus_subspace(3, 3)},
      {random_pure(2, 3, 3).density(), Subspace::span_of(random_pure(2, 3, 3))},
  };
  int checked = 0;
  int failed = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const Index m = configs[c].rho.dim_a();
    const Index n = configs[c].rho.dim_b();
    const LambdaSup ls = exact(configs[c].v);
    for (std::uint64_t k = 0; k < 5; ++k) {
      const DensityOperator noise =
          k == 0 ? maximally_mixed(m, n) : random_density(m, n, 1 + static_cast<Index>((k * 2) % static_cast<std::uint64_t>(m * n)), 97 * c + k);
      const MixingThreshold t = mixing_threshold(configs[c].rho, configs[c].v, noise, ls, 0);
      for (int i = 0; i < 20; ++i) {
        const double p = t.p_max * (i + 0.5) / 20.0;
        ++checked;
        if (!separability_test(mix(configs[c].rho, noise, p), configs[c].v, ls).entangled) ++failed;
      }
    }
  }
  if (failed > 0) problems.push_back("soundness sweep");

  std::string detail = fmt("Bell p_max = %.15f (2/3, NPT boundary %s); Werner W=1 d=3 p_max = %.15f (3/4); sweep %d/%d detected",
                           b.p_max, npt_below && ppt_above ? "matches" : "differs", w.p_max, checked - failed, checked);
  for (const auto& p : problems) detail += "; failed: " + p;
  return {problems.empty(), detail};
}

// ------------------------------------------------------------------ AC10

Outcome ac10_baseline_table(const std::string& path) {
  const Subspace v = phi_plus_subspace(2, 2);
  const LambdaSup ls = exact(v);
  std::ofstream out(path);
  out << "F,baseline_ppt_realign,concurrence_lower\n";
  int both_positive = 0;
  int below = 0;
  for (int i = 0; i <= 100; ++i) {
    const double f = i / 100.0;
    const DensityOperator rho = isotropic(2, f);
    const double base = baseline_ppt_realignment(rho);
    const double ours = concurrence_lower(rho, v, ls);
    char line[128];
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g\n", f, base, ours);
    out << line;
    if (base > 0.0 && ours > 0.0) {
      ++both_positive;
      if (ours < base - 1e-10) ++below;
    }
  }
  const bool written = static_cast<bool>(out);
  return {written && below == 0,
          fmt("%d/%d grid points with both bounds positive below the baseline; table in %s", below, both_positive, path.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string table = argc > 1 ? argv[1] : "baseline_comparison.csv";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 isotropic closed forms", ac1_isotropic},
      {"AC2 Werner closed forms", ac2_werner},
      {"AC3 antisymmetric lambda_sup", ac3_antisym_lambda_sup},
      {"AC4 antisymmetric/Phi+ mixture", ac4_mixture},
      {"AC5 Phi+ concurrence recovery", ac5_phi_plus_recovery},
      {"AC6 pure-state soundness", ac6_pure_soundness},
      {"AC7 von Neumann trace inequality", ac7_von_neumann},
      {"AC8 PPT cross-validation", ac8_ppt_cross_validation},
      {"AC9 robustness examples", ac9_robustness},
      {"AC10 baseline comparison", [&] { return ac10_baseline_table(table); }},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
