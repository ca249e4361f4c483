#include <gtest/gtest.h>

#include <cmath>

#include "entbound/subspace.hpp"
#include "oracles.hpp"

using namespace entbound;

namespace {

void expect_monotone(const ProductSeesawResult& r) {
  for (const auto& trace : r.traces)
    for (std::size_t i = 1; i < trace.size(); ++i) ASSERT_GE(trace[i], trace[i - 1] - 1e-12);
}

Subspace product_span(Index m, Index n) { return Subspace::span_of(PureState(m, n, product_basis_vector(m, n, 0, 1))); }

}  // namespace

TEST(SubspaceType, Validation) {
  const PureState a(2, 2, product_basis_vector(2, 2, 0, 0));
  const PureState b = PureState::normalized(2, 2, product_basis_vector(2, 2, 0, 0) + product_basis_vector(2, 2, 0, 1));
  EXPECT_THROW(Subspace(2, 2, {a, b}), DomainError);
  EXPECT_THROW(Subspace(2, 2, {}), DomainError);
  EXPECT_THROW(Subspace(2, 3, {a}), DimensionError);
  const Subspace ortho = Subspace::orthonormalize(2, 2, {a.amplitudes(), b.amplitudes()});
  EXPECT_EQ(ortho.dim(), 2);
  EXPECT_THROW(Subspace::orthonormalize(2, 2, {a.amplitudes(), 2.0 * a.amplitudes()}), DomainError);
}

TEST(Projector, Examples) {
  const BipartiteOperator p = projector(phi_plus_subspace(3, 3));
  EXPECT_LT(max_abs(p.matrix() - max_entangled(3).projector()), 1e-15);
  for (Index d : {2, 3, 4}) {
    const ComplexMatrix pa = projector(antisym_subspace(d)).matrix();
    EXPECT_NEAR(pa.trace().real(), double(d * (d - 1) / 2), 1e-13);
    EXPECT_LT(max_abs(pa * pa - pa), 1e-10);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Index l = 1 + seed % 6;
    const ComplexMatrix pr = projector(random_subspace(2, 3, l, seed)).matrix();
    EXPECT_TRUE(is_hermitian(pr));
    EXPECT_LT(max_abs(pr * pr - pr), 1e-10);
    EXPECT_NEAR(pr.trace().real(), double(l), 1e-10);
  }
}

TEST(BestOverlap, InsideAndOrthogonal) {
  const Subspace v = antisym_subspace(3);
  EXPECT_NEAR(best_overlap_in_v(v.basis()[1], v), 1.0, 1e-14);
  EXPECT_NEAR(best_overlap_in_v(PureState(3, 3, product_basis_vector(3, 3, 1, 1)), v), 0.0, 1e-15);
}

TEST(BestOverlap, MatchesMonteCarloMaximum) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Subspace v = random_subspace(2, 3, 2, seed);
    const PureState phi = random_pure(2, 3, seed + 100);
    const double exact = best_overlap_in_v(phi, v);
    const double sampled = oracle::sampled_best_overlap(phi.amplitudes(), v.basis_matrix(), 100000, seed);
    EXPECT_LE(sampled, exact + 1e-12);
    EXPECT_GT(sampled, exact - 1e-3);
  }
}

TEST(BestOverlap, ComplementSumsToOne) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index l = 1 + seed % 8;
    const Subspace v = random_subspace(3, 3, l, seed);
    const Subspace perp = orthogonal_complement(v);
    ASSERT_EQ(perp.dim(), 9 - l);
    const PureState phi = random_pure(3, 3, seed + 1000);
    EXPECT_NEAR(best_overlap_in_v(phi, v) + best_overlap_in_v(phi, perp), 1.0, 1e-10);
  }
}

TEST(ClosedForm, Examples) {
  for (Index d : {2, 3, 4}) {
    const auto phi = lambda_sup_closed_form(phi_plus_subspace(d, d));
    ASSERT_TRUE(phi.has_value());
    EXPECT_NEAR(phi->value, 1.0 / double(d), 1e-14);
    EXPECT_EQ(phi->status, LambdaSupStatus::exact_closed_form);

    const auto anti = lambda_sup_closed_form(antisym_subspace(d));
    ASSERT_TRUE(anti.has_value());
    EXPECT_NEAR(anti->value, 0.5, 1e-14);
  }
  const auto prod = lambda_sup_closed_form(product_span(2, 3));
  ASSERT_TRUE(prod.has_value());
  EXPECT_NEAR(prod->value, 1.0, 1e-14);
  EXPECT_FALSE(lambda_sup_closed_form(random_subspace(2, 2, 2, 1)).has_value());
}

TEST(ClosedForm, RecognizesRotatedAntisymmetricBasis) {
  // Same subspace, different orthonormal basis.
  const auto basis = antisym_basis(3);
  Rng rng(12);
  const ComplexMatrix u = haar_unitary(3, rng);
  std::vector<PureState> rotated;
  for (Index c = 0; c < 3; ++c) {
    ComplexVector v = ComplexVector::Zero(9);
    for (Index r = 0; r < 3; ++r) v += u(r, c) * basis[static_cast<std::size_t>(r)].amplitudes();
    rotated.emplace_back(3, 3, v);
  }
  const auto ls = lambda_sup_closed_form(Subspace(3, 3, rotated));
  ASSERT_TRUE(ls.has_value());
  EXPECT_EQ(ls->value, 0.5);
  // A proper subspace of the antisymmetric space is not recognized.
  EXPECT_FALSE(lambda_sup_closed_form(Subspace(3, 3, {basis[0], basis[1]})).has_value());
}

TEST(Seesaw, KnownValues) {
  for (Index d : {2, 3, 4}) {
    const ProductSeesawResult r = product_seesaw(antisym_subspace(d));
    EXPECT_NEAR(r.value, 0.5, 1e-8);
    expect_monotone(r);
    EXPECT_NEAR(product_overlap(antisym_subspace(d), r.alpha, r.beta), r.value, 1e-14);
  }
  EXPECT_NEAR(lambda_sup_seesaw(phi_plus_subspace(3, 3)).value, 1.0 / 3.0, 1e-8);
  EXPECT_EQ(lambda_sup_seesaw(phi_plus_subspace(3, 3)).status, LambdaSupStatus::heuristic_lower_estimate);
  EXPECT_FALSE(lambda_sup_seesaw(phi_plus_subspace(3, 3)).certified());
}

TEST(Seesaw, OneDimensionalMatchesLambdaOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = random_pure(2 + seed % 2, 3, seed);
    const Subspace v = Subspace::span_of(psi);
    EXPECT_NEAR(lambda_sup_seesaw(v).value, oracle::lambda_max(psi.amplitudes(), psi.dim_a(), psi.dim_b()), 1e-8);
  }
}

TEST(Seesaw, MonotoneOnRandomSubspaces) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Subspace v = random_subspace(3, 4, 1 + seed % 5, seed);
    const ProductSeesawResult r = product_seesaw(v);
    expect_monotone(r);
    EXPECT_LE(r.value, 1.0 + 1e-12);
  }
}

TEST(Seesaw, ContractionsAreHermitianAndConsistent) {
  const Subspace v = random_subspace(2, 3, 3, 8);
  std::vector<ComplexMatrix> coeffs;
  for (const auto& b : v.basis()) coeffs.push_back(b.coefficients());
  Rng rng(2);
  const ComplexVector alpha = haar_unit_vector(2, rng);
  const ComplexVector beta = haar_unit_vector(3, rng);
  const ComplexMatrix mb = contraction_over_b(coeffs, beta);
  const ComplexMatrix na = contraction_over_a(coeffs, alpha);
  EXPECT_TRUE(is_hermitian(mb));
  EXPECT_TRUE(is_hermitian(na));
  const double direct = (kron(alpha, beta).adjoint() * projector(v).matrix() * kron(alpha, beta))(0, 0).real();
  EXPECT_NEAR((alpha.adjoint() * mb * alpha)(0, 0).real(), direct, 1e-12);
  EXPECT_NEAR((beta.adjoint() * na * beta)(0, 0).real(), direct, 1e-12);
  EXPECT_NEAR(product_overlap(v, alpha, beta), direct, 1e-12);
}

TEST(Certified, IntervalsContainTrueValues) {
  const LambdaSup phi = lambda_sup_certified(phi_plus_subspace(2, 2), 0.05);
  ASSERT_TRUE(phi.interval.has_value());
  EXPECT_EQ(phi.status, LambdaSupStatus::certified_interval);
  EXPECT_LE(phi.interval->first, 0.5 + 1e-12);
  EXPECT_GE(phi.interval->second, 0.5 - 1e-12);
  EXPECT_LE(phi.interval->second - phi.interval->first, 0.05 + 1e-15);
  EXPECT_GT(phi.net_points, 0u);

  const LambdaSup anti = lambda_sup_certified(antisym_subspace(2), 0.05);
  EXPECT_LE(anti.interval->first, 0.5 + 1e-12);
  EXPECT_GE(anti.interval->second, 0.5 - 1e-12);

  const LambdaSup prod = lambda_sup_certified(product_span(2, 2), 0.05);
  EXPECT_LE(prod.interval->first, 1.0);
  EXPECT_GE(prod.interval->second, 1.0 - 1e-12);

  EXPECT_DOUBLE_EQ(phi.for_bounds(), phi.interval->second);
  EXPECT_TRUE(phi.certified());
}

TEST(Certified, ContainsSampledValuesAtThreeByThree) {
  const Subspace v = random_subspace(3, 3, 3, 21);
  const LambdaSup ls = lambda_sup_certified(v, 0.2);
  const double sampled = oracle::sampled_lambda_sup(v.basis_matrix(), 3, 3, 20000, 5);
  EXPECT_LE(sampled, ls.interval->second + 1e-12);
  EXPECT_LE(ls.interval->second - ls.interval->first, 0.2 + 1e-15);
}

TEST(Certified, Errors) {
  EXPECT_THROW(lambda_sup_certified(phi_plus_subspace(2, 2), 0.0), DomainError);
  EXPECT_THROW(lambda_sup_certified(phi_plus_subspace(5, 5), 0.1), BudgetExceededError);
  NetOptions tight;
  tight.max_net_points = 100;
  try {
    lambda_sup_certified(phi_plus_subspace(3, 3), 0.01, tight);
    FAIL() << "expected BudgetExceededError";
  } catch (const BudgetExceededError& e) {
    EXPECT_GT(e.required_net_size, 100u);
    EXPECT_EQ(e.required_net_size, net_size(3, 0.005));
  }
}

TEST(ProductOverlapIdentity, SampledLambdaNeverExceedsCertifiedUpperEnd) {
  // max over unit Psi in V of lambda_1(Psi) equals max over product vectors
  // of <alpha beta|Pi_V|alpha beta>.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Subspace v = random_subspace(2, 2, 2, seed);
    const LambdaSup ls = lambda_sup_certified(v, 0.02);
    const double seesaw = product_seesaw(v).value;
    const double sampled = oracle::sampled_lambda_sup(v.basis_matrix(), 2, 2, 100000, seed + 7);
    EXPECT_LE(sampled, ls.interval->second + 1e-12);
    EXPECT_LE(sampled, seesaw + 1e-9);
    EXPECT_NEAR(sampled, seesaw, 1e-3);
  }
}

TEST(AntisymmetricSubspace, SampledVectorsNeverExceedOneHalf) {
  for (Index d : {2, 3, 4}) {
    const Subspace v = antisym_subspace(d);
    EXPECT_LE(oracle::sampled_lambda_sup(v.basis_matrix(), d, d, 20000, 3 + d), 0.5 + 1e-9);
  }
}

TEST(SupportSubspace, RangeOfDensity) {
  const DensityOperator rho = werner(3, 1.0);
  const Subspace s = support_subspace(rho);
  EXPECT_EQ(s.dim(), 3);
  EXPECT_LT(max_abs(projector(s).matrix() - projector(antisym_subspace(3)).matrix()), 1e-10);
  EXPECT_EQ(support_subspace(random_density(2, 3, 4, 1)).dim(), 4);
}
