#include <cmath>

#include "helpers.hpp"

using namespace sepeig;
using namespace sepeig::testing;

TEST(BellPhi, Properties) {
  const auto psi = bell_phi();
  EXPECT_EQ(schmidt_rank(psi), 2);
  EXPECT_NEAR(psi.vector().norm(), 1.0, 1e-15);
  EXPECT_NEAR(f_ab(psi.projector()), 0.5, 1e-12);
}

TEST(ChiMinus, NormalizationConstant) {
  const auto chi = chi_minus(0.5, 0.5);
  // [2(1 - e^-1)]^(-1/2)
  EXPECT_NEAR(chi.analytic_norm, 0.8893752601881071, 1e-14);
  EXPECT_LT(chi.norm_drift, 1e-9);
  EXPECT_NEAR(chi.state.vector().norm(), 1.0, 1e-10);
}

TEST(ChiMinus, OnlyOddPhotonNumberSurvives) {
  const auto chi = chi_minus(cplx(0.3, 0.4), 0.7);
  const Dims d = chi.state.dims();
  EXPECT_EQ(std::abs(chi.state.vector()(0)), 0.0);
  for (int n = 0; n < d.a; ++n)
    for (int m = 0; m < d.b; ++m)
      if ((n + m) % 2 == 0) EXPECT_EQ(std::abs(chi.state.vector()(d.index(n, m))), 0.0);
}

TEST(ChiMinus, BellOverlapMatchesClosedForm) {
  // |<Phi|chi>|^2 = |alpha + beta|^2 / (2 sinh(|alpha|^2 + |beta|^2))
  for (double a : {0.4, 0.6, 0.8}) {
    const auto rho = DensityOperator(chi_minus(a, a).state);
    const double want = 4 * a * a / (2 * std::sinh(2 * a * a));
    EXPECT_NEAR(expectation(embedded_bell_projector(), rho), want, 1e-10);
  }
}

TEST(ChiMinus, Errors) {
  expect_kind(ErrorKind::NullState, [] { chi_minus(0.0, 0.0); });
  FockTruncation tight;
  tight.n_max = 3;
  expect_kind(ErrorKind::InvalidArgument, [&] { chi_minus(1.5, 1.5, tight); });
}

TEST(RhoMix, IsADensityOperator) {
  const auto rho = rho_mix(0.6, 0.6, 0.4);
  EXPECT_NEAR(rho.op().trace(), 1.0, 1e-12);
  EXPECT_GE(rho.op().min_eigenvalue(), -1e-12);
  expect_kind(ErrorKind::InvalidArgument, [] { rho_mix(0.6, 0.6, 0.0); });
  expect_kind(ErrorKind::InvalidArgument, [] { rho_mix(0.6, 0.6, 1.0); });
}

TEST(RhoMix, DetectedAboveThreshold) {
  const double a = 1 / std::sqrt(2.0);
  EXPECT_NEAR(coherent_mixture_threshold(a, a), 0.5876005968219007, 1e-12);
  const auto bell = embedded_bell_projector();
  EXPECT_EQ(test_upper(rho_mix(a, a, 0.7), bell).kind, VerdictKind::Entangled);
  EXPECT_EQ(test_upper(rho_mix(a, a, 0.5), bell).kind, VerdictKind::NotDetected);
}

TEST(RhoMix, ThresholdValues) {
  EXPECT_NEAR(coherent_mixture_threshold(0.4, 0.4), 0.5085771306736455, 1e-12);
  EXPECT_NEAR(coherent_mixture_threshold(0.6, 0.6), 0.5443336648208043, 1e-12);
  EXPECT_NEAR(coherent_mixture_threshold(0.8, 0.8), 0.6481645361554859, 1e-12);
}

TEST(Werner, Examples) {
  EXPECT_LT(max_diff(werner(0).matrix(), maximally_mixed({2, 2}).matrix()), 1e-15);
  EXPECT_EQ(npt_check(werner(0)).kind, VerdictKind::PPT);
  const auto one = npt_check(werner(1));
  EXPECT_EQ(one.kind, VerdictKind::NPT);
  EXPECT_NEAR(one.margin, 0.5, 1e-12);
  EXPECT_LE(npt_check(werner(1.0 / 3)).margin, 1e-9);
}

TEST(Werner, PartialTransposeMinEigenvalue) {
  for (double p : {0.1, 0.5, 0.9})
    EXPECT_NEAR(partial_transpose(werner(p).op()).min_eigenvalue(), std::min((1 - 3 * p) / 4, (1 + p) / 4),
                1e-12);
}

TEST(RandomSeparable, Reproducible) {
  const auto x = random_separable({2, 3}, 4, 99), y = random_separable({2, 3}, 4, 99);
  EXPECT_EQ(x.matrix(), y.matrix());
  EXPECT_NE(x.matrix(), random_separable({2, 3}, 4, 100).matrix());
}

TEST(RandomSeparable, SingleTermIsPureProduct) {
  const auto rho = random_separable({3, 2}, 1, 5);
  EXPECT_NEAR((rho.matrix() * rho.matrix()).trace().real(), 1.0, 1e-12);
  EXPECT_EQ(npt_check(rho).kind, VerdictKind::PPT);
}

TEST(RandomSeparable, AlwaysPPT) {
  for (std::uint64_t s = 0; s < 20; ++s)
    EXPECT_EQ(npt_check(random_separable({3, 3}, 5, s)).kind, VerdictKind::PPT);
}

TEST(TilesUpb, ProductAndOrthogonal) {
  const auto v = tiles_upb_vectors();
  ASSERT_EQ(v.size(), 5u);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_EQ(schmidt_rank(v[i]), 1);
    for (std::size_t j = i + 1; j < v.size(); ++j)
      EXPECT_NEAR(std::abs(v[i].vector().dot(v[j].vector())), 0.0, 1e-15);
  }
}

TEST(TilesUpb, StateIsPPTAndNotDetectedByNpt) {
  const auto rho = tiles_upb_state();
  EXPECT_NEAR(rho.op().trace(), 1.0, 1e-12);
  EXPECT_GE(partial_transpose(rho.op()).min_eigenvalue(), -1e-10);
  EXPECT_EQ(npt_check(rho).kind, VerdictKind::PPT);
}
