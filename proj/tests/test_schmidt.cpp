#include "helpers.hpp"

using namespace sepeig;
using namespace sepeig::testing;

TEST(Schmidt, ProductState) {
  const auto sd = schmidt(PureBipartiteState::product(e(0), f(0)));
  ASSERT_EQ(sd.rank(), 1);
  EXPECT_NEAR(sd.coefficients[0], 1.0, 1e-15);
}

TEST(Schmidt, MaximallyEntangled) {
  const auto sd = schmidt(bell_phi_plus());
  ASSERT_EQ(sd.rank(), 2);
  EXPECT_NEAR(sd.coefficients[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sd.coefficients[1], 1 / std::sqrt(2.0), 1e-15);
}

TEST(Schmidt, CosSin) {
  const auto sd = schmidt(cos_sin(0.3));
  ASSERT_EQ(sd.rank(), 2);
  EXPECT_NEAR(sd.coefficients[0], std::cos(0.3), 1e-15);
  EXPECT_NEAR(sd.coefficients[1], std::sin(0.3), 1e-15);
}

TEST(SchmidtRank, Examples) {
  EXPECT_EQ(schmidt_rank(PureBipartiteState::product(e(0), f(0))), 1);
  EXPECT_EQ(schmidt_rank(bell_phi()), 2);
  EXPECT_EQ(schmidt_rank(cos_sin(1e-12)), 1);
}

TEST(Schmidt, ReconstructsAndIsOrthonormal) {
  Rng rng = stream_rng(11);
  for (const Dims d : {Dims{2, 2}, Dims{3, 5}, Dims{4, 2}}) {
    for (int t = 0; t < 10; ++t) {
      const PureBipartiteState psi(d, haar_vector(d.total(), rng));
      const auto sd = schmidt(psi);
      EXPECT_LT((sd.reconstruct() - psi.vector()).norm(), 1e-12);
      EXPECT_NEAR(Eigen::VectorXd::Map(sd.coefficients.data(), sd.rank()).squaredNorm(), 1.0, 1e-12);
      for (int q = 1; q < sd.rank(); ++q) EXPECT_GE(sd.coefficients[q - 1], sd.coefficients[q]);
      EXPECT_LT(max_diff(sd.left.adjoint() * sd.left, Matrix::Identity(sd.rank(), sd.rank())), 1e-12);
      EXPECT_LT(max_diff(sd.right.adjoint() * sd.right, Matrix::Identity(sd.rank(), sd.rank())),
                1e-12);
    }
  }
}

TEST(Schmidt, LocalUnitaryInvariance) {
  Rng rng = stream_rng(12);
  const Dims d{3, 4};
  for (int t = 0; t < 10; ++t) {
    const PureBipartiteState psi(d, haar_vector(d.total(), rng));
    const Matrix ua = haar_unitary(3, rng);
    const Matrix ub = haar_unitary(4, rng);
    Matrix u(12, 12);
    for (int p = 0; p < 3; ++p)
      for (int r = 0; r < 3; ++r) u.block(p * 4, r * 4, 4, 4) = ua(p, r) * ub;
    const PureBipartiteState rotated(d, u * psi.vector());
    const auto x = schmidt(psi), y = schmidt(rotated);
    ASSERT_EQ(x.rank(), y.rank());
    for (int q = 0; q < x.rank(); ++q) EXPECT_NEAR(x.coefficients[q], y.coefficients[q], 1e-12);
  }
}

TEST(Schmidt, MaxCoefficientMatchesRankOneF) {
  Rng rng = stream_rng(13);
  for (int t = 0; t < 10; ++t) {
    const PureBipartiteState psi({3, 3}, haar_vector(9, rng));
    const double m0 = schmidt(psi).coefficients[0];
    EXPECT_NEAR(f_ab(psi.projector()), m0 * m0, 1e-9);
  }
}
