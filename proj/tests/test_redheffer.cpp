#include <gtest/gtest.h>

#include "liftlab/redheffer.hpp"
#include "oracles.hpp"

using namespace liftlab;

namespace {

CMatrix scalar(double x) { return CMatrix::Constant(1, 1, Complex(x, 0)); }

LiftingDataSet scalar_ds(double a, double tp, double r, double q) {
  return LiftingDataSet::from_operators(scalar(a), scalar(tp), scalar(r), scalar(q));
}

TaylorSeries constant_series(const CMatrix& c, Index N) {
  TaylorSeries s{c.cols(), c.rows(), {c}};
  for (Index n = 1; n <= N; ++n) s.coeffs.push_back(CMatrix::Zero(c.rows(), c.cols()));
  return s;
}

std::vector<LiftingDataSet> random_corpus(int n, std::uint64_t seed) {
  std::vector<LiftingDataSet> out;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const Dims d{rng.uniform_index(1, 4), rng.uniform_index(1, 4), rng.uniform_index(1, 4)};
    out.push_back(gen_random(d, rng.next_seed()).ds);
  }
  return out;
}

}  // namespace

TEST(SymbolTaylor, ZeroParameter) {
  const TargetLayout lay({1, 2, 3});
  const TaylorSeries g = symbol_taylor(constant_series(CMatrix::Zero(6, 2), 5), lay.pi_tp(), lay.pi_a(), 5);
  for (const CMatrix& c : g.coeffs) EXPECT_EQ(max_abs(c), 0.0);
}

TEST(SymbolTaylor, GeometricScalar) {
  const TargetLayout lay({1, 1, 1});
  CMatrix f(3, 1);
  f << 0.0, 0.6, -0.7;
  const TaylorSeries g = symbol_taylor(constant_series(f, 20), lay.pi_tp(), lay.pi_a(), 20);
  for (Index n = 0; n <= 20; ++n) EXPECT_NEAR(std::abs(g.coeffs[n](0, 0) - 0.6 * std::pow(-0.7, n)), 0, 1e-15);
}

TEST(SymbolTaylor, ShapeMismatch) {
  const TargetLayout lay({1, 1, 1});
  try {
    symbol_taylor(constant_series(CMatrix::Zero(4, 1), 2), lay.pi_tp(), lay.pi_a(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(SymbolTaylor, MatchesDirectEvaluationAndRealization) {
  Rng rng(1);
  for (const auto& ds : random_corpus(30, 2)) {
    const OmegaData od = build_omega(ds);
    const Index g = od.frame_g.dim(), gp = od.frame_gp.dim();
    const Realization G = random_contractive_realization(g, gp, g && gp ? 2 : 0, rng);
    const Realization F = constrained_parameter(od, G);
    const TargetLayout lay(ds.dims);
    const TaylorSeries s = symbol_taylor(taylor(F, 32), lay.pi_tp(), lay.pi_a(), 32);
    for (const Complex l : {Complex(0.37), Complex(0.1, 0.3), Complex(-0.25), Complex(0, -0.4)}) {
      const CMatrix direct = oracle::lft(oracle::transfer(F, l), lay.pi_tp(), lay.pi_a(), l);
      EXPECT_LE(max_abs(s.eval(l) - direct), 1e-10);
      EXPECT_LE(max_abs(symbol_eval(F, lay.pi_tp(), lay.pi_a(), l) - direct), 1e-12);
    }
    const TaylorSeries viaR = taylor(symbol_realization(F, lay.pi_tp(), lay.pi_a()), 32);
    EXPECT_LE(s.max_difference(viaR), 1e-12);
  }
}

TEST(Solve, ZeroDataCentralIsZero) {
  const Interpolant ip = solve_central(scalar_ds(0, 0, 0, 0), 8);
  for (const CMatrix& c : ip.gamma.coeffs) EXPECT_EQ(max_abs(c), 0.0);
  EXPECT_TRUE(verify(ip).pass);
}

TEST(Solve, UnitScalarCentral) {
  const Interpolant ip = solve_central(scalar_ds(0, 0, 1, 1), 8);
  EXPECT_LE(std::abs(ip.gamma.coeffs[0](0, 0)), 1e-15);
  const VerificationReport r = verify(ip);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_residual, 1e-12);
}

TEST(Solve, ZeroParameterEqualsCentral) {
  for (const auto& ds : random_corpus(10, 3)) {
    const OmegaData od = build_omega(ds);
    const Interpolant a = solve_central(ds, 16);
    const Interpolant b = solve(ds, Realization::constant(CMatrix::Zero(od.frame_gp.dim(), od.frame_g.dim())), 16);
    EXPECT_EQ(a.gamma.max_difference(b.gamma), 0.0);
  }
}

TEST(Solve, ZeroDataUnitParameterGivesConstantOne) {
  const LiftingDataSet ds = scalar_ds(0, 0, 0, 0);
  const OmegaData od = build_omega(ds);
  ASSERT_EQ(od.frame_g.dim(), 1);
  ASSERT_EQ(od.frame_gp.dim(), 2);
  CMatrix e(3, 1);
  e << 0, 1, 0;  // the D_T' coordinate of the ambient target
  const CMatrix gd = od.frame_gp.basis.adjoint() * e * od.frame_g.basis.adjoint();
  const Interpolant ip = solve(ds, Realization::constant(gd), 8);
  EXPECT_NEAR(std::abs(ip.gamma.coeffs[0](0, 0) - 1.0), 0, 1e-15);
  for (Index n = 1; n <= 8; ++n) EXPECT_LE(std::abs(ip.gamma.coeffs[n](0, 0)), 1e-15);
  EXPECT_TRUE(verify(ip).pass);
}

TEST(Solve, RejectsNonContractiveParameter) {
  const LiftingDataSet ds = scalar_ds(0, 0, 0, 0);
  const OmegaData od = build_omega(ds);
  try {
    solve(ds, Realization::constant(CMatrix::Constant(2, 1, 2.0)), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotContraction);
  }
}

TEST(Verify, PerturbedGammaFails) {
  const LiftingDataSet ds = gen_random({2, 3, 2}, 4).ds;
  Interpolant ip = solve_central(ds, 8);
  ASSERT_TRUE(verify(ip).pass);
  const DefectOperators d = defect_operators(ds);
  CMatrix delta = CMatrix::Zero(2, 3);
  delta(0, 0) = 1e-3;
  ip.gamma.coeffs[0] += delta;
  const VerificationReport r = verify(ip);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.residual_intertwine[0], op_norm(delta * d.d_a * ds.Q), 1e-12);
}

TEST(Verify, CorpusCentralAndRandomParameters) {
  Rng rng(5);
  for (const auto& ds : random_corpus(25, 6)) {
    const Interpolant c = solve_central(ds, 32);
    const VerificationReport rc = verify(c, 1e-8, 1e-6);
    EXPECT_TRUE(rc.pass);
    EXPECT_LE(rc.residual_intertwine[0], 1e-10 * rc.residual_scale);
    for (int k = 0; k < 20; ++k) {
      const VerificationReport r = verify(solve_seeded(ds, rng.next_seed(), 32), 1e-8, 1e-6);
      EXPECT_TRUE(r.pass) << r.max_residual << " " << r.gram_excess;
      for (std::size_t n = 1; n < r.partial_gram_max.size(); ++n)
        EXPECT_GE(r.partial_gram_max[n], r.partial_gram_max[n - 1] - 1e-12);
    }
  }
}

TEST(Verify, ScalarUniquenessExampleIsBitwiseConstant) {
  const LiftingDataSet ds = scalar_ds(0, 1, 0, 0);
  const Interpolant first = solve_seeded(ds, 0, 16);
  // Γ lives in D_T' = {0}; in ambient H' coordinates every coefficient is exactly zero.
  EXPECT_EQ(defect_operators(ds).frame_dtp.dim(), 0);
  for (const CMatrix& c : first.gamma.coeffs) EXPECT_EQ(max_abs(c), 0.0);
  ASSERT_TRUE(verify(first).pass);
  for (std::uint64_t s = 1; s < 10; ++s) {
    const Interpolant ip = solve_seeded(ds, s, 16);
    EXPECT_EQ(ip.A, first.A);
    ASSERT_EQ(ip.gamma.coeffs.size(), first.gamma.coeffs.size());
    for (std::size_t n = 0; n < ip.gamma.coeffs.size(); ++n) EXPECT_EQ(ip.gamma.coeffs[n], first.gamma.coeffs[n]);
  }
}

TEST(Compress, IdentityWhenOrderIsTight) {
  const LiftingDataSet ds = gen_classical({2, 2, 2}, 7).ds;
  const AugmentedDataSet aug = augment(ds);
  const Interpolant ip = compress_augmented(solve_central(aug.ds, 8), ds);
  EXPECT_EQ(ip.gamma.dim_in, 2);
  EXPECT_EQ(ip.gamma.dim_out, 2);
  EXPECT_LE(ip.gamma.max_difference(solve_central(ds, 8).gamma), 1e-8);
}

TEST(Compress, ScalarHalfExample) {
  const LiftingDataSet ds = scalar_ds(0, 0, 0.5, 1);
  const Interpolant ip = compress_augmented(solve_central(augment(ds).ds, 32), ds);
  EXPECT_TRUE(verify(ip).pass);
}

TEST(Compress, RouteEquivalence) {
  for (const auto& ds : random_corpus(20, 8)) {
    const Interpolant direct = solve_central(ds, 32);
    const Interpolant route = compress_augmented(solve_central(augment(ds).ds, 32), ds);
    EXPECT_LE(direct.gamma.max_difference(route.gamma), 1e-8);
    EXPECT_TRUE(verify(route).pass);
  }
}

TEST(Compress, ShapeMismatch) {
  const LiftingDataSet ds = gen_random({2, 2, 2}, 9).ds;
  try {
    compress_augmented(solve_central(gen_random({2, 3, 2}, 10).ds, 4), ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(HballTheta, ConstantCases) {
  const auto check = [](double a, double b, double theta0) {
    CMatrix f(2, 1);
    f << a, b;
    const TaylorSeries t = hball_theta(constant_series(f, 10), 1, 10);
    EXPECT_EQ(t.coeffs[0](0, 0), Complex(theta0, 0));
    for (Index n = 1; n <= 10; ++n) EXPECT_EQ(t.coeffs[n](0, 0), Complex(0, 0));
  };
  check(0, 0, 0);
  check(1, 0, 1);
  check(0, 1, 0);
}

TEST(HballTheta, RandomSchurGramBound) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const Index h = rng.uniform_index(1, 3), hp = rng.uniform_index(1, 3);
    const Realization F = random_contractive_realization(h, hp + h, rng.uniform_index(0, 3), rng, 1.0);
    EXPECT_LE(max_eigenvalue(hball_theta(taylor(F, 32), hp, 32).partial_gram()), 1 + 1e-8);
  }
}
