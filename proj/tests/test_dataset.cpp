#include <gtest/gtest.h>

#include "liftlab/dataset.hpp"
#include "oracles.hpp"

using namespace liftlab;

namespace {

CMatrix scalar(double x) { return CMatrix::Constant(1, 1, Complex(x, 0)); }

LiftingDataSet scalar_ds(double a, double tp, double r, double q) {
  return LiftingDataSet::from_operators(scalar(a), scalar(tp), scalar(r), scalar(q));
}

std::vector<LiftingDataSet> corpus(int n, std::uint64_t seed) {
  std::vector<LiftingDataSet> out;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    Dims d{rng.uniform_index(1, 5), rng.uniform_index(1, 5), rng.uniform_index(1, 5)};
    if (i % 2 == 0) {
      d.H0 = d.H;
      out.push_back(gen_classical(d, rng.next_seed()).ds);
    } else {
      out.push_back(gen_random(d, rng.next_seed()).ds);
    }
  }
  return out;
}

}  // namespace

TEST(Validate, ZeroDataPasses) {
  const ValidationReport r = validate(zero_dataset({2, 3, 1}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.residual_intertwine, 0.0);
}

TEST(Validate, OrderViolationFails) {
  const ValidationReport r = validate(scalar_ds(0, 0, 1, 0));
  EXPECT_FALSE(r.pass_order);
  EXPECT_FALSE(r.pass);
}

TEST(Validate, ShapeMismatchThrows) {
  LiftingDataSet ds = zero_dataset({1, 2, 2});
  ds.A = CMatrix::Zero(3, 2);
  try {
    validate(ds);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(Validate, GeneratedCorpusPassesTightly) {
  for (const auto& ds : corpus(200, 1)) {
    const ValidationReport r = validate(ds, 1e-10);
    EXPECT_TRUE(r.pass) << r.residual_intertwine << " " << r.min_eig_order;
  }
}

TEST(Generators, ClassicalShape) {
  const GeneratedDataSet g = gen_classical({3, 3, 3}, 9);
  EXPECT_LE(oracle::max_abs(g.ds.R - CMatrix::Identity(3, 3)), 0.0);
  EXPECT_TRUE(classify(g.ds.Q, 1e-12).is_unitary);
  EXPECT_LE(oracle::norm2(g.ds.A), 1 + 1e-12);
  EXPECT_LE(oracle::max_abs(oracle::sylvester_residual(g.ds.Tp, g.ds.A, g.ds.R, g.ds.Q)), 1e-12);
  try {
    gen_classical({2, 3, 1}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Generators, IntertwinerExamples) {
  Rng rng(2);
  // T' = I, Q = I: every X qualifies, so the draw is a full-rank generic matrix.
  bool degenerate = true;
  const CMatrix a = random_intertwiner(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2), CMatrix::Identity(2, 2), rng,
                                       &degenerate);
  EXPECT_FALSE(degenerate);
  EXPECT_NEAR(op_norm(a), 1.0, 1e-12);
  // T' = 0, Q unitary: AQ = 0 forces A = 0.
  const CMatrix z = random_intertwiner(CMatrix::Zero(2, 2), CMatrix::Identity(2, 2), random_unitary(2, rng), rng,
                                       &degenerate);
  EXPECT_TRUE(degenerate);
  EXPECT_EQ(oracle::max_abs(z), 0.0);
}

TEST(Generators, Deterministic) {
  const auto a = gen_random({2, 3, 2}, 77).ds, b = gen_random({2, 3, 2}, 77).ds;
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.R, b.R);
  EXPECT_EQ(a.Q, b.Q);
  EXPECT_EQ(a.Tp, b.Tp);
}

TEST(Generators, SmallestRandomValidates) {
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(validate(gen_random({1, 1, 1}, s).ds).pass);
}

TEST(Omega, ZeroScalarDataHasEmptyFrames) {
  const OmegaData od = build_omega(scalar_ds(0, 0, 0, 0));
  EXPECT_EQ(od.frame_f.dim(), 0);
  EXPECT_EQ(od.frame_fp.dim(), 0);
  EXPECT_EQ(od.omega.size(), 0);
}

TEST(Omega, UnitScalarExample) {
  const OmegaData od = build_omega(scalar_ds(0, 0, 1, 1));
  EXPECT_NEAR(od.defects.d_a(0, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(od.defects.frame_dcirc.dim(), 0);
  ASSERT_EQ(od.frame_f.dim(), 1);
  // ω sends 1 to (0, 0, 1) in D_∘ ⊕ D_T' ⊕ D_A.
  const CMatrix image = od.omega_ambient() * scalar(1);
  EXPECT_LE(std::abs(image(0, 0)) + std::abs(image(1, 0)), 1e-15);
  EXPECT_NEAR(std::abs(image(2, 0)), 1.0, 1e-15);
}

TEST(Omega, UnitaryAndNormIdentityOnCorpus) {
  Rng probe(5);
  for (const auto& ds : corpus(60, 2)) {
    const OmegaData od = build_omega(ds);
    const Index k = od.omega.cols();
    ASSERT_EQ(od.frame_f.dim(), od.frame_fp.dim());
    EXPECT_LE(oracle::max_abs(od.omega.adjoint() * od.omega - CMatrix::Identity(k, k)), 1e-8);
    EXPECT_LE(oracle::max_abs(od.omega * od.omega.adjoint() - CMatrix::Identity(k, k)), 1e-8);
    const CMatrix source = od.defects.d_a * ds.Q;
    const CMatrix image = stacked_image(ds, od.defects);
    for (int i = 0; i < 20; ++i) {
      const CMatrix h = random_gaussian(ds.dims.H0, 1, probe);
      EXPECT_LE(oracle::max_abs(od.omega_ambient() * source * h - image * h), 1e-8 * std::max(1.0, h.norm()));
      const double lhs = (source * h).squaredNorm();
      const double rhs = (od.defects.d_circ * h).squaredNorm() + (od.defects.d_tp * ds.A * ds.R * h).squaredNorm() +
                         (od.defects.d_a * ds.R * h).squaredNorm();
      EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, h.squaredNorm()));
    }
  }
}

TEST(FAPrime, Examples) {
  // Classical: D_∘ = 0 and F_A' is all of D_A.
  const LiftingDataSet c = gen_classical({3, 3, 2}, 4).ds;
  const DefectOperators d = defect_operators(c);
  EXPECT_EQ(f_a_prime(c).dim(), d.frame_da.dim() + d.frame_dcirc.dim());
  // R = 0: F_A' = closure(D_∘ H0) ⊕ 0.
  LiftingDataSet r0 = gen_random({2, 3, 2}, 6).ds;
  r0.R.setZero();
  Rng ar(1);
  r0.A = random_intertwiner(r0.Tp, r0.R, r0.Q, ar);
  const Frame f = f_a_prime(r0);
  EXPECT_EQ(f.dim(), defect_operators(r0).frame_dcirc.dim());
  EXPECT_LE(oracle::max_abs(f.basis.bottomRows(3)), 1e-12);
}

TEST(Augment, ScalarExample) {
  const AugmentedDataSet aug = augment(scalar_ds(0, 0, 0.5, 1));
  ASSERT_EQ(aug.dim_dcirc, 1);
  EXPECT_NEAR(aug.ds.R(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(aug.ds.R(1, 0)), std::sqrt(0.75), 1e-15);
  EXPECT_NEAR(aug.ds.Q(0, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(aug.ds.Q(1, 0), Complex(0, 0));
}

TEST(Augment, IdentityOnShapesWhenOrderIsTight) {
  const LiftingDataSet ds = gen_classical({2, 2, 3}, 8).ds;
  const AugmentedDataSet aug = augment(ds);
  EXPECT_EQ(aug.dim_dcirc, 0);
  EXPECT_EQ(aug.ds.dims.H, ds.dims.H);
  EXPECT_EQ(aug.ds.dims.Hp, ds.dims.Hp);
}

TEST(Augment, AlgebraicIdentitiesOnCorpus) {
  for (const auto& ds : corpus(100, 3)) {
    const LiftingDataSet a = augment(ds).ds;
    EXPECT_LE(op_norm(a.R.adjoint() * a.R - a.Q.adjoint() * a.Q), 1e-12);
    EXPECT_LE(op_norm(a.Tp * a.A * a.R - a.A * a.Q), 1e-12);
    EXPECT_TRUE(validate(a).pass);
  }
}
