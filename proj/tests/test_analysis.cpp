#include <gtest/gtest.h>

#include "liftlab/analysis.hpp"
#include "oracles.hpp"

using namespace liftlab;

namespace {

CMatrix scalar(double x) { return CMatrix::Constant(1, 1, Complex(x, 0)); }

LiftingDataSet scalar_ds(double a, double tp, double r, double q) {
  return LiftingDataSet::from_operators(scalar(a), scalar(tp), scalar(r), scalar(q));
}

}  // namespace

TEST(Uniqueness, ScalarIsometricTp) {
  const UniquenessReport r = uniqueness_report(scalar_ds(0, 1, 0, 0));
  EXPECT_TRUE(r.tp_isometry);
  EXPECT_TRUE(r.unique_interpolant_sufficient);
}

TEST(Uniqueness, ClassicalIsProper) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const UniquenessReport r = uniqueness_report(gen_classical({3, 3, 2}, s).ds);
    EXPECT_TRUE(r.classical_shape);
    EXPECT_TRUE(r.fap_full);
    EXPECT_TRUE(r.proper_param_sufficient);
  }
}

TEST(Uniqueness, ZeroScalarHasNoFlags) {
  const UniquenessReport r = uniqueness_report(scalar_ds(0, 0, 0, 0));
  EXPECT_FALSE(r.tp_isometry);
  EXPECT_FALSE(r.f_full);
  EXPECT_FALSE(r.fap_full);
  EXPECT_FALSE(r.fta_in_fp);
  EXPECT_FALSE(r.unique_interpolant_sufficient);
  EXPECT_FALSE(r.proper_param_sufficient);
}

TEST(Uniqueness, VerdictsAreTheDisjunctions) {
  Rng rng(1);
  for (int t = 0; t < 60; ++t) {
    const Dims d{rng.uniform_index(1, 4), rng.uniform_index(1, 4), rng.uniform_index(1, 4)};
    const UniquenessReport r = uniqueness_report(gen_random(d, rng.next_seed()).ds);
    EXPECT_EQ(r.unique_interpolant_sufficient, r.tp_isometry || r.f_full || r.fta_in_fp);
    EXPECT_EQ(r.proper_param_sufficient, r.f_full || r.fap_full);
    EXPECT_EQ(r.dim_f, r.dim_fp);
  }
}

TEST(Defect, ClassicalHasTrivialGBp) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Interpolant ip = solve_central(gen_classical({3, 3, 2}, s).ds, 32);
    const InterpolantDefectData d = interpolant_defect(ip);
    EXPECT_EQ(d.dim_gbp(), 0);
    EXPECT_TRUE(proper_param_check(ip));
  }
}

TEST(Defect, ZeroDataCentral) {
  const Interpolant ip = solve_central(scalar_ds(0, 0, 0, 0), 16);
  const InterpolantDefectData d = interpolant_defect(ip);
  EXPECT_NEAR(d.frames.d_b(0, 0).real(), 1.0, 1e-15);
  EXPECT_EQ(d.frames.frame_fb.dim(), 0);
  EXPECT_EQ(d.dim_gb(), 1);
  EXPECT_FALSE(proper_param_check(ip));
}

TEST(Defect, RandomInstancesHaveMatchingFrames) {
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    const Dims d{rng.uniform_index(1, 4), rng.uniform_index(1, 4), rng.uniform_index(1, 4)};
    const Interpolant ip = solve_central(gen_random(d, rng.next_seed()).ds, 32);
    const InterpolantDefectData dd = interpolant_defect(ip);
    EXPECT_EQ(dd.frames.frame_fb.dim(), dd.frames.frame_fbp.dim());
    const Index k = dd.omega_b.cols();
    EXPECT_LE(oracle::max_abs(dd.omega_b.adjoint() * dd.omega_b - CMatrix::Identity(k, k)), 1e-8);
    EXPECT_LE(dd.norm_identity_residual, 1e-8 + dd.frames.horizon_residual * 10);
  }
}

TEST(Defect, ProperParamFromFullF) {
  // A = 0 with Q invertible gives F = D_A = H.
  const LiftingDataSet ds = scalar_ds(0, 0, 0.5, 1);
  EXPECT_TRUE(uniqueness_report(ds).f_full);
  EXPECT_TRUE(proper_param_check(solve_central(ds, 16)));
}

TEST(HFromG, BlockStructure) {
  Rng rng(3);
  const Interpolant zero_ip = solve_central(scalar_ds(0, 0, 0, 0), 16);
  const InterpolantDefectData zd = interpolant_defect(zero_ip);
  // G ≡ 0 gives the constant diag(ω_B, 0).
  const TaylorSeries h0 = h_from_g(zd, Realization::constant(CMatrix::Zero(zd.dim_gbp(), zd.dim_gb())), 8);
  for (Index n = 1; n <= 8; ++n) EXPECT_EQ(oracle::max_abs(h0.coeffs[n]), 0.0);
  for (int t = 0; t < 30; ++t) {
    const Dims d{rng.uniform_index(1, 3), rng.uniform_index(1, 3), rng.uniform_index(1, 3)};
    const InterpolantDefectData dd = interpolant_defect(solve_central(gen_random(d, rng.next_seed()).ds, 32));
    const Index g = dd.dim_gb(), gp = dd.dim_gbp();
    const Realization G = random_contractive_realization(g, gp, g && gp ? 2 : 0, rng);
    const TaylorSeries h = h_from_g(dd, G, 32);
    const DefectFrames& f = dd.frames;
    EXPECT_LE(oracle::max_abs(h.coeffs[0] * f.frame_fb.basis - f.frame_fbp.basis * dd.omega_b), 1e-10);
    EXPECT_LE(max_eigenvalue(h.partial_gram()), 1 + 1e-8);
    if (g == 0) {
      for (Index n = 1; n <= 32; ++n) EXPECT_LE(oracle::max_abs(h.coeffs[n]), 1e-15);
    }
  }
}

TEST(HFromG, DimMismatch) {
  const InterpolantDefectData zd = interpolant_defect(solve_central(scalar_ds(0, 0, 0, 0), 8));
  try {
    h_from_g(zd, Realization::constant(CMatrix::Zero(zd.dim_gbp() + 1, zd.dim_gb())), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimMismatch);
  }
}

TEST(Collision, ScalarIsometricTpAllCollide) {
  const CollisionReport r = collision_experiment(scalar_ds(0, 1, 0, 0), 10, 4, 16);
  EXPECT_EQ(r.distinct_interpolants, 1);
  EXPECT_GT(r.distinct_parameters, 1);
  EXPECT_FALSE(r.inconsistent);
}

TEST(Collision, ClassicalHasNone) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CollisionReport r = collision_experiment(gen_classical({2, 2, 3}, s).ds, 20, s, 32);
    EXPECT_EQ(r.collision_pairs, 0);
    EXPECT_TRUE(r.proper_param);
    EXPECT_FALSE(r.inconsistent);
  }
}

TEST(Collision, ZeroScalarFiberOverZeroTheta) {
  // F = [0; 0; g] with varying g all give Γ ≡ 0.
  const LiftingDataSet ds = scalar_ds(0, 0, 0, 0);
  const OmegaData od = build_omega(ds);
  CMatrix e(3, 1);
  e << 0, 0, 1;
  std::vector<Realization> params;
  for (const double g : {0.0, 0.3, -0.5, 0.9}) {
    params.push_back(Realization::constant(od.frame_gp.basis.adjoint() * e * g * od.frame_g.basis.adjoint()));
  }
  const CollisionReport r = collision_experiment(ds, params, 16);
  EXPECT_EQ(r.distinct_parameters, 4);
  EXPECT_EQ(r.distinct_interpolants, 1);
  EXPECT_EQ(r.collision_pairs, 6);
  EXPECT_FALSE(r.proper_param);
  EXPECT_FALSE(r.inconsistent);
}

TEST(Collision, UniquenessFlagImpliesSingleInterpolant) {
  Rng rng(5);
  int fired = 0;
  for (int t = 0; t < 60; ++t) {
    const Dims d{rng.uniform_index(1, 3), rng.uniform_index(1, 3), rng.uniform_index(1, 3)};
    const LiftingDataSet ds = t % 2 ? gen_random(d, rng.next_seed()).ds : gen_classical({d.H, d.H, d.Hp}, rng.next_seed()).ds;
    if (!uniqueness_report(ds).unique_interpolant_sufficient) continue;
    ++fired;
    EXPECT_EQ(collision_experiment(ds, 10, rng.next_seed(), 16).distinct_interpolants, 1);
  }
  EXPECT_GT(fired, 0);
}
