#pragma once

#include <cstdint>

#include "liftlab/numlin.hpp"
#include "liftlab/random.hpp"

namespace liftlab {

struct Dims {
  Index H0 = 0;
  Index H = 0;
  Index Hp = 0;
};

/// Lifting data {A, T', R, Q}: A: H -> H', T' on H', R, Q: H0 -> H, with
/// T'AR = AQ and R*R <= Q*Q. The minimal isometric lifting of T' is always
/// the canonical one and is never stored.
struct LiftingDataSet {
  Dims dims;
  CMatrix A;
  CMatrix Tp;
  CMatrix R;
  CMatrix Q;

  /// Infers dims from the operator shapes; throws ShapeMismatch if they disagree.
  static LiftingDataSet from_operators(CMatrix A, CMatrix Tp, CMatrix R, CMatrix Q);
  void check_shapes() const;
};

struct ValidationReport {
  double residual_intertwine = 0;  // ||T'AR - AQ||
  double min_eig_order = 0;        // lambda_min(Q*Q - R*R)
  double norm_A = 0;
  double norm_Tp = 0;
  bool pass_A = false;
  bool pass_Tp = false;
  bool pass_intertwine = false;
  bool pass_order = false;
  bool pass = false;
};

ValidationReport validate(const LiftingDataSet& ds, double tol = kDefaultCheckTol);

/// Defect operators D_A, D_T', D_∘ and frames of their ranges.
struct DefectOperators {
  CMatrix d_a;     // on H
  CMatrix d_tp;    // on H'
  CMatrix d_circ;  // on H0, (Q*Q - R*R)^{1/2}
  Frame frame_da;
  Frame frame_dtp;
  Frame frame_dcirc;
};

DefectOperators defect_operators(const LiftingDataSet& ds, const Tolerances& tol = {});

/// Row layout of the target space D_∘ ⊕ D_T' ⊕ D_A, embedded in H0 ⊕ H' ⊕ H.
struct TargetLayout {
  Index h0 = 0;
  Index hp = 0;
  Index h = 0;

  explicit TargetLayout(const Dims& d) : h0(d.H0), hp(d.Hp), h(d.H) {}
  Index size() const { return h0 + hp + h; }
  Index tp_offset() const { return h0; }
  Index a_offset() const { return h0 + hp; }
  /// Coordinate projections onto the H' and H blocks.
  CMatrix pi_tp() const;
  CMatrix pi_a() const;
  CMatrix pi_circ() const;
};

/// The unitary ω: F -> F' determined by ω(D_A Q h) = (D_∘ h, D_T' A R h, D_A R h),
/// together with the frames that carry it and their complements G, G'.
struct OmegaData {
  Frame frame_f;       // F ⊆ H
  Frame frame_fp;      // F' ⊆ H0 ⊕ H' ⊕ H
  CMatrix omega;       // dim F' x dim F, unitary
  DefectOperators defects;
  Frame frame_target;  // D_∘ ⊕ D_T' ⊕ D_A
  Frame frame_g;       // D_A ⊖ F
  Frame frame_gp;      // (D_∘ ⊕ D_T' ⊕ D_A) ⊖ F'
  double fit_residual = 0;     // ||ω Xc - Yc||
  double unitary_residual = 0; // max(||ω*ω - I||, ||ωω* - I||)

  /// ω Π_F as an operator H -> H0 ⊕ H' ⊕ H.
  CMatrix omega_ambient() const { return frame_fp.basis * omega * frame_f.basis.adjoint(); }
};

/// Stacked operator [D_∘; D_T' A R; D_A R]: H0 -> H0 ⊕ H' ⊕ H.
CMatrix stacked_image(const LiftingDataSet& ds, const DefectOperators& d);

OmegaData build_omega(const LiftingDataSet& ds, const Tolerances& tol = {});

/// F_A' = closure of [D_∘; D_A R] H0 inside H0 ⊕ H.
Frame f_a_prime(const LiftingDataSet& ds, const Tolerances& tol = {});

struct AugmentedDataSet {
  LiftingDataSet ds;
  Index dim_dcirc = 0;  // number of appended D_∘ coordinates
};

/// {A_∘, T'_∘, R_∘, Q_∘} on H ⊕ D_∘ and H' ⊕ D_∘, in D_∘ frame coordinates.
/// Satisfies R_∘*R_∘ = Q_∘*Q_∘.
AugmentedDataSet augment(const LiftingDataSet& ds, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Corpus generation
// ---------------------------------------------------------------------------

struct GeneratedDataSet {
  LiftingDataSet ds;
  bool degenerate_A = false;  // null space of the constraint was trivial, A = 0
};

/// Random element of the null space of X -> T'XR - XQ scaled to ||X|| = 1;
/// zero (and degenerate = true) when the null space is trivial.
CMatrix random_intertwiner(const CMatrix& Tp, const CMatrix& R, const CMatrix& Q, Rng& rng,
                           bool* degenerate = nullptr);

/// Classical instance: H0 = H, R = I, Q unitary.
GeneratedDataSet gen_classical(const Dims& dims, std::uint64_t seed);

/// General instance with R = u K Q, K a random contraction, so R*R <= Q*Q.
GeneratedDataSet gen_random(const Dims& dims, std::uint64_t seed);

LiftingDataSet zero_dataset(const Dims& dims);

}  // namespace liftlab
