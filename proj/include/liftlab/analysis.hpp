#pragma once

#include <cstdint>
#include <vector>

#include "liftlab/redheffer.hpp"

namespace liftlab {

/// Sufficient conditions for a unique interpolant or a proper parameterization.
struct UniquenessReport {
  bool tp_isometry = false;
  bool f_full = false;        // F = D_A
  bool fap_full = false;      // F_A' = D_∘ ⊕ D_A
  bool fta_in_fp = false;     // D_T' ⊕ D_A ⊆ F'
  bool classical_shape = false;

  Index dim_f = 0;
  Index dim_da = 0;
  Index dim_fp = 0;
  Index dim_target = 0;  // dim(D_∘ ⊕ D_T' ⊕ D_A)
  Index dim_fap = 0;
  Index dim_dcirc = 0;

  bool unique_interpolant_sufficient = false;  // tp_isometry ∨ f_full ∨ fta_in_fp
  bool proper_param_sufficient = false;        // f_full ∨ fap_full
};

UniquenessReport uniqueness_report(const LiftingDataSet& ds, const Tolerances& tol = {});

/// Frames attached to the defect of an interpolant:
/// F_B = closure(D_B Q H0) ⊆ H, F_B' = closure([D_∘; D_B R] H0) ⊆ H0 ⊕ H.
struct DefectFrames {
  CMatrix d_b;
  Frame frame_db;
  Frame frame_dcirc;
  Frame frame_fb;
  Frame frame_fbp;
  Frame frame_gb;   // D_B ⊖ F_B
  Frame frame_gbp;  // (D_∘ ⊕ D_B) ⊖ F_B'
  double horizon_residual = 0;  // ||Γ_N D_A R||^2, exact defect of the norm identity
  double tail_caveat = 0;       // bound on the Gram tail beyond N (inf if unbounded)
};

DefectFrames defect_frames(const Interpolant& ip, const Tolerances& tol = {});

struct InterpolantDefectData {
  DefectFrames frames;
  CMatrix omega_b;  // dim F_B' x dim F_B
  double omega_b_fit_residual = 0;
  double norm_identity_residual = 0;  // max over random h of | ||D_B Q h||^2 - ||(D_∘ h, D_B R h)||^2 |

  Index dim_gb() const { return frames.frame_gb.dim(); }
  Index dim_gbp() const { return frames.frame_gbp.dim(); }
};

/// Throws OmegaBNotIsometric when the truncated Gram is too coarse for ω_B to
/// be unitary within tol.check_tol.
InterpolantDefectData interpolant_defect(const Interpolant& ip, const Tolerances& tol = {},
                                         std::uint64_t probe_seed = 7);

/// F_B = D_B or F_B' = D_∘ ⊕ D_B.
bool proper_param_check(const Interpolant& ip, const Tolerances& tol = {});
bool proper_param_check(const DefectFrames& frames);

/// H(λ) = diag(ω_B, G(λ)) from F_B ⊕ G_B to F_B' ⊕ G_B', ambient coordinates
/// H -> H0 ⊕ H.
TaylorSeries h_from_g(const InterpolantDefectData& defect, const Realization& G, Index N,
                      double tol = kDefaultCheckTol);
Realization h_from_g_realization(const InterpolantDefectData& defect, const Realization& G,
                                 double tol = kDefaultCheckTol);

struct CollisionReport {
  Index n_params = 0;
  Index distinct_parameters = 0;
  Index distinct_interpolants = 0;
  Index collision_pairs = 0;  // pairs with distinct parameters but equal Γ
  bool proper_param = false;  // proper_param_check on the central interpolant
  bool inconsistent = false;  // proper_param && collision_pairs > 0
};

/// Groups interpolants produced by explicit free parameters.
CollisionReport collision_experiment(const LiftingDataSet& ds, const std::vector<Realization>& params, Index N,
                                     const Tolerances& tol = {});

/// Same with n_params seeded free parameters.
CollisionReport collision_experiment(const LiftingDataSet& ds, Index n_params, std::uint64_t seed,
                                     Index N = kDefaultTruncation, const Tolerances& tol = {});

}  // namespace liftlab
