#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liftlab/dataset.hpp"
#include "liftlab/realization.hpp"

namespace liftlab {

inline constexpr Index kDefaultTruncation = 32;

/// Coefficients of Π_top F(λ) (I - λ Π_fb F(λ))^{-1}.
///
/// With S(λ) = (I - λ Π_fb F(λ))^{-1} = Σ λ^m S_m we have S_0 = I and
/// S_m = Σ_{j=1}^{m} Π_fb F_{j-1} S_{m-j}; the output coefficients are
/// Γ_n = Σ_{k<=n} Π_top F_k S_{n-k}. `pi_top` and `pi_fb` are row selectors
/// applied to the coefficients of F.
TaylorSeries symbol_taylor(const TaylorSeries& F, const CMatrix& pi_top, const CMatrix& pi_fb, Index N);

/// Realization of λ ↦ Π_top F(λ)(I - λ Π_fb F(λ))^{-1} built from one of F:
/// state X ⊕ U with Z' = [[Z, B], [Π_fb C, Π_fb D]], B' = [B; Π_fb D],
/// C' = Π_top [C, D], D' = Π_top D.
Realization symbol_realization(const Realization& F, const CMatrix& pi_top, const CMatrix& pi_fb);

/// Direct pointwise evaluation of the same linear-fractional map.
CMatrix symbol_eval(const Realization& F, const CMatrix& pi_top, const CMatrix& pi_fb, Complex lambda);

struct ParameterDescriptor {
  enum class Kind { Central, Seeded, Explicit };
  Kind kind = Kind::Central;
  std::uint64_t seed = 0;          // Seeded
  std::optional<Realization> g;    // Explicit
};

/// A contractive interpolant B h = (A h, Σ λ^n Γ_n D_A h). Γ_n act on H and
/// take values in H' (ambient coordinates of D_A and D_T').
struct Interpolant {
  LiftingDataSet ds;
  CMatrix A;
  TaylorSeries gamma;
  Index N = 0;
  ParameterDescriptor parameter;
  std::optional<Realization> symbol;  // realization of Γ, when the parameter is known
};

struct VerificationReport {
  double residual_projection = 0;
  std::vector<double> residual_intertwine;  // r_0 .. r_N
  double max_residual = 0;
  double residual_scale = 1;                // max(1, ||D_A Q||)
  double gram_excess = 0;
  std::vector<double> partial_gram_max;     // λ_max of Σ_{k<=n} Γ_k*Γ_k
  bool pass = false;
};

/// Free parameter G: G -> G' drawn from a seed.
Realization seeded_parameter(const OmegaData& od, std::uint64_t seed);

Interpolant solve(const LiftingDataSet& ds, const Realization& G, Index N = kDefaultTruncation,
                  const Tolerances& tol = {});
Interpolant solve_central(const LiftingDataSet& ds, Index N = kDefaultTruncation, const Tolerances& tol = {});
Interpolant solve_seeded(const LiftingDataSet& ds, std::uint64_t seed, Index N = kDefaultTruncation,
                         const Tolerances& tol = {});

/// Re-derives the interpolant named by a descriptor (used after parsing).
Interpolant solve_descriptor(const LiftingDataSet& ds, const ParameterDescriptor& p, Index N,
                             const Tolerances& tol = {});

/// Checks Π_H' B = A and the coefficient form of V B R = B Q:
/// Γ_0 D_A Q = D_T' A R and Γ_{n+1} D_A Q = Γ_n D_A R, plus the partial Gram
/// bound Σ Γ_n*Γ_n <= I.
VerificationReport verify(const Interpolant& ip, double tol = kDefaultCheckTol,
                          std::optional<double> gram_tol = std::nullopt, const Tolerances& tols = {});

/// Interpolant for ds recovered from one for augment(ds): keep the H columns
/// and the H' rows of the augmented symbol.
Interpolant compress_augmented(const Interpolant& ip_aug, const LiftingDataSet& ds);

/// Θ(λ) = Π' F(λ) (I - λ Π F(λ))^{-1} for F: H -> H' ⊕ H.
TaylorSeries hball_theta(const TaylorSeries& F, Index dim_Hp, Index N);

}  // namespace liftlab
