#pragma once

#include <optional>
#include <vector>

#include "liftlab/numlin.hpp"

namespace liftlab {

/// State-space quadruple {Z, B, C, D} with transfer function
/// D + λ C (I - λZ)^{-1} B. The system matrix is laid out as [[D, C], [B, Z]].
struct Realization {
  CMatrix Z;  // X -> X
  CMatrix B;  // U -> X
  CMatrix C;  // X -> Y
  CMatrix D;  // U -> Y

  Index dim_U() const { return D.cols(); }
  Index dim_Y() const { return D.rows(); }
  Index dim_X() const { return Z.rows(); }

  CMatrix system_matrix() const;
  void check_shapes() const;

  static Realization from_system_matrix(const CMatrix& m, Index dim_U, Index dim_Y);
  /// Static gain D with a zero-dimensional state.
  static Realization constant(const CMatrix& d);
};

/// Power-series coefficients F_0..F_N of an operator-valued function.
struct TaylorSeries {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<CMatrix> coeffs;

  Index horizon() const { return static_cast<Index>(coeffs.size()) - 1; }
  /// Σ_{n<=upto} F_n* F_n.
  CMatrix partial_gram(Index upto) const;
  CMatrix partial_gram() const { return partial_gram(horizon()); }
  /// Truncated sum Σ λ^n F_n.
  CMatrix eval(Complex lambda) const;
  /// Largest coefficient-wise entry difference; infinity on shape mismatch.
  double max_difference(const TaylorSeries& other) const;
};

CMatrix eval_transfer(const Realization& r, Complex lambda);

/// Same function evaluated from the system matrix:
/// Π_Y M (I - λ J_X M)^{-1} Π_U^*.
CMatrix eval_transfer_system(const Realization& r, Complex lambda);

TaylorSeries taylor(const Realization& r, Index N);

/// Bound on Σ_{n>N} ||F_n||: ||C|| ||B|| ||Z||^N / (1 - ||Z||); infinity when
/// ||Z|| >= 1 - 1e-12.
double taylor_tail_bound(const Realization& r, Index N);

/// Bound on Σ_{n>N} ||F_n||^2 using ||Z^k||^{1/k} for the first k <= 64 with
/// ||Z^k|| < 1; infinity if none.
double gram_tail_bound(const Realization& r, Index N);

/// [B, ZB, ..., Z^{n-1}B], n = dim_X.
CMatrix controllability_matrix(const Realization& r);

bool controllable(const Realization& r, double rank_tol = kDefaultRankTol);

/// Whether U ⊕ {0} is cyclic for the system matrix M (requires dim_U = dim_Y).
bool cyclic_for_M(const Realization& r, double rank_tol = kDefaultRankTol);

/// Unitary W: X1 -> X2 with W Z1 = Z2 W, W B1 = B2, C2 W = C1, for two
/// controllable isometric realizations of the same transfer function.
/// Returns nullopt when the transfer functions differ.
std::optional<CMatrix> unitary_equivalence(const Realization& r1, const Realization& r2,
                                           double tol = kDefaultCheckTol);

/// A contraction γ: M -> E1 ⊕ M with M = E2 ⊕ X (E2 the leading coordinates)
/// viewed two ways: the feedback function Ξ(λ) = γ1 (I - λγ2)^{-1} Π_{E2}^*
/// and the realization F whose system matrix is γ re-blocked as
/// [[D1, C1], [D2, C2], [B, Z]].
class FeedbackPair {
 public:
  FeedbackPair(CMatrix gamma, Index dim_E1, Index dim_E2, double tol = kDefaultCheckTol);

  CMatrix xi(Complex lambda) const;
  const Realization& realization() const { return f_; }
  /// Π1 F(λ) (I - λ Π2 F(λ))^{-1}.
  CMatrix xi_from_realization(Complex lambda) const;
  double residual(Complex lambda) const;

 private:
  CMatrix gamma_;
  Index e1_;
  Index e2_;
  Realization f_;
};

struct CouplingReport {
  double max_residual = 0;
  bool y_isometric = false;
};

/// For a contraction Y = [Y1 Y2]: D' ⊕ M -> M, M = D ⊕ X, compares
/// Y1*(I - λY2*)^{-1} Π_D^* with Π' F(λ)(I - λΠ F(λ))^{-1}, where
/// F(λ) = Π_{D'⊕D} Y*(I - λ J'_X Y*)^{-1} Π_D^*.
CouplingReport coupling_identity(const CMatrix& Y, Index dim_Dp, Index dim_D,
                                 const std::vector<Complex>& grid, double tol = kDefaultCheckTol);

/// F(λ) from the displayed formula of coupling_identity (no realization).
CMatrix coupling_function(const CMatrix& Y, Index dim_Dp, Index dim_D, Complex lambda);

/// Parameter F: D_A -> D_∘ ⊕ D_T' ⊕ D_A as diag(ω, G(λ)) w.r.t. F ⊕ G -> F' ⊕ G',
/// rotated into ambient coordinates.
struct OmegaData;
Realization constrained_parameter(const OmegaData& od, const Realization& G, double tol = kDefaultCheckTol);

/// Generic form: diag(ω, G) between (f ⊕ g) and (fp ⊕ gp), ambient coordinates.
Realization block_parameter(const Frame& f, const Frame& fp, const CMatrix& omega, const Frame& g,
                            const Frame& gp, const Realization& G, double tol = kDefaultCheckTol);

}  // namespace liftlab
