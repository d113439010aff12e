#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace liftlab {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultCheckTol = 1e-8;
inline constexpr double kDefaultPsdTol = 1e-12;

/// Numerical thresholds shared by every module.
struct Tolerances {
  double rank_tol = kDefaultRankTol;    // relative singular-value cut for ranges
  double check_tol = kDefaultCheckTol;  // residual threshold for pass/fail checks
  double psd_tol = kDefaultPsdTol;      // eigenvalue clamp inside psd_sqrt
};

enum class ErrorKind {
  NotHermitian,
  IndefiniteBeyondTolerance,
  NotContraction,
  NotIsometric,
  NotControllable,
  ShapeMismatch,
  DimMismatch,
  SingularResolvent,
  OmegaNotIsometric,
  OmegaBNotIsometric,
  InvalidArgument,
  Schema,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Norms and predicates
// ---------------------------------------------------------------------------

/// Largest singular value; zero for empty matrices.
template <typename Derived>
typename Derived::RealScalar op_norm(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  return svd.singularValues()(0);
}

/// Largest entry magnitude; zero for empty matrices.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

struct OperatorClass {
  bool is_contraction = false;
  bool is_isometry = false;
  bool is_coisometry = false;
  bool is_unitary = false;
  double op_norm = 0;
};

template <typename Derived>
OperatorClass classify(const Eigen::MatrixBase<Derived>& m, double tol = kDefaultCheckTol) {
  using Plain = typename Derived::PlainObject;
  OperatorClass c;
  c.op_norm = static_cast<double>(op_norm(m));
  c.is_contraction = c.op_norm <= 1 + tol;
  const Plain gram = m.adjoint() * m;
  const Plain cogram = m * m.adjoint();
  c.is_isometry = op_norm(gram - Plain::Identity(m.cols(), m.cols())) <= tol;
  c.is_coisometry = op_norm(cogram - Plain::Identity(m.rows(), m.rows())) <= tol;
  c.is_unitary = c.is_isometry && c.is_coisometry;
  return c;
}

// ---------------------------------------------------------------------------
// Square roots and defect operators
// ---------------------------------------------------------------------------

/// Positive square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues within [-tol, tol] (scaled by max(1, max|P_ij|)) are treated as
/// exact zeros; anything below -tol is rejected. The result is Hermitian with
/// S*S = P up to the clamp.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& p,
                                       double tol = kDefaultPsdTol) {
  using Plain = typename Derived::PlainObject;
  using Real = typename Derived::RealScalar;
  if (p.rows() != p.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "psd_sqrt expects a square matrix");
  }
  const Index n = p.rows();
  if (n == 0) return Plain(0, 0);
  const Real scale = std::max<Real>(1, max_abs(p));
  const Real cut = static_cast<Real>(tol) * scale;
  if (max_abs(p - p.adjoint()) > cut) {
    throw Error(ErrorKind::NotHermitian, "psd_sqrt input is not Hermitian within tolerance");
  }
  const Plain h = (p + p.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Plain> eig(h);
  const auto& mu = eig.eigenvalues();
  if (mu.minCoeff() < -cut) {
    throw Error(ErrorKind::IndefiniteBeyondTolerance,
                "psd_sqrt input has eigenvalue " + std::to_string(static_cast<double>(mu.minCoeff())));
  }
  const Eigen::Matrix<Real, Eigen::Dynamic, 1> s =
      mu.unaryExpr([cut](Real x) { return x <= cut ? Real(0) : std::sqrt(x); });
  return eig.eigenvectors() * s.asDiagonal() * eig.eigenvectors().adjoint();
}

/// D_C = (I - C*C)^{1/2}.
template <typename Derived>
typename Derived::PlainObject defect(const Eigen::MatrixBase<Derived>& c,
                                     double contraction_tol = kDefaultCheckTol,
                                     double psd_tol = kDefaultPsdTol) {
  using Plain = typename Derived::PlainObject;
  const double norm = static_cast<double>(op_norm(c));
  if (norm > 1 + contraction_tol) {
    throw Error(ErrorKind::NotContraction, "defect of an operator with norm > 1");
  }
  const Plain gap = Plain::Identity(c.cols(), c.cols()) - c.adjoint() * c;
  // Inputs admitted by contraction_tol may be slightly expansive.
  const double clamp = norm > 1 ? std::max(psd_tol, 3 * (norm - 1)) : psd_tol;
  return psd_sqrt(gap, clamp);
}

// ---------------------------------------------------------------------------
// Frames: orthonormal bases of subspaces
// ---------------------------------------------------------------------------

struct Frame {
  Index ambient_dim = 0;
  CMatrix basis;  // ambient_dim x k, orthonormal columns
  double rank_tol = kDefaultRankTol;

  Index dim() const { return basis.cols(); }
  bool full() const { return dim() == ambient_dim; }
  CMatrix projector() const { return basis * basis.adjoint(); }
  /// Coordinates of ambient vectors w.r.t. the frame.
  CMatrix coordinates(const CMatrix& x) const { return basis.adjoint() * x; }
  /// Largest distance from a column of x to the subspace.
  double distance(const CMatrix& x) const;

  static Frame empty(Index ambient_dim);
  static Frame whole(Index ambient_dim);
};

/// Orthonormal basis of the column space, singular values cut at
/// rank_tol * max(sigma_max, 1). Columns ordered by descending singular value,
/// phase fixed so the first nonzero entry of each right singular vector is
/// real positive.
Frame range_frame(const CMatrix& m, double rank_tol = kDefaultRankTol);

/// whole ⊖ sub, assuming sub lies inside whole up to round-off.
Frame orthogonal_complement(const Frame& whole, const Frame& sub);

/// Direct sum a ⊕ b in the stacked ambient space.
Frame direct_sum(const Frame& a, const Frame& b);

CMatrix block_diag(const CMatrix& a, const CMatrix& b);
CMatrix vstack(const CMatrix& top, const CMatrix& bottom);
CMatrix hstack(const CMatrix& left, const CMatrix& right);

/// Numerical rank at the range_frame cut.
Index numerical_rank(const CMatrix& m, double rank_tol = kDefaultRankTol);

/// Largest eigenvalue of a Hermitian matrix (0 for empty).
double max_eigenvalue(const CMatrix& hermitian);
double min_eigenvalue(const CMatrix& hermitian);

/// Nearest unitary factor of m (polar decomposition), m square.
CMatrix polar_unitary(const CMatrix& m);

/// Orthonormal basis of the null space, singular values cut as in range_frame.
CMatrix null_space(const CMatrix& m, double rank_tol = kDefaultRankTol);

}  // namespace liftlab
