#include "liftlab/realization.hpp"

#include <limits>

#include "liftlab/dataset.hpp"

namespace liftlab {

namespace {

void require_in_disk(Complex lambda) {
  if (!(std::abs(lambda) < 1)) throw Error(ErrorKind::InvalidArgument, "evaluation point must satisfy |λ| < 1");
}

// (I - λK)^{-1} rhs, SingularResolvent if the pencil is singular.
CMatrix resolvent_solve(const CMatrix& k, Complex lambda, const CMatrix& rhs) {
  if (k.rows() == 0) return rhs;
  const CMatrix pencil = CMatrix::Identity(k.rows(), k.cols()) - lambda * k;
  Eigen::FullPivLU<CMatrix> lu(pencil);
  if (!lu.isInvertible()) throw Error(ErrorKind::SingularResolvent, "I - λZ is singular");
  return lu.solve(rhs);
}

CMatrix leading_identity(Index rows, Index cols) {
  CMatrix e = CMatrix::Zero(rows, cols);
  e.topRows(cols).setIdentity();
  return e;
}

}  // namespace

CMatrix Realization::system_matrix() const {
  return vstack(hstack(D, C), hstack(B, Z));
}

void Realization::check_shapes() const {
  const Index x = Z.rows();
  if (Z.cols() != x || B.rows() != x || C.cols() != x || B.cols() != D.cols() || C.rows() != D.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "inconsistent realization blocks");
  }
}

Realization Realization::from_system_matrix(const CMatrix& m, Index dim_U, Index dim_Y) {
  const Index x = m.cols() - dim_U;
  if (x < 0 || m.rows() - dim_Y != x) throw Error(ErrorKind::ShapeMismatch, "system matrix blocks do not fit");
  return Realization{m.bottomRightCorner(x, x), m.bottomLeftCorner(x, dim_U), m.topRightCorner(dim_Y, x),
                     m.topLeftCorner(dim_Y, dim_U)};
}

Realization Realization::constant(const CMatrix& d) {
  return Realization{CMatrix(0, 0), CMatrix(0, d.cols()), CMatrix(d.rows(), 0), d};
}

CMatrix TaylorSeries::partial_gram(Index upto) const {
  CMatrix g = CMatrix::Zero(dim_in, dim_in);
  for (Index n = 0; n <= upto && n < static_cast<Index>(coeffs.size()); ++n) g += coeffs[n].adjoint() * coeffs[n];
  return g;
}

CMatrix TaylorSeries::eval(Complex lambda) const {
  CMatrix acc = CMatrix::Zero(dim_out, dim_in);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = lambda * acc + *it;
  return acc;
}

double TaylorSeries::max_difference(const TaylorSeries& other) const {
  if (dim_in != other.dim_in || dim_out != other.dim_out || coeffs.size() != other.coeffs.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double d = 0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) d = std::max(d, max_abs(coeffs[n] - other.coeffs[n]));
  return d;
}

CMatrix eval_transfer(const Realization& r, Complex lambda) {
  require_in_disk(lambda);
  if (r.dim_X() == 0) return r.D;
  return r.D + lambda * r.C * resolvent_solve(r.Z, lambda, r.B);
}

CMatrix eval_transfer_system(const Realization& r, Complex lambda) {
  require_in_disk(lambda);
  const Index u = r.dim_U(), y = r.dim_Y(), x = r.dim_X();
  const CMatrix m = r.system_matrix();
  CMatrix j = CMatrix::Zero(u + x, y + x);  // J_X: Y ⊕ X -> U ⊕ X
  j.bottomRightCorner(x, x).setIdentity();
  const CMatrix s = resolvent_solve(j * m, lambda, leading_identity(u + x, u));
  return (m * s).topRows(y);
}

TaylorSeries taylor(const Realization& r, Index N) {
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation");
  TaylorSeries ts{r.dim_U(), r.dim_Y(), {}};
  ts.coeffs.reserve(N + 1);
  ts.coeffs.push_back(r.D);
  CMatrix zb = r.B;
  for (Index n = 1; n <= N; ++n) {
    ts.coeffs.push_back(r.C * zb);
    zb = r.Z * zb;
  }
  return ts;
}

double taylor_tail_bound(const Realization& r, Index N) {
  if (r.dim_X() == 0) return 0;
  const double z = op_norm(r.Z);
  if (z >= 1 - 1e-12) return std::numeric_limits<double>::infinity();
  return op_norm(r.C) * op_norm(r.B) * std::pow(z, static_cast<double>(N)) / (1 - z);
}

double gram_tail_bound(const Realization& r, Index N) {
  if (r.dim_X() == 0) return 0;
  const double cb = op_norm(r.C) * op_norm(r.B);
  // ||Z^m|| <= c ρ^m with ρ = ||Z^k||^{1/k}, c = max_{j<k} ||Z^j|| / ρ^j.
  std::vector<double> powers{1.0};
  CMatrix zk = CMatrix::Identity(r.dim_X(), r.dim_X());
  for (Index k = 1; k <= 64; ++k) {
    zk = r.Z * zk;
    const double nk = op_norm(zk);
    if (nk == 0) {
      double sum = 0;  // nilpotent: only finitely many nonzero terms
      for (Index m = N; m < k; ++m) sum += powers[m] * powers[m];
      return cb * cb * sum;
    }
    if (nk < 1 - 1e-12) {
      const double rho = std::pow(nk, 1.0 / static_cast<double>(k));
      double c = 0;
      for (Index j = 0; j < k; ++j) c = std::max(c, powers[j] / std::pow(rho, static_cast<double>(j)));
      return cb * cb * c * c * std::pow(rho, 2.0 * static_cast<double>(N)) / (1 - rho * rho);
    }
    powers.push_back(nk);
  }
  return std::numeric_limits<double>::infinity();
}

CMatrix controllability_matrix(const Realization& r) {
  const Index x = r.dim_X(), u = r.dim_U();
  CMatrix k(x, u * x);
  CMatrix block = r.B;
  for (Index n = 0; n < x; ++n) {
    k.middleCols(n * u, u) = block;
    block = r.Z * block;
  }
  return k;
}

bool controllable(const Realization& r, double rank_tol) {
  r.check_shapes();
  if (r.dim_X() == 0) return true;
  return numerical_rank(controllability_matrix(r), rank_tol) == r.dim_X();
}

bool cyclic_for_M(const Realization& r, double rank_tol) {
  r.check_shapes();
  if (r.dim_U() != r.dim_Y()) throw Error(ErrorKind::DimMismatch, "cyclic_for_M requires dim U = dim Y");
  const Index u = r.dim_U();
  const Index n = u + r.dim_X();
  if (n == 0) return true;
  const CMatrix m = r.system_matrix();
  CMatrix krylov(n, u * n);
  CMatrix block = leading_identity(n, u);
  for (Index k = 0; k < n; ++k) {
    krylov.middleCols(k * u, u) = block;
    block = m * block;
  }
  return numerical_rank(krylov, rank_tol) == n;
}

std::optional<CMatrix> unitary_equivalence(const Realization& r1, const Realization& r2, double tol) {
  r1.check_shapes();
  r2.check_shapes();
  if (r1.dim_U() != r2.dim_U() || r1.dim_Y() != r2.dim_Y()) {
    throw Error(ErrorKind::DimMismatch, "realizations have different input/output spaces");
  }
  for (const Realization* r : {&r1, &r2}) {
    if (!classify(r->system_matrix(), tol).is_isometry) throw Error(ErrorKind::NotIsometric, "system matrix");
    if (!controllable(*r)) throw Error(ErrorKind::NotControllable, "pair {Z, B}");
  }
  if (r1.dim_X() != r2.dim_X()) return std::nullopt;
  if (op_norm(r1.D - r2.D) > tol) return std::nullopt;
  for (int k = 0; k < 8; ++k) {
    const Complex lambda = std::polar(0.5, 2 * M_PI * k / 8.0);
    if (op_norm(eval_transfer(r1, lambda) - eval_transfer(r2, lambda)) > tol) return std::nullopt;
  }

  // W K1 = K2 on the controllability span, which is all of X1.
  const CMatrix k1 = controllability_matrix(r1);
  const CMatrix k2 = controllability_matrix(r2);
  const Index x = r1.dim_X();
  CMatrix w;
  if (x == 0) {
    w = CMatrix(0, 0);
  } else {
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(k1.adjoint());
    w = cod.solve(k2.adjoint()).adjoint();
  }
  const double scale = std::max(1.0, op_norm(k1));
  const bool intertwines = op_norm(w * r1.Z - r2.Z * w) <= tol * scale && op_norm(w * r1.B - r2.B) <= tol * scale &&
                           op_norm(r2.C * w - r1.C) <= tol * scale;
  if (!intertwines || !classify(w, tol).is_unitary) return std::nullopt;
  return w;
}

FeedbackPair::FeedbackPair(CMatrix gamma, Index dim_E1, Index dim_E2, double tol)
    : gamma_(std::move(gamma)), e1_(dim_E1), e2_(dim_E2) {
  const Index m = gamma_.cols();
  if (gamma_.rows() != e1_ + m || e2_ > m || e1_ < 0 || e2_ < 0) {
    throw Error(ErrorKind::ShapeMismatch, "γ must map M into E1 ⊕ M with E2 ⊆ M");
  }
  if (op_norm(gamma_) > 1 + tol) throw Error(ErrorKind::NotContraction, "γ");
  const Index x = m - e2_;
  const Index top = e1_ + e2_;
  f_ = Realization{gamma_.block(top, e2_, x, x), gamma_.block(top, 0, x, e2_), gamma_.block(0, e2_, top, x),
                   gamma_.block(0, 0, top, e2_)};
}

CMatrix FeedbackPair::xi(Complex lambda) const {
  require_in_disk(lambda);
  const Index m = gamma_.cols();
  const CMatrix g1 = gamma_.topRows(e1_);
  const CMatrix g2 = gamma_.bottomRows(m);
  return g1 * resolvent_solve(g2, lambda, leading_identity(m, e2_));
}

CMatrix FeedbackPair::xi_from_realization(Complex lambda) const {
  const CMatrix f = eval_transfer(f_, lambda);
  const CMatrix pi1f = f.topRows(e1_);
  const CMatrix pi2f = f.bottomRows(e2_);
  return pi1f * resolvent_solve(pi2f, lambda, CMatrix::Identity(e2_, e2_));
}

double FeedbackPair::residual(Complex lambda) const { return max_abs(xi(lambda) - xi_from_realization(lambda)); }

CMatrix coupling_function(const CMatrix& Y, Index dim_Dp, Index dim_D, Complex lambda) {
  require_in_disk(lambda);
  const Index m = Y.rows();
  if (Y.cols() != dim_Dp + m || dim_D > m) throw Error(ErrorKind::ShapeMismatch, "Y must map D' ⊕ M into M");
  const Index x = m - dim_D;
  const CMatrix ys = Y.adjoint();  // M -> D' ⊕ M
  CMatrix j = CMatrix::Zero(m, dim_Dp + m);  // J'_X(d' ⊕ m) = Π_X m
  j.bottomRightCorner(x, x).setIdentity();
  const CMatrix s = resolvent_solve(j * ys, lambda, leading_identity(m, dim_D));
  return (ys * s).topRows(dim_Dp + dim_D);
}

CouplingReport coupling_identity(const CMatrix& Y, Index dim_Dp, Index dim_D, const std::vector<Complex>& grid,
                                 double tol) {
  const Index m = Y.rows();
  if (Y.cols() != dim_Dp + m || dim_D > m) throw Error(ErrorKind::ShapeMismatch, "Y must map D' ⊕ M into M");
  if (op_norm(Y) > 1 + tol) throw Error(ErrorKind::NotContraction, "Y");
  CouplingReport rep;
  rep.y_isometric = classify(Y, tol).is_isometry;
  const CMatrix y1s = Y.leftCols(dim_Dp).adjoint();
  const CMatrix y2s = Y.rightCols(m).adjoint();
  for (const Complex lambda : grid) {
    const CMatrix lhs = y1s * resolvent_solve(y2s, lambda, leading_identity(m, dim_D));
    const CMatrix f = coupling_function(Y, dim_Dp, dim_D, lambda);
    const CMatrix rhs = f.topRows(dim_Dp) * resolvent_solve(f.bottomRows(dim_D), lambda,
                                                            CMatrix::Identity(dim_D, dim_D));
    rep.max_residual = std::max(rep.max_residual, max_abs(lhs - rhs));
  }
  return rep;
}

Realization block_parameter(const Frame& f, const Frame& fp, const CMatrix& omega, const Frame& g, const Frame& gp,
                            const Realization& G, double tol) {
  G.check_shapes();
  if (G.dim_U() != g.dim() || G.dim_Y() != gp.dim()) {
    throw Error(ErrorKind::DimMismatch, "free parameter must map a " + std::to_string(g.dim()) +
                                            "-dim space into a " + std::to_string(gp.dim()) + "-dim space");
  }
  if (omega.rows() != fp.dim() || omega.cols() != f.dim()) throw Error(ErrorKind::DimMismatch, "ω shape");
  if (op_norm(G.system_matrix()) > 1 + tol) throw Error(ErrorKind::NotContraction, "free parameter system matrix");
  Realization out;
  out.Z = G.Z;
  out.B = G.B * g.basis.adjoint();
  out.C = gp.basis * G.C;
  out.D = fp.basis * omega * f.basis.adjoint() + gp.basis * G.D * g.basis.adjoint();
  return out;
}

Realization constrained_parameter(const OmegaData& od, const Realization& G, double tol) {
  return block_parameter(od.frame_f, od.frame_fp, od.omega, od.frame_g, od.frame_gp, G, tol);
}

}  // namespace liftlab
