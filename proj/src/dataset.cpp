#include "liftlab/dataset.hpp"

#include <Eigen/Eigenvalues>

namespace liftlab {

LiftingDataSet LiftingDataSet::from_operators(CMatrix A, CMatrix Tp, CMatrix R, CMatrix Q) {
  LiftingDataSet ds;
  ds.dims = Dims{R.cols(), A.cols(), A.rows()};
  ds.A = std::move(A);
  ds.Tp = std::move(Tp);
  ds.R = std::move(R);
  ds.Q = std::move(Q);
  ds.check_shapes();
  return ds;
}

void LiftingDataSet::check_shapes() const {
  const auto expect = [](const CMatrix& m, Index r, Index c, const char* name) {
    if (m.rows() != r || m.cols() != c) {
      throw Error(ErrorKind::ShapeMismatch, std::string(name) + " is " + std::to_string(m.rows()) + "x" +
                                                std::to_string(m.cols()) + ", expected " + std::to_string(r) +
                                                "x" + std::to_string(c));
    }
  };
  expect(A, dims.Hp, dims.H, "A");
  expect(Tp, dims.Hp, dims.Hp, "Tp");
  expect(R, dims.H, dims.H0, "R");
  expect(Q, dims.H, dims.H0, "Q");
}

ValidationReport validate(const LiftingDataSet& ds, double tol) {
  ds.check_shapes();
  ValidationReport rep;
  rep.norm_A = op_norm(ds.A);
  rep.norm_Tp = op_norm(ds.Tp);
  rep.residual_intertwine = op_norm(ds.Tp * ds.A * ds.R - ds.A * ds.Q);
  const CMatrix order = ds.Q.adjoint() * ds.Q - ds.R.adjoint() * ds.R;
  rep.min_eig_order = min_eigenvalue((order + order.adjoint()) / 2.0);

  const double q_scale = std::max(1.0, op_norm(ds.Q));
  rep.pass_A = rep.norm_A <= 1 + tol;
  rep.pass_Tp = rep.norm_Tp <= 1 + tol;
  rep.pass_intertwine = rep.residual_intertwine <= tol * q_scale;
  rep.pass_order = rep.min_eig_order >= -tol * q_scale * q_scale;
  rep.pass = rep.pass_A && rep.pass_Tp && rep.pass_intertwine && rep.pass_order;
  return rep;
}

DefectOperators defect_operators(const LiftingDataSet& ds, const Tolerances& tol) {
  ds.check_shapes();
  DefectOperators d;
  d.d_a = defect(ds.A, tol.check_tol, tol.psd_tol);
  d.d_tp = defect(ds.Tp, tol.check_tol, tol.psd_tol);
  d.d_circ = psd_sqrt(CMatrix(ds.Q.adjoint() * ds.Q - ds.R.adjoint() * ds.R), tol.psd_tol);
  d.frame_da = range_frame(d.d_a, tol.rank_tol);
  d.frame_dtp = range_frame(d.d_tp, tol.rank_tol);
  d.frame_dcirc = range_frame(d.d_circ, tol.rank_tol);
  return d;
}

CMatrix TargetLayout::pi_tp() const {
  CMatrix p = CMatrix::Zero(hp, size());
  p.middleCols(tp_offset(), hp).setIdentity();
  return p;
}

CMatrix TargetLayout::pi_a() const {
  CMatrix p = CMatrix::Zero(h, size());
  p.middleCols(a_offset(), h).setIdentity();
  return p;
}

CMatrix TargetLayout::pi_circ() const {
  CMatrix p = CMatrix::Zero(h0, size());
  p.leftCols(h0).setIdentity();
  return p;
}

CMatrix stacked_image(const LiftingDataSet& ds, const DefectOperators& d) {
  return vstack(vstack(d.d_circ, d.d_tp * ds.A * ds.R), d.d_a * ds.R);
}

OmegaData build_omega(const LiftingDataSet& ds, const Tolerances& tol) {
  OmegaData od;
  od.defects = defect_operators(ds, tol);
  const CMatrix source = od.defects.d_a * ds.Q;  // D_A Q
  const CMatrix image = stacked_image(ds, od.defects);

  od.frame_f = range_frame(source, tol.rank_tol);
  od.frame_fp = range_frame(image, tol.rank_tol);
  if (od.frame_f.dim() != od.frame_fp.dim()) {
    throw Error(ErrorKind::OmegaNotIsometric, "dim F = " + std::to_string(od.frame_f.dim()) +
                                                  " but dim F' = " + std::to_string(od.frame_fp.dim()));
  }

  // ω Xc = Yc with ω unitary: ω is the polar factor of Yc Xc*.
  const CMatrix xc = od.frame_f.coordinates(source);
  const CMatrix yc = od.frame_fp.coordinates(image);
  od.omega = polar_unitary(yc * xc.adjoint());
  const Index k = od.omega.rows();
  od.fit_residual = op_norm(od.omega * xc - yc) / std::max(1.0, op_norm(xc));
  od.unitary_residual = std::max(op_norm(od.omega.adjoint() * od.omega - CMatrix::Identity(k, k)),
                                 op_norm(od.omega * od.omega.adjoint() - CMatrix::Identity(k, k)));
  if (od.fit_residual > tol.check_tol || od.unitary_residual > tol.check_tol) {
    throw Error(ErrorKind::OmegaNotIsometric,
                "omega fit residual " + std::to_string(od.fit_residual) + " exceeds tolerance");
  }

  od.frame_target = direct_sum(direct_sum(od.defects.frame_dcirc, od.defects.frame_dtp), od.defects.frame_da);
  od.frame_g = orthogonal_complement(od.defects.frame_da, od.frame_f);
  od.frame_gp = orthogonal_complement(od.frame_target, od.frame_fp);
  return od;
}

Frame f_a_prime(const LiftingDataSet& ds, const Tolerances& tol) {
  const DefectOperators d = defect_operators(ds, tol);
  return range_frame(vstack(d.d_circ, d.d_a * ds.R), tol.rank_tol);
}

AugmentedDataSet augment(const LiftingDataSet& ds, const Tolerances& tol) {
  const DefectOperators d = defect_operators(ds, tol);
  const Index k = d.frame_dcirc.dim();
  const CMatrix dcirc_coords = d.frame_dcirc.coordinates(d.d_circ);  // k x H0

  AugmentedDataSet out;
  out.dim_dcirc = k;
  out.ds = LiftingDataSet::from_operators(
      block_diag(ds.A, CMatrix::Identity(k, k)), block_diag(ds.Tp, CMatrix::Zero(k, k)),
      vstack(ds.R, dcirc_coords), vstack(ds.Q, CMatrix::Zero(k, ds.dims.H0)));
  return out;
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

CMatrix random_intertwiner(const CMatrix& Tp, const CMatrix& R, const CMatrix& Q, Rng& rng, bool* degenerate) {
  const Index hp = Tp.rows();
  const Index h = Q.rows();
  // vec(T'XR - XQ) = (R^T ⊗ T' - Q^T ⊗ I) vec(X), column-major vec.
  const CMatrix op = kron(R.transpose(), Tp) - kron(Q.transpose(), CMatrix::Identity(hp, hp));
  const CMatrix kernel = null_space(op, kDefaultRankTol);
  if (degenerate) *degenerate = kernel.cols() == 0;
  if (kernel.cols() == 0) return CMatrix::Zero(hp, h);

  const CVector coeffs = random_gaussian(kernel.cols(), 1, rng);
  const CVector vec = kernel * coeffs;
  CMatrix x = Eigen::Map<const CMatrix>(vec.data(), hp, h);
  x /= op_norm(x);
  return x;
}

GeneratedDataSet gen_classical(const Dims& dims, std::uint64_t seed) {
  if (dims.H0 != dims.H) throw Error(ErrorKind::InvalidArgument, "classical instances need dim H0 = dim H");
  Rng rng(seed);
  const Index h = dims.H;
  const Index hp = dims.Hp;
  const CMatrix Q = random_unitary(h, rng);
  const CMatrix R = CMatrix::Identity(h, h);

  // T' carries s eigenvalues of Q on a reducing subspace so the intertwining
  // constraint T'A = AQ has nonzero solutions; s = 0 gives the degenerate case.
  const Index s = rng.uniform_index(0, std::min(h, hp));
  CVector mu(0);
  if (s > 0) {
    Eigen::ComplexEigenSolver<CMatrix> eig(Q, false);
    mu = eig.eigenvalues().head(s);
  }
  CMatrix core = CMatrix::Zero(hp, hp);
  core.topLeftCorner(s, s) = mu.asDiagonal();
  core.bottomRightCorner(hp - s, hp - s) = random_contraction(hp - s, hp - s, rng);
  const CMatrix V = random_unitary(hp, rng);
  const CMatrix Tp = V * core * V.adjoint();

  GeneratedDataSet out;
  const CMatrix A = random_intertwiner(Tp, R, Q, rng, &out.degenerate_A);
  out.ds = LiftingDataSet::from_operators(A, Tp, R, Q);
  return out;
}

GeneratedDataSet gen_random(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix Tp = random_contraction(dims.Hp, dims.Hp, rng);
  const CMatrix Q = random_gaussian(dims.H, dims.H0, rng);
  const CMatrix K = random_contraction(dims.H, dims.H, rng, 0.1, 1.0);
  const CMatrix R = rng.uniform() * K * Q;

  GeneratedDataSet out;
  const CMatrix A = random_intertwiner(Tp, R, Q, rng, &out.degenerate_A);
  out.ds = LiftingDataSet::from_operators(A, Tp, R, Q);
  return out;
}

LiftingDataSet zero_dataset(const Dims& dims) {
  return LiftingDataSet::from_operators(CMatrix::Zero(dims.Hp, dims.H), CMatrix::Zero(dims.Hp, dims.Hp),
                                        CMatrix::Zero(dims.H, dims.H0), CMatrix::Zero(dims.H, dims.H0));
}

}  // namespace liftlab
