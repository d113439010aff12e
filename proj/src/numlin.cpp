#include "liftlab/numlin.hpp"

namespace liftlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::IndefiniteBeyondTolerance: return "IndefiniteBeyondTolerance";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::NotControllable: return "NotControllable";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::OmegaNotIsometric: return "OmegaNotIsometric";
    case ErrorKind::OmegaBNotIsometric: return "OmegaBNotIsometric";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

double Frame::distance(const CMatrix& x) const {
  if (x.size() == 0) return 0;
  if (dim() == 0) return x.colwise().norm().maxCoeff();
  return (x - basis * (basis.adjoint() * x)).colwise().norm().maxCoeff();
}

Frame Frame::empty(Index ambient_dim) { return Frame{ambient_dim, CMatrix(ambient_dim, 0)}; }

Frame Frame::whole(Index ambient_dim) {
  return Frame{ambient_dim, CMatrix::Identity(ambient_dim, ambient_dim)};
}

namespace {

struct RankRevealing {
  CMatrix u;
  CMatrix v;
  RVector sigma;
  Index rank = 0;
};

// Thin SVD with the phase convention of range_frame applied to the leading
// `rank` triples.
RankRevealing rank_revealing_svd(const CMatrix& m, double rank_tol, bool full_v) {
  RankRevealing out;
  const unsigned options = Eigen::ComputeThinU | (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
  Eigen::JacobiSVD<CMatrix> svd(m, options);
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  out.sigma = svd.singularValues();
  const double cut = rank_tol * std::max(1.0, out.sigma.size() ? out.sigma(0) : 0.0);
  while (out.rank < out.sigma.size() && out.sigma(out.rank) > cut) ++out.rank;
  for (Index j = 0; j < out.rank; ++j) {
    const auto vj = out.v.col(j);
    const double floor = 1e-10 * vj.norm();
    for (Index i = 0; i < vj.size(); ++i) {
      if (std::abs(vj(i)) > floor) {
        const Complex phase = std::conj(vj(i)) / std::abs(vj(i));
        out.v.col(j) *= phase;
        out.u.col(j) *= phase;
        break;
      }
    }
  }
  return out;
}

}  // namespace

Frame range_frame(const CMatrix& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return Frame{m.rows(), CMatrix(m.rows(), 0), rank_tol};
  const RankRevealing rr = rank_revealing_svd(m, rank_tol, false);
  return Frame{m.rows(), rr.u.leftCols(rr.rank), rank_tol};
}

Index numerical_rank(const CMatrix& m, double rank_tol) { return range_frame(m, rank_tol).dim(); }

CMatrix null_space(const CMatrix& m, double rank_tol) {
  if (m.cols() == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(m.cols(), m.cols());
  const RankRevealing rr = rank_revealing_svd(m, rank_tol, true);
  return rr.v.rightCols(m.cols() - rr.rank);
}

Frame orthogonal_complement(const Frame& whole, const Frame& sub) {
  if (whole.ambient_dim != sub.ambient_dim) {
    throw Error(ErrorKind::DimMismatch, "orthogonal_complement: frames live in different spaces");
  }
  if (sub.dim() == 0) return whole;
  if (whole.dim() == 0) return whole;
  // Principal cosines between sub and whole are ~1 for the shared directions
  // and ~0 for the complement.
  const CMatrix overlap = sub.basis.adjoint() * whole.basis;
  Eigen::JacobiSVD<CMatrix> svd(overlap, Eigen::ComputeFullV);
  Index shared = 0;
  while (shared < svd.singularValues().size() && svd.singularValues()(shared) > 0.5) ++shared;
  const Index k = whole.dim() - shared;
  return Frame{whole.ambient_dim, whole.basis * svd.matrixV().rightCols(k), whole.rank_tol};
}

Frame direct_sum(const Frame& a, const Frame& b) {
  return Frame{a.ambient_dim + b.ambient_dim, block_diag(a.basis, b.basis), std::max(a.rank_tol, b.rank_tol)};
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix vstack(const CMatrix& top, const CMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack column mismatch");
  CMatrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

CMatrix hstack(const CMatrix& left, const CMatrix& right) {
  if (left.rows() != right.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row mismatch");
  CMatrix out(left.rows(), left.cols() + right.cols());
  out.leftCols(left.cols()) = left;
  out.rightCols(right.cols()) = right;
  return out;
}

double max_eigenvalue(const CMatrix& hermitian) {
  if (hermitian.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

double min_eigenvalue(const CMatrix& hermitian) {
  if (hermitian.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

CMatrix polar_unitary(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "polar_unitary expects a square matrix");
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace liftlab
