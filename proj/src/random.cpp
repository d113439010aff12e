#include "liftlab/random.hpp"

#include "liftlab/realization.hpp"

namespace liftlab {

Complex Rng::disk_point(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double theta = uniform(0.0, 2 * M_PI);
  return std::polar(r, theta);
}

CMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

CMatrix random_unitary(Index n, Rng& rng) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the column phases so the distribution is Haar.
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (cols > rows) throw Error(ErrorKind::InvalidArgument, "random_isometry needs rows >= cols");
  return random_unitary(rows, rng).leftCols(cols);
}

CMatrix random_contraction(Index rows, Index cols, Rng& rng, double min_norm, double max_norm) {
  CMatrix g = random_gaussian(rows, cols, rng);
  const double target = rng.uniform(min_norm, max_norm);
  const double n = op_norm(g);
  if (n > 0) g *= target / n;
  return g;
}

Realization random_contractive_realization(Index dim_in, Index dim_out, Index dim_state, Rng& rng,
                                           double max_norm) {
  const CMatrix m = random_contraction(dim_out + dim_state, dim_in + dim_state, rng, 0.1, max_norm);
  return Realization::from_system_matrix(m, dim_in, dim_out);
}

Realization random_isometric_realization(Index dim_in, Index dim_out, Index dim_state, Rng& rng) {
  if (dim_out < dim_in) {
    throw Error(ErrorKind::InvalidArgument, "isometric realization needs dim_out >= dim_in");
  }
  const CMatrix m = random_isometry(dim_out + dim_state, dim_in + dim_state, rng);
  return Realization::from_system_matrix(m, dim_in, dim_out);
}

}  // namespace liftlab
