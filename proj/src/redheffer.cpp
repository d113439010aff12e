#include "liftlab/redheffer.hpp"

namespace liftlab {

TaylorSeries symbol_taylor(const TaylorSeries& F, const CMatrix& pi_top, const CMatrix& pi_fb, Index N) {
  if (pi_top.cols() != F.dim_out || pi_fb.cols() != F.dim_out || pi_fb.rows() != F.dim_in) {
    throw Error(ErrorKind::ShapeMismatch, "projections do not fit the parameter series");
  }
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation");
  const Index q = F.dim_in;
  const auto coeff = [&](Index k) -> CMatrix {
    return k < static_cast<Index>(F.coeffs.size()) ? F.coeffs[k] : CMatrix::Zero(F.dim_out, q);
  };

  std::vector<CMatrix> fb, top;
  fb.reserve(N + 1);
  top.reserve(N + 1);
  for (Index k = 0; k <= N; ++k) {
    const CMatrix fk = coeff(k);
    fb.push_back(pi_fb * fk);
    top.push_back(pi_top * fk);
  }

  std::vector<CMatrix> s;  // coefficients of (I - λ Π_fb F(λ))^{-1}
  s.reserve(N + 1);
  s.push_back(CMatrix::Identity(q, q));
  for (Index m = 1; m <= N; ++m) {
    CMatrix acc = CMatrix::Zero(q, q);
    for (Index j = 1; j <= m; ++j) acc.noalias() += fb[j - 1] * s[m - j];
    s.push_back(std::move(acc));
  }

  TaylorSeries out{q, pi_top.rows(), {}};
  out.coeffs.reserve(N + 1);
  for (Index n = 0; n <= N; ++n) {
    CMatrix acc = CMatrix::Zero(pi_top.rows(), q);
    for (Index k = 0; k <= n; ++k) acc.noalias() += top[k] * s[n - k];
    out.coeffs.push_back(std::move(acc));
  }
  return out;
}

Realization symbol_realization(const Realization& F, const CMatrix& pi_top, const CMatrix& pi_fb) {
  F.check_shapes();
  const Index x = F.dim_X(), u = F.dim_U();
  Realization out;
  out.Z = CMatrix(x + u, x + u);
  out.Z << F.Z, F.B, pi_fb * F.C, pi_fb * F.D;
  out.B = vstack(F.B, pi_fb * F.D);
  out.C = pi_top * hstack(F.C, F.D);
  out.D = pi_top * F.D;
  return out;
}

CMatrix symbol_eval(const Realization& F, const CMatrix& pi_top, const CMatrix& pi_fb, Complex lambda) {
  const CMatrix f = eval_transfer(F, lambda);
  const CMatrix pencil = CMatrix::Identity(F.dim_U(), F.dim_U()) - lambda * (pi_fb * f);
  return pi_top * f * pencil.fullPivLu().inverse();
}

Realization seeded_parameter(const OmegaData& od, std::uint64_t seed) {
  Rng rng(seed);
  const Index g = od.frame_g.dim(), gp = od.frame_gp.dim();
  const Index x = (g == 0 || gp == 0) ? 0 : rng.uniform_index(0, 3);
  return random_contractive_realization(g, gp, x, rng);
}

Interpolant solve(const LiftingDataSet& ds, const Realization& G, Index N, const Tolerances& tol) {
  const OmegaData od = build_omega(ds, tol);
  const Realization F = constrained_parameter(od, G, tol.check_tol);
  const TargetLayout layout(ds.dims);
  const CMatrix pi_tp = layout.pi_tp();
  const CMatrix pi_a = layout.pi_a();

  Interpolant ip;
  ip.ds = ds;
  ip.A = ds.A;
  ip.N = N;
  ip.gamma = symbol_taylor(taylor(F, N), pi_tp, pi_a, N);
  ip.parameter.kind = ParameterDescriptor::Kind::Explicit;
  ip.parameter.g = G;
  ip.symbol = symbol_realization(F, pi_tp, pi_a);
  return ip;
}

Interpolant solve_central(const LiftingDataSet& ds, Index N, const Tolerances& tol) {
  const OmegaData od = build_omega(ds, tol);
  const Realization zero = Realization::constant(CMatrix::Zero(od.frame_gp.dim(), od.frame_g.dim()));
  Interpolant ip = solve(ds, zero, N, tol);
  ip.parameter = ParameterDescriptor{};
  return ip;
}

Interpolant solve_seeded(const LiftingDataSet& ds, std::uint64_t seed, Index N, const Tolerances& tol) {
  const OmegaData od = build_omega(ds, tol);
  Interpolant ip = solve(ds, seeded_parameter(od, seed), N, tol);
  ip.parameter = ParameterDescriptor{ParameterDescriptor::Kind::Seeded, seed, std::nullopt};
  return ip;
}

Interpolant solve_descriptor(const LiftingDataSet& ds, const ParameterDescriptor& p, Index N, const Tolerances& tol) {
  switch (p.kind) {
    case ParameterDescriptor::Kind::Central: return solve_central(ds, N, tol);
    case ParameterDescriptor::Kind::Seeded: return solve_seeded(ds, p.seed, N, tol);
    case ParameterDescriptor::Kind::Explicit:
      if (!p.g) throw Error(ErrorKind::InvalidArgument, "explicit parameter without a realization");
      return solve(ds, *p.g, N, tol);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown parameter kind");
}

VerificationReport verify(const Interpolant& ip, double tol, std::optional<double> gram_tol, const Tolerances& tols) {
  const LiftingDataSet& ds = ip.ds;
  const Index hp = ds.dims.Hp, h = ds.dims.H;
  if (ip.gamma.dim_out != hp || ip.gamma.dim_in != h || ip.gamma.coeffs.empty()) {
    throw Error(ErrorKind::ShapeMismatch, "Γ coefficients must be dim H' x dim H");
  }
  if (ip.A.rows() != hp || ip.A.cols() != h) throw Error(ErrorKind::ShapeMismatch, "interpolant A");
  const DefectOperators d = defect_operators(ds, tols);
  const CMatrix daq = d.d_a * ds.Q;
  const CMatrix dar = d.d_a * ds.R;

  VerificationReport rep;
  rep.residual_projection = op_norm(ip.A - ds.A);
  rep.residual_scale = std::max(1.0, op_norm(daq));
  const auto& g = ip.gamma.coeffs;
  rep.residual_intertwine.push_back(op_norm(g[0] * daq - d.d_tp * ds.A * ds.R));
  for (std::size_t n = 0; n + 1 < g.size(); ++n) rep.residual_intertwine.push_back(op_norm(g[n + 1] * daq - g[n] * dar));
  for (const double r : rep.residual_intertwine) rep.max_residual = std::max(rep.max_residual, r);

  CMatrix gram = CMatrix::Zero(h, h);
  for (const CMatrix& gn : g) {
    gram += gn.adjoint() * gn;
    rep.partial_gram_max.push_back(max_eigenvalue((gram + gram.adjoint()) / 2.0));
  }
  rep.gram_excess = std::max(0.0, rep.partial_gram_max.back() - 1);
  rep.pass = rep.residual_projection <= tol && rep.max_residual <= tol * rep.residual_scale &&
             rep.gram_excess <= gram_tol.value_or(tol);
  return rep;
}

Interpolant compress_augmented(const Interpolant& ip_aug, const LiftingDataSet& ds) {
  const Dims& big = ip_aug.ds.dims;
  const Index k = big.H - ds.dims.H;
  if (k < 0 || big.Hp - ds.dims.Hp != k || big.H0 != ds.dims.H0 || ip_aug.gamma.dim_out != big.Hp ||
      ip_aug.gamma.dim_in != big.H) {
    throw Error(ErrorKind::ShapeMismatch, "interpolant does not belong to the augmented data set");
  }
  const Index hp = ds.dims.Hp, h = ds.dims.H;
  Interpolant out;
  out.ds = ds;
  out.A = ds.A;
  out.N = ip_aug.N;
  out.parameter = ip_aug.parameter;
  out.gamma = TaylorSeries{h, hp, {}};
  for (const CMatrix& c : ip_aug.gamma.coeffs) out.gamma.coeffs.push_back(c.topLeftCorner(hp, h));
  if (ip_aug.symbol) {
    const Realization& s = *ip_aug.symbol;
    out.symbol = Realization{s.Z, s.B.leftCols(h), s.C.topRows(hp), s.D.topLeftCorner(hp, h)};
  }
  return out;
}

TaylorSeries hball_theta(const TaylorSeries& F, Index dim_Hp, Index N) {
  const Index h = F.dim_in;
  if (F.dim_out != dim_Hp + h) throw Error(ErrorKind::ShapeMismatch, "F must map H into H' ⊕ H");
  CMatrix pi_prime = CMatrix::Zero(dim_Hp, dim_Hp + h);
  pi_prime.leftCols(dim_Hp).setIdentity();
  CMatrix pi = CMatrix::Zero(h, dim_Hp + h);
  pi.rightCols(h).setIdentity();
  return symbol_taylor(F, pi_prime, pi, N);
}

}  // namespace liftlab
