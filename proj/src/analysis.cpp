#include "liftlab/analysis.hpp"

#include <limits>

namespace liftlab {

namespace {

// Distance threshold for "subspace contained in frame" tests. Frames are
// orthonormal to ~1e-14; this stays far from both round-off and genuine angles.
constexpr double kContainmentTol = 1e-6;

bool series_close(const TaylorSeries& a, const TaylorSeries& b, Index upto, double tol) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out) return false;
  for (Index n = 0; n <= upto; ++n) {
    if (max_abs(a.coeffs[n] - b.coeffs[n]) > tol) return false;
  }
  return true;
}

// Index of the first representative close to `s`, appending it if none.
template <typename Close>
std::size_t classify_into(std::vector<const TaylorSeries*>& reps, const TaylorSeries& s, Close close) {
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (close(*reps[i], s)) return i;
  }
  reps.push_back(&s);
  return reps.size() - 1;
}

}  // namespace

UniquenessReport uniqueness_report(const LiftingDataSet& ds, const Tolerances& tol) {
  const OmegaData od = build_omega(ds, tol);
  const DefectOperators& d = od.defects;
  UniquenessReport rep;
  rep.dim_f = od.frame_f.dim();
  rep.dim_da = d.frame_da.dim();
  rep.dim_fp = od.frame_fp.dim();
  rep.dim_target = od.frame_target.dim();
  rep.dim_dcirc = d.frame_dcirc.dim();
  rep.dim_fap = f_a_prime(ds, tol).dim();

  rep.tp_isometry = classify(ds.Tp, tol.check_tol).is_isometry;
  rep.f_full = rep.dim_f == rep.dim_da;
  rep.fap_full = rep.dim_fap == rep.dim_dcirc + rep.dim_da;
  const Frame tail = direct_sum(Frame::empty(ds.dims.H0), direct_sum(d.frame_dtp, d.frame_da));
  rep.fta_in_fp = od.frame_fp.distance(tail.basis) <= kContainmentTol;
  rep.classical_shape = ds.dims.H0 == ds.dims.H &&
                        op_norm(ds.R - CMatrix::Identity(ds.dims.H, ds.dims.H0)) <= tol.check_tol &&
                        classify(ds.Q, tol.check_tol).is_isometry;

  rep.unique_interpolant_sufficient = rep.tp_isometry || rep.f_full || rep.fta_in_fp;
  rep.proper_param_sufficient = rep.f_full || rep.fap_full;
  return rep;
}

DefectFrames defect_frames(const Interpolant& ip, const Tolerances& tol) {
  const LiftingDataSet& ds = ip.ds;
  const DefectOperators d = defect_operators(ds, tol);
  const Index h = ds.dims.H;
  const CMatrix gram = ip.gamma.partial_gram();

  DefectFrames out;
  const CMatrix gap = CMatrix::Identity(h, h) - ds.A.adjoint() * ds.A - d.d_a * gram * d.d_a;
  // The truncated Gram can overshoot by the verify tolerance.
  out.d_b = psd_sqrt(CMatrix((gap + gap.adjoint()) / 2.0), std::max(tol.psd_tol, tol.check_tol / 10));
  out.frame_db = range_frame(out.d_b, tol.rank_tol);
  out.frame_dcirc = d.frame_dcirc;
  out.frame_fb = range_frame(out.d_b * ds.Q, tol.rank_tol);
  out.frame_fbp = range_frame(vstack(d.d_circ, out.d_b * ds.R), tol.rank_tol);
  out.frame_gb = orthogonal_complement(out.frame_db, out.frame_fb);
  out.frame_gbp = orthogonal_complement(direct_sum(out.frame_dcirc, out.frame_db), out.frame_fbp);

  const double last = op_norm(ip.gamma.coeffs.back() * d.d_a * ds.R);
  out.horizon_residual = last * last;
  out.tail_caveat = ip.symbol ? gram_tail_bound(*ip.symbol, ip.gamma.horizon())
                              : std::numeric_limits<double>::infinity();
  return out;
}

InterpolantDefectData interpolant_defect(const Interpolant& ip, const Tolerances& tol, std::uint64_t probe_seed) {
  InterpolantDefectData out;
  out.frames = defect_frames(ip, tol);
  const DefectFrames& f = out.frames;
  const LiftingDataSet& ds = ip.ds;
  if (f.frame_fb.dim() != f.frame_fbp.dim()) {
    throw Error(ErrorKind::OmegaBNotIsometric, "dim F_B = " + std::to_string(f.frame_fb.dim()) + " but dim F_B' = " +
                                                   std::to_string(f.frame_fbp.dim()) + "; raise the truncation N");
  }
  const CMatrix d_circ = defect_operators(ds, tol).d_circ;
  const CMatrix source = f.d_b * ds.Q;
  const CMatrix image = vstack(d_circ, f.d_b * ds.R);
  const CMatrix xc = f.frame_fb.coordinates(source);
  const CMatrix yc = f.frame_fbp.coordinates(image);
  out.omega_b = polar_unitary(yc * xc.adjoint());
  out.omega_b_fit_residual = op_norm(out.omega_b * xc - yc) / std::max(1.0, op_norm(xc));

  Rng rng(probe_seed);
  for (int i = 0; i < 100; ++i) {
    const CMatrix hvec = random_gaussian(ds.dims.H0, 1, rng);
    const double lhs = (source * hvec).squaredNorm();
    const double rhs = (image * hvec).squaredNorm();
    out.norm_identity_residual = std::max(out.norm_identity_residual, std::abs(lhs - rhs) / std::max(1.0, hvec.squaredNorm()));
  }
  if (out.omega_b_fit_residual > tol.check_tol) {
    throw Error(ErrorKind::OmegaBNotIsometric,
                "ω_B fit residual " + std::to_string(out.omega_b_fit_residual) + "; raise the truncation N");
  }
  return out;
}

bool proper_param_check(const DefectFrames& f) {
  return f.frame_fb.dim() == f.frame_db.dim() || f.frame_fbp.dim() == f.frame_dcirc.dim() + f.frame_db.dim();
}

bool proper_param_check(const Interpolant& ip, const Tolerances& tol) {
  return proper_param_check(defect_frames(ip, tol));
}

Realization h_from_g_realization(const InterpolantDefectData& defect, const Realization& G, double tol) {
  const DefectFrames& f = defect.frames;
  return block_parameter(f.frame_fb, f.frame_fbp, defect.omega_b, f.frame_gb, f.frame_gbp, G, tol);
}

TaylorSeries h_from_g(const InterpolantDefectData& defect, const Realization& G, Index N, double tol) {
  return taylor(h_from_g_realization(defect, G, tol), N);
}

CollisionReport collision_experiment(const LiftingDataSet& ds, const std::vector<Realization>& params, Index N,
                                     const Tolerances& tol) {
  const OmegaData od = build_omega(ds, tol);
  const TargetLayout layout(ds.dims);
  const CMatrix pi_tp = layout.pi_tp();
  const CMatrix pi_a = layout.pi_a();

  std::vector<TaylorSeries> f_series, g_series;
  f_series.reserve(params.size());
  g_series.reserve(params.size());
  for (const Realization& G : params) {
    f_series.push_back(taylor(constrained_parameter(od, G, tol.check_tol), N));
    g_series.push_back(symbol_taylor(f_series.back(), pi_tp, pi_a, N));
  }

  // A parameter difference first visible in the Π_A rows of F_N would only
  // reach Γ beyond the horizon, so parameters are compared on 0..N-1.
  const Index f_upto = std::max<Index>(0, N - 1);
  const auto f_close = [&](const TaylorSeries& a, const TaylorSeries& b) {
    return series_close(a, b, f_upto, tol.check_tol);
  };
  const auto g_close = [&](const TaylorSeries& a, const TaylorSeries& b) { return series_close(a, b, N, tol.check_tol); };

  std::vector<const TaylorSeries*> f_reps, g_reps;
  std::vector<std::size_t> f_class, g_class;
  for (std::size_t i = 0; i < params.size(); ++i) {
    f_class.push_back(classify_into(f_reps, f_series[i], f_close));
    g_class.push_back(classify_into(g_reps, g_series[i], g_close));
  }

  CollisionReport rep;
  rep.n_params = static_cast<Index>(params.size());
  rep.distinct_parameters = static_cast<Index>(f_reps.size());
  rep.distinct_interpolants = static_cast<Index>(g_reps.size());
  for (std::size_t i = 0; i < params.size(); ++i)
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if (f_class[i] != f_class[j] && g_class[i] == g_class[j]) ++rep.collision_pairs;

  rep.proper_param = proper_param_check(solve_central(ds, N, tol), tol);
  rep.inconsistent = rep.proper_param && rep.collision_pairs > 0;
  return rep;
}

CollisionReport collision_experiment(const LiftingDataSet& ds, Index n_params, std::uint64_t seed, Index N,
                                     const Tolerances& tol) {
  const OmegaData od = build_omega(ds, tol);
  Rng rng(seed);
  std::vector<Realization> params;
  params.reserve(n_params);
  for (Index i = 0; i < n_params; ++i) params.push_back(seeded_parameter(od, rng.next_seed()));
  return collision_experiment(ds, params, N, tol);
}

}  // namespace liftlab
