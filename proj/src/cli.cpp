#include "liftlab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "liftlab/io.hpp"

namespace liftlab {

namespace {

using io::Json;

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const IdentitySummary& s) {
  return Json{{"suite", s.suite},
              {"trials", s.trials},
              {"max_transfer_residual", num(s.max_transfer_residual)},
              {"cyclic_checked", s.cyclic_checked},
              {"cyclic_controllable", s.cyclic_controllable},
              {"cyclic_disagreements", s.cyclic_disagreements},
              {"max_feedback_residual", num(s.max_feedback_residual)},
              {"max_coupling_residual", num(s.max_coupling_residual)},
              {"max_residual", num(s.max_residual)},
              {"pass", s.pass}};
}

// Square realization, uncontrollable when `split` < state dim: the pair is
// block diagonal with B vanishing on the second block, then rotated.
Realization square_realization(Index u, Index x, Index split, Rng& rng) {
  Realization r = random_contractive_realization(u, u, x, rng);
  if (split >= x) return r;
  CMatrix z = CMatrix::Zero(x, x);
  z.topLeftCorner(split, split) = r.Z.topLeftCorner(split, split);
  z.bottomRightCorner(x - split, x - split) = r.Z.bottomRightCorner(x - split, x - split);
  CMatrix b = CMatrix::Zero(x, u);
  b.topRows(split) = r.B.topRows(split);
  const CMatrix w = random_unitary(x, rng);
  r.Z = w * z * w.adjoint();
  r.B = w * b;
  r.C = r.C * w.adjoint();
  return r;
}

void realization_suite(IdentitySummary& s, Index trials, Rng& rng, const std::vector<Complex>& grid) {
  for (Index t = 0; t < trials; ++t) {
    const Index u = rng.uniform_index(1, 4), y = rng.uniform_index(1, 4), x = rng.uniform_index(0, 4);
    const Realization r = random_contractive_realization(u, y, x, rng);
    for (const Complex lambda : grid) {
      s.max_transfer_residual =
          std::max(s.max_transfer_residual, max_abs(eval_transfer(r, lambda) - eval_transfer_system(r, lambda)));
    }
  }
  for (Index t = 0; t < trials; ++t) {
    const Index u = rng.uniform_index(1, 4), x = rng.uniform_index(1, 4);
    const Index split = rng.uniform(0, 1) < 0.5 ? x : rng.uniform_index(0, x - 1);
    const Realization r = square_realization(u, x, split, rng);
    const bool c = controllable(r);
    ++s.cyclic_checked;
    if (c) ++s.cyclic_controllable;
    if (c != cyclic_for_M(r)) ++s.cyclic_disagreements;
  }
}

void feedback_suite(IdentitySummary& s, Index trials, Rng& rng, const std::vector<Complex>& grid) {
  for (Index t = 0; t < trials; ++t) {
    const Index e1 = rng.uniform_index(1, 3), e2 = rng.uniform_index(1, 3), x = rng.uniform_index(0, 3);
    const Index m = e2 + x;
    const FeedbackPair pair(random_contraction(e1 + m, m, rng), e1, e2);
    for (const Complex lambda : grid) s.max_feedback_residual = std::max(s.max_feedback_residual, pair.residual(lambda));
  }
}

void coupling_suite(IdentitySummary& s, Index trials, Rng& rng, const std::vector<Complex>& grid) {
  for (Index t = 0; t < trials; ++t) {
    const Index dp = rng.uniform_index(1, 3), d = rng.uniform_index(1, 3), x = rng.uniform_index(0, 3);
    const Index m = d + x;
    const CouplingReport rep = coupling_identity(random_contraction(m, dp + m, rng), dp, d, grid);
    s.max_coupling_residual = std::max(s.max_coupling_residual, rep.max_residual);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

Dims parse_dims(const std::string& text) {
  std::vector<Index> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long long x = std::stoll(trim(part), &used);
      if (used != trim(part).size() || x < 0) throw std::invalid_argument(part);
      v.push_back(static_cast<Index>(x));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "--dims expects H0,H,Hp");
    }
  }
  if (v.size() != 3) throw Error(ErrorKind::InvalidArgument, "--dims expects H0,H,Hp");
  return Dims{v[0], v[1], v[2]};
}

LiftingDataSet scalar(double a, double tp, double r, double q) {
  const auto m = [](double x) { return CMatrix::Constant(1, 1, Complex(x, 0)); };
  return LiftingDataSet::from_operators(m(a), m(tp), m(r), m(q));
}

// Sink for a report: --out file if given, stdout otherwise.
struct Emitter {
  std::ostream& out;
  std::string path;
  void operator()(const Json& j) const {
    if (path.empty()) {
      out << io::dump(j);
    } else {
      io::write_file(path, j);
    }
  }
};

LiftingDataSet load_dataset(const std::string& path) { return io::dataset_from_json(io::read_file(path)); }

Json corpus(const std::string& kind, Index count, const std::string& dims_text, std::uint64_t seed,
            const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::InvalidArgument, "cannot create " + out_dir);

  std::vector<std::pair<std::string, GeneratedDataSet>> items;
  if (kind == "scalar-examples") {
    items.push_back({"zero", {scalar(0, 0, 0, 0), false}});
    items.push_back({"isometric-tp", {scalar(0, 1, 0, 0), false}});
    items.push_back({"half-r", {scalar(0, 0, 0.5, 1), false}});
    items.push_back({"unit-rq", {scalar(0, 0, 1, 1), false}});
  } else {
    std::optional<Dims> fixed;
    if (!dims_text.empty()) fixed = parse_dims(dims_text);
    Rng rng(seed);
    for (Index i = 0; i < count; ++i) {
      const std::uint64_t s = rng.next_seed();
      Dims d;
      if (fixed) {
        d = *fixed;
      } else {
        d.H = rng.uniform_index(1, 4);
        d.H0 = kind == "classical" ? d.H : rng.uniform_index(1, 4);
        d.Hp = rng.uniform_index(1, 4);
      }
      std::ostringstream name;
      name << kind << "-" << std::setw(3) << std::setfill('0') << i;
      if (kind == "classical") {
        items.push_back({name.str(), gen_classical(d, s)});
      } else if (kind == "random") {
        items.push_back({name.str(), gen_random(d, s)});
      } else if (kind == "zero") {
        items.push_back({name.str(), {zero_dataset(d), true}});
      } else {
        throw Error(ErrorKind::InvalidArgument, "unknown corpus kind " + kind);
      }
    }
  }

  Json files = Json::array();
  for (const auto& [name, g] : items) {
    const std::string path = (fs::path(out_dir) / (name + ".json")).string();
    io::write_file(path, io::to_json(g.ds));
    files.push_back(Json{{"path", path}, {"degenerate_A", g.degenerate_A}});
  }
  return Json{{"kind", kind}, {"seed", seed}, {"files", std::move(files)}};
}

}  // namespace

std::vector<Complex> default_grid() {
  std::vector<Complex> g;
  for (int k = 0; k < 16; ++k) g.push_back(std::polar(0.7, 2 * std::numbers::pi * k / 16));
  return g;
}

IdentitySummary run_identities(const std::string& suite, Index trials, std::uint64_t seed,
                               const std::vector<Complex>& grid) {
  const bool all = suite == "all";
  if (!all && suite != "realization" && suite != "feedback" && suite != "coupling") {
    throw Error(ErrorKind::InvalidArgument, "unknown suite " + suite);
  }
  IdentitySummary s;
  s.suite = suite;
  s.trials = trials;
  Rng rng(seed);
  // Each suite draws from its own stream so "all" repeats the single-suite runs.
  const std::uint64_t s_real = rng.next_seed(), s_feed = rng.next_seed(), s_coup = rng.next_seed();
  if (all || suite == "realization") {
    Rng r(s_real);
    realization_suite(s, trials, r, grid);
  }
  if (all || suite == "feedback") {
    Rng r(s_feed);
    feedback_suite(s, trials, r, grid);
  }
  if (all || suite == "coupling") {
    Rng r(s_coup);
    coupling_suite(s, trials, r, grid);
  }
  s.max_residual = std::max({s.max_transfer_residual, s.max_feedback_residual, s.max_coupling_residual});
  s.pass = s.max_transfer_residual <= kTransferAgreementTol && s.cyclic_disagreements == 0 &&
           s.max_feedback_residual <= kIdentityTol && s.max_coupling_residual <= kIdentityTol;
  return s;
}

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("LIFTLAB_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw Error(ErrorKind::InvalidArgument, "LIFTLAB_TOL must be a positive number");
    tol.check_tol = v;
  }
  return tol;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relaxed commutant lifting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  std::optional<double> rank_tol, check_tol;
  std::string out_path;
  app.add_option("--rank-tol", rank_tol, "Rank cut for frames")->check(CLI::PositiveNumber);
  app.add_option("--check-tol", check_tol, "Pass threshold (overrides LIFTLAB_TOL)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");

  std::string ds_path, ip_path, param_file, suite = "all", kind, dims_text, out_dir = ".";
  Index N = kDefaultTruncation, count = 10, trials = 100, n_params = 20;
  std::uint64_t seed = 0, param_seed = 0;
  std::optional<double> gram_tol;

  auto* c_validate = app.add_subcommand("validate", "Check a lifting data set");
  c_validate->add_option("dataset", ds_path)->required()->check(CLI::ExistingFile);

  auto* c_solve = app.add_subcommand("solve", "Compute an interpolant");
  c_solve->add_option("dataset", ds_path)->required()->check(CLI::ExistingFile);
  auto* f_central = c_solve->add_flag("--central", "Central solution (default)");
  auto* f_seed = c_solve->add_option("--param-seed", param_seed, "Seeded free parameter");
  auto* f_file = c_solve->add_option("--param-file", param_file, "Free parameter realization or descriptor")
                     ->check(CLI::ExistingFile);
  f_central->excludes(f_seed)->excludes(f_file);
  f_seed->excludes(f_file);
  c_solve->add_option("-N,--truncation", N, "Truncation horizon")->check(CLI::PositiveNumber);

  auto* c_verify = app.add_subcommand("verify", "Check an interpolant against its data set");
  c_verify->add_option("dataset", ds_path)->required()->check(CLI::ExistingFile);
  c_verify->add_option("interpolant", ip_path)->required()->check(CLI::ExistingFile);
  c_verify->add_option("--gram-tol", gram_tol, "Partial Gram threshold (default: check tol)")
      ->check(CLI::PositiveNumber);

  auto* c_analyze = app.add_subcommand("analyze", "Uniqueness and defect diagnostics");
  c_analyze->add_option("dataset", ds_path)->required()->check(CLI::ExistingFile);
  c_analyze->add_option("interpolant", ip_path)->check(CLI::ExistingFile);
  c_analyze->add_option("-N,--truncation", N, "Horizon of the central interpolant")->check(CLI::PositiveNumber);

  auto* c_corpus = app.add_subcommand("corpus", "Generate data set files");
  c_corpus->add_option("--kind", kind)->required()->check(
      CLI::IsMember({"classical", "random", "zero", "scalar-examples"}));
  c_corpus->add_option("--count", count)->check(CLI::NonNegativeNumber);
  c_corpus->add_option("--dims", dims_text, "H0,H,Hp (random per instance if omitted)");
  c_corpus->add_option("--seed", seed);
  c_corpus->add_option("--out-dir", out_dir);

  auto* c_ident = app.add_subcommand("identities", "Realization identity suites");
  c_ident->add_option("--suite", suite)->check(CLI::IsMember({"realization", "feedback", "coupling", "all"}));
  c_ident->add_option("--trials", trials)->check(CLI::PositiveNumber);
  c_ident->add_option("--seed", seed);

  auto* c_collide = app.add_subcommand("collide", "Parameter collision experiment");
  c_collide->add_option("dataset", ds_path)->required()->check(CLI::ExistingFile);
  c_collide->add_option("--params", n_params)->check(CLI::PositiveNumber);
  c_collide->add_option("--seed", seed);
  c_collide->add_option("-N,--truncation", N)->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
  }

  try {
    // An explicit flag wins and the variable is not consulted at all.
    Tolerances tol = check_tol ? Tolerances{} : tolerances_from_env();
    if (check_tol) tol.check_tol = *check_tol;
    if (rank_tol) tol.rank_tol = *rank_tol;
    const Emitter emit{out, out_path};

    if (c_validate->parsed()) {
      const ValidationReport rep = validate(load_dataset(ds_path), tol.check_tol);
      emit(io::to_json(rep));
      return rep.pass ? kExitPass : kExitFail;
    }
    if (c_solve->parsed()) {
      const LiftingDataSet ds = load_dataset(ds_path);
      ParameterDescriptor p;
      if (*f_seed) {
        p.kind = ParameterDescriptor::Kind::Seeded;
        p.seed = param_seed;
      } else if (*f_file) {
        const Json j = io::read_file(param_file);
        if (j.is_object() && j.contains("kind")) {
          p = io::descriptor_from_json(j);
        } else {
          p.kind = ParameterDescriptor::Kind::Explicit;
          p.g = io::realization_from_json(j);
        }
      }
      emit(io::to_json(solve_descriptor(ds, p, N, tol)));
      return kExitPass;
    }
    if (c_verify->parsed()) {
      const LiftingDataSet ds = load_dataset(ds_path);
      const Interpolant ip = io::interpolant_from_json(io::read_file(ip_path), ds);
      const VerificationReport rep = verify(ip, tol.check_tol, gram_tol.value_or(tol.check_tol), tol);
      emit(io::to_json(rep));
      return rep.pass ? kExitPass : kExitFail;
    }
    if (c_analyze->parsed()) {
      const LiftingDataSet ds = load_dataset(ds_path);
      if (!validate(ds, tol.check_tol).pass) {
        err << "data set does not validate\n";
        return kExitFail;
      }
      Interpolant ip;
      if (ip_path.empty()) {
        ip = solve_central(ds, N, tol);
      } else {
        ip = io::interpolant_from_json(io::read_file(ip_path), ds);
        // The tail bound needs the symbol realization; trust it only if it
        // reproduces the stored coefficients.
        const Interpolant again = solve_descriptor(ds, ip.parameter, ip.N, tol);
        if (again.gamma.max_difference(ip.gamma) <= tol.check_tol) ip.symbol = again.symbol;
      }
      Json j{{"uniqueness", io::to_json(uniqueness_report(ds, tol))}};
      int code = kExitPass;
      try {
        const InterpolantDefectData d = interpolant_defect(ip, tol);
        j["interpolant_defect"] = io::to_json(d);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OmegaBNotIsometric) throw;
        j["interpolant_defect"] = io::to_json(defect_frames(ip, tol));
        j["interpolant_defect"]["error"] = e.what();
        code = kExitFail;
      }
      j["proper_param_check"] = proper_param_check(ip, tol);
      emit(j);
      return code;
    }
    if (c_corpus->parsed()) {
      emit(corpus(kind, count, dims_text, seed, out_dir));
      return kExitPass;
    }
    if (c_ident->parsed()) {
      const IdentitySummary s = run_identities(suite, trials, seed);
      emit(to_json(s));
      return s.pass ? kExitPass : kExitFail;
    }
    if (c_collide->parsed()) {
      const CollisionReport rep = collision_experiment(load_dataset(ds_path), n_params, seed, N, tol);
      emit(io::to_json(rep));
      return rep.inconsistent ? kExitFail : kExitPass;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace liftlab
