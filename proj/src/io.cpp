#include "liftlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace liftlab::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field \"") + key + "\"");
  return *it;
}

Index index_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) schema(std::string("\"") + key + "\" must be a non-negative integer");
  return static_cast<Index>(v.get<long long>());
}

double real_value(const Json& v) {
  if (!v.is_number()) schema("expected a number");
  return v.get<double>();
}

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json dims_json(const Dims& d) { return Json{{"H0", d.H0}, {"H", d.H}, {"Hp", d.Hp}}; }

Json array_of(const std::vector<double>& v) {
  Json a = Json::array();
  for (const double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back(to_json(m(i, k)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j) {
  const Index rows = index_field(j, "rows");
  const Index cols = index_field(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    schema("matrix data must hold rows*cols entries");
  }
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const Json& z = data[static_cast<std::size_t>(i * cols + k)];
      if (!z.is_array() || z.size() != 2) schema("complex entries are [re, im]");
      m(i, k) = Complex(real_value(z[0]), real_value(z[1]));
    }
  }
  return m;
}

Json to_json(const LiftingDataSet& ds) {
  return Json{{"dims", dims_json(ds.dims)},
              {"A", to_json(ds.A)},
              {"Tp", to_json(ds.Tp)},
              {"R", to_json(ds.R)},
              {"Q", to_json(ds.Q)}};
}

LiftingDataSet dataset_from_json(const Json& j) {
  const Json& d = field(j, "dims");
  LiftingDataSet ds;
  ds.dims = Dims{index_field(d, "H0"), index_field(d, "H"), index_field(d, "Hp")};
  ds.A = matrix_from_json(field(j, "A"));
  ds.Tp = matrix_from_json(field(j, "Tp"));
  ds.R = matrix_from_json(field(j, "R"));
  ds.Q = matrix_from_json(field(j, "Q"));
  try {
    ds.check_shapes();
  } catch (const Error& e) {
    schema(std::string("data set shapes: ") + e.what());
  }
  return ds;
}

Json to_json(const Realization& r) {
  return Json{{"Z", to_json(r.Z)}, {"B", to_json(r.B)}, {"C", to_json(r.C)}, {"D", to_json(r.D)}};
}

Realization realization_from_json(const Json& j) {
  Realization r{matrix_from_json(field(j, "Z")), matrix_from_json(field(j, "B")), matrix_from_json(field(j, "C")),
                matrix_from_json(field(j, "D"))};
  try {
    r.check_shapes();
  } catch (const Error& e) {
    schema(std::string("realization shapes: ") + e.what());
  }
  return r;
}

Json to_json(const ParameterDescriptor& p) {
  switch (p.kind) {
    case ParameterDescriptor::Kind::Central: return Json{{"kind", "central"}};
    case ParameterDescriptor::Kind::Seeded: return Json{{"kind", "seeded"}, {"seed", p.seed}};
    case ParameterDescriptor::Kind::Explicit: return Json{{"kind", "realization"}, {"G", to_json(*p.g)}};
  }
  return Json();
}

ParameterDescriptor descriptor_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) schema("parameter kind must be a string");
  const std::string k = kind.get<std::string>();
  ParameterDescriptor p;
  if (k == "central") return p;
  if (k == "seeded") {
    const Json& s = field(j, "seed");
    if (!s.is_number_unsigned()) schema("seed must be an unsigned integer");
    p.kind = ParameterDescriptor::Kind::Seeded;
    p.seed = s.get<std::uint64_t>();
    return p;
  }
  if (k == "realization") {
    p.kind = ParameterDescriptor::Kind::Explicit;
    p.g = realization_from_json(field(j, "G"));
    return p;
  }
  schema("unknown parameter kind \"" + k + "\"");
}

Json to_json(const Interpolant& ip) {
  Json gamma = Json::array();
  for (const CMatrix& c : ip.gamma.coeffs) gamma.push_back(to_json(c));
  return Json{{"dataset_hash", dataset_hash(ip.ds)},
              {"N", ip.N},
              {"A", to_json(ip.A)},
              {"gamma", std::move(gamma)},
              {"parameter", to_json(ip.parameter)}};
}

Interpolant interpolant_from_json(const Json& j, const LiftingDataSet& ds) {
  const Json& hash = field(j, "dataset_hash");
  if (!hash.is_string()) schema("dataset_hash must be a string");
  if (hash.get<std::string>() != dataset_hash(ds)) schema("interpolant was computed for a different data set");
  Interpolant ip;
  ip.ds = ds;
  ip.N = index_field(j, "N");
  ip.A = matrix_from_json(field(j, "A"));
  const Json& gamma = field(j, "gamma");
  if (!gamma.is_array() || static_cast<Index>(gamma.size()) != ip.N + 1) schema("gamma must hold N+1 coefficients");
  ip.gamma = TaylorSeries{ds.dims.H, ds.dims.Hp, {}};
  for (const Json& c : gamma) {
    CMatrix m = matrix_from_json(c);
    if (m.rows() != ds.dims.Hp || m.cols() != ds.dims.H) schema("gamma coefficients must be Hp x H");
    ip.gamma.coeffs.push_back(std::move(m));
  }
  ip.parameter = descriptor_from_json(field(j, "parameter"));
  return ip;
}

std::string dataset_hash(const LiftingDataSet& ds) {
  const std::string text = to_json(ds).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json to_json(const ValidationReport& r) {
  return Json{{"residual_intertwine", num(r.residual_intertwine)},
              {"min_eig_order", num(r.min_eig_order)},
              {"norm_A", num(r.norm_A)},
              {"norm_Tp", num(r.norm_Tp)},
              {"pass_A", r.pass_A},
              {"pass_Tp", r.pass_Tp},
              {"pass_intertwine", r.pass_intertwine},
              {"pass_order", r.pass_order},
              {"pass", r.pass}};
}

Json to_json(const VerificationReport& r) {
  return Json{{"residual_projection", num(r.residual_projection)},
              {"residual_intertwine", array_of(r.residual_intertwine)},
              {"max_residual", num(r.max_residual)},
              {"residual_scale", num(r.residual_scale)},
              {"gram_excess", num(r.gram_excess)},
              {"partial_gram_max", array_of(r.partial_gram_max)},
              {"pass", r.pass}};
}

Json to_json(const UniquenessReport& r) {
  return Json{{"flags",
               {{"tp_isometry", r.tp_isometry},
                {"F_full", r.f_full},
                {"FAp_full", r.fap_full},
                {"FTA_in_Fp", r.fta_in_fp},
                {"classical_shape", r.classical_shape}}},
              {"dims",
               {{"F", r.dim_f},
                {"D_A", r.dim_da},
                {"Fp", r.dim_fp},
                {"ambient", r.dim_target},
                {"FAp", r.dim_fap},
                {"D_circ", r.dim_dcirc}}},
              {"verdicts",
               {{"unique_interpolant_sufficient", r.unique_interpolant_sufficient},
                {"proper_param_sufficient", r.proper_param_sufficient}}}};
}

Json to_json(const DefectFrames& f) {
  return Json{{"D_B", to_json(f.d_b)},
              {"dims",
               {{"D_B", f.frame_db.dim()},
                {"D_circ", f.frame_dcirc.dim()},
                {"F_B", f.frame_fb.dim()},
                {"F_Bp", f.frame_fbp.dim()},
                {"G_B", f.frame_gb.dim()},
                {"G_Bp", f.frame_gbp.dim()}}},
              {"horizon_residual", num(f.horizon_residual)},
              {"tail_caveat", num(f.tail_caveat)}};
}

Json to_json(const InterpolantDefectData& d) {
  Json j = to_json(d.frames);
  j["omega_B"] = to_json(d.omega_b);
  j["omega_B_fit_residual"] = num(d.omega_b_fit_residual);
  j["norm_identity_residual"] = num(d.norm_identity_residual);
  return j;
}

Json to_json(const CollisionReport& r) {
  return Json{{"n_params", r.n_params},
              {"distinct_parameters", r.distinct_parameters},
              {"distinct_interpolants", r.distinct_interpolants},
              {"collision_pairs", r.collision_pairs},
              {"proper_param", r.proper_param},
              {"inconsistent", r.inconsistent}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << dump(j);
}

}  // namespace liftlab::io
