#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "liftlab/analysis.hpp"

namespace liftlab::io {

using Json = nlohmann::ordered_json;

// Input schemas. Every from_json throws Error(ErrorKind::Schema) on malformed input.
Json to_json(Complex z);
Json to_json(const CMatrix& m);
Json to_json(const LiftingDataSet& ds);
Json to_json(const Realization& r);
Json to_json(const ParameterDescriptor& p);
Json to_json(const Interpolant& ip);

CMatrix matrix_from_json(const Json& j);
LiftingDataSet dataset_from_json(const Json& j);
Realization realization_from_json(const Json& j);
ParameterDescriptor descriptor_from_json(const Json& j);
/// Needs the data set the interpolant was computed for; throws Schema when
/// the stored hash does not match.
Interpolant interpolant_from_json(const Json& j, const LiftingDataSet& ds);

/// FNV-1a 64 over the compact dump of to_json(ds), as 16 hex digits.
std::string dataset_hash(const LiftingDataSet& ds);

// Reports (output only). Non-finite numbers are written as null.
Json to_json(const ValidationReport& r);
Json to_json(const VerificationReport& r);
Json to_json(const UniquenessReport& r);
Json to_json(const DefectFrames& f);
Json to_json(const InterpolantDefectData& d);
Json to_json(const CollisionReport& r);

/// Text form used for every file and stdout: two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse(const std::string& text);
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace liftlab::io
