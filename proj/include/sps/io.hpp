/// @file io.hpp
/// @brief CSV and JSON artifacts.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "sps/experiments.hpp"
#include "sps/fourier.hpp"
#include "sps/laurent.hpp"
#include "sps/schemes.hpp"
#include "sps/stencil.hpp"
#include "sps/time_integration.hpp"

namespace sps {

using Json = nlohmann::ordered_json;

/// "%.17g".
std::string format_double(double x);

/// Header "i,j,x,y,u,v,p", rows in storage order (i outer, j inner).
void write_field_csv(const std::filesystem::path& path, const FieldSet& q);
/// Header "t,value".
void write_series_csv(const std::filesystem::path& path, const TimeSeries& s);
void write_json(const std::filesystem::path& path, const Json& j);
/// Writes `meta` next to `artifact` as "<artifact>.meta.json".
void write_sidecar(const std::filesystem::path& artifact, const Json& meta);

Json stencil_json(const ScalarStencil& st);
Json stencil_json(const MatrixStencil& st);
/// Exact coefficients as decimal or "p/q" strings, with the spacing unit.
Json stencil_json(const ExactScalar& st);
Json row_json(const ExactRow& row);
Json row_json(const VecStencilRow& row);

Json grid_json(const GridSpec& g);
Json params_json(const AcousticParams& p);
Json scheme_json(const SchemeSpec& spec);

/// {scheme, samples: [{thx, thy, absdet, kernel_dim, sigma_min_ratio, ...}], verdict}.
Json verdict_json(const std::string& scheme, const SpectralVerdict& v);
Json scaling_json(const ScalingReport& r);
Json nullspace_json(const std::string& op, const NullspaceResult& r);
Json identity_json(const IdentityResult& r);
Json moore_scan_json(const MooreScanReport& r);
Json taylor_json(const TaylorSeries& t);
Json conserved_json(const ConservedOperator& op);
Json fit_json(const DecayFit& f);

}  // namespace sps
