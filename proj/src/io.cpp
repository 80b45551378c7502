#include "sps/io.hpp"

#include <cstdio>
#include <fstream>

namespace sps {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const FieldSet& q) {
  auto os = open_out(path);
  os << "i,j,x,y,u,v,p\n";
  const GridSpec& g = q.grid;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const std::size_t k = g.index(i, j);
      os << i << ',' << j << ',' << format_double(g.x_center(i)) << ','
         << format_double(g.y_center(j)) << ',' << format_double(q.u[k]) << ','
         << format_double(q.v[k]) << ',' << format_double(q.p[k]) << '\n';
    }
  }
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& s) {
  auto os = open_out(path);
  os << "t,value\n";
  for (std::size_t k = 0; k < s.t.size(); ++k)
    os << format_double(s.t[k]) << ',' << format_double(s.value[k]) << '\n';
}

void write_json(const std::filesystem::path& path, const Json& j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

void write_sidecar(const std::filesystem::path& artifact, const Json& meta) {
  write_json(artifact.string() + ".meta.json", meta);
}

Json stencil_json(const ScalarStencil& st) {
  Json entries = Json::array();
  for (const auto& [off, c] : st.entries()) entries.push_back({{"sx", off.sx}, {"sy", off.sy}, {"value", c}});
  return {{"radius", st.radius()}, {"entries", entries}};
}

Json stencil_json(const MatrixStencil& st) {
  Json entries = Json::array();
  for (const auto& [off, m] : st.coefficients()) {
    Json rows = Json::array();
    for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
    entries.push_back({{"sx", off.sx}, {"sy", off.sy}, {"matrix", rows}});
  }
  return {{"radius", st.radius()}, {"entries", entries}};
}

Json stencil_json(const ExactScalar& st) {
  Json entries = Json::array();
  for (const auto& [off, c] : st.shape.entries())
    entries.push_back({{"sx", off.sx}, {"sy", off.sy}, {"value", to_exact_string(c)}});
  return {{"radius", st.shape.radius()}, {"unit", st.unit.to_string()}, {"entries", entries}};
}

Json row_json(const ExactRow& row) { return {{"u", stencil_json(row.u)}, {"v", stencil_json(row.v)}}; }

Json row_json(const VecStencilRow& row) {
  return {{"u", stencil_json(row.u)}, {"v", stencil_json(row.v)}};
}

Json grid_json(const GridSpec& g) {
  return {{"nx", g.nx}, {"ny", g.ny}, {"dx", g.dx}, {"dy", g.dy}, {"boundary", "periodic"}};
}

Json params_json(const AcousticParams& p) { return {{"c", p.c}, {"eps", p.eps}}; }

Json scheme_json(const SchemeSpec& spec) {
  Json j = {{"name", spec.name},
            {"family", to_string(spec.family)},
            {"params", params_json(spec.params)},
            {"diffusion",
             {{"a1", spec.diffusion.a1}, {"a2", spec.diffusion.a2}, {"a3", spec.diffusion.a3},
              {"a4", spec.diffusion.a4}}},
            {"claims_stationarity_preserving", spec.claims.stationarity_preserving}};
  if (spec.claims.fe_cfl_limit) j["claims_fe_cfl_limit"] = *spec.claims.fe_cfl_limit;
  return j;
}

namespace {

Json complex_vec(const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

}  // namespace

Json verdict_json(const std::string& scheme, const SpectralVerdict& v) {
  Json samples = Json::array();
  for (const auto& s : v.samples) {
    Json j = {{"thx", s.phase.thx},
              {"thy", s.phase.thy},
              {"absdet", s.abs_det},
              {"kernel_dim", s.kernel_dim},
              {"expected_kernel_dim", s.expected_kernel_dim},
              {"sigma_min_ratio", s.sigma_min_ratio},
              {"eigvec_condition", s.eigvec_condition},
              {"diagonalizable", s.diagonalizable},
              {"generic", s.generic}};
    if (s.right) j["right_kernel"] = complex_vec(*s.right);
    if (s.left) j["left_kernel"] = complex_vec(s.left->transpose());
    samples.push_back(std::move(j));
  }
  return {{"scheme", scheme},
          {"samples", samples},
          {"judged", v.judged},
          {"withheld", v.withheld},
          {"verdict", v.is_stationarity_preserving ? "stationarity preserving"
                                                   : "not stationarity preserving"},
          {"is_stationarity_preserving", v.is_stationarity_preserving}};
}

Json scaling_json(const ScalingReport& r) {
  return {{"checked", r.checked},
          {"skipped", r.skipped},
          {"max_c_deviation", r.max_c_deviation},
          {"max_eps_deviation", r.max_eps_deviation},
          {"max_zero_drift", r.max_zero_drift},
          {"notes", r.notes},
          {"pass", r.pass}};
}

Json nullspace_json(const std::string& op, const NullspaceResult& r) {
  Json basis = Json::array();
  for (const auto& b : r.basis) basis.push_back(row_json(b));
  return {{"operator", op},
          {"radius", r.radius},
          {"unknowns", r.unknowns},
          {"equations", r.equations},
          {"nullspace_dim", r.dimension()},
          {"leading_second_order", r.leading_second_order},
          {"basis", basis}};
}

Json identity_json(const IdentityResult& r) {
  return {{"name", r.name}, {"holds", r.holds}, {"residual", r.residual.to_string()}};
}

Json moore_scan_json(const MooreScanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"alpha", to_exact_string(e.alpha)},
                       {"beta", to_exact_string(e.beta)},
                       {"nullspace_dim", e.nullspace_dim},
                       {"on_averaged_ray", e.on_averaged_ray}});
  return {{"members", r.entries.size()},
          {"positive_members", r.positive_members},
          {"positive_only_on_averaged_ray", r.positive_only_on_averaged_ray},
          {"entries", entries}};
}

Json taylor_json(const TaylorSeries& t) {
  Json terms = Json::array();
  for (const auto& [k, c] : t.terms)
    terms.push_back({{"component", k.component == Component::u ? "u" : "v"},
                     {"d_x", k.m},
                     {"d_y", k.n},
                     {"dx_power", k.px},
                     {"dy_power", k.py},
                     {"coefficient", to_exact_string(c)}});
  return terms;
}

Json conserved_json(const ConservedOperator& op) {
  return {{"radius", op.radius},
          {"nullspace_dim", op.nullspace_dim},
          {"u", stencil_json(op.velocity.u)},
          {"v", stencil_json(op.velocity.v)},
          {"p", stencil_json(op.pressure)}};
}

Json fit_json(const DecayFit& f) {
  return {{"lambda", f.rate},
          {"intercept", f.intercept},
          {"t_a", f.t_a},
          {"t_b", f.t_b},
          {"residual", f.residual},
          {"points", f.points}};
}

}  // namespace sps
