// Command-line front end: analyze | certify | simulate | sweep | catalog.
//
// Exit codes: 0 pass, 1 certification failure, 2 usage error or unknown
// scheme, 3 numerical instability.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sps/experiments.hpp"
#include "sps/fourier.hpp"
#include "sps/io.hpp"
#include "sps/laurent.hpp"
#include "sps/schemes.hpp"
#include "sps/time_integration.hpp"

namespace fs = std::filesystem;
using namespace sps;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCertification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInstability = 3;

constexpr const char* kDomainNote = "periodic unit square (fixed convention)";

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string scheme = "roe";
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
  std::string c1 = "1", c2 = "1";
  double eps = 1.0;
  double c = 1.0;
  std::string grid = "50";
  std::optional<double> dx, dy;
  double cfl = 0.2;
  std::optional<double> t_end;
  int k_samples = 200;
  std::uint64_t seed = 0;
  std::string out = "out";
  int jobs = 1;
  std::vector<double> eps_list = {1.0, 0.1, 0.01};
  std::string divergence = "both";
  int radius = 1;
  bool identity_only = false;
  bool cfl_sweep = false;
  double cfl_max = 1.5;
  double cfl_step = 0.05;
  int horizon = 500;
  int probe_every = 1;
};

// ------------------------------------------------------------------ config

/// Applies a flat JSON object; unknown keys are rejected.
void apply_config(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  using Setter = std::function<void(const nlohmann::json&)>;
  const std::map<std::string, Setter> setters = {
      {"scheme", [&](const auto& v) { cfg.scheme = v.template get<std::string>(); }},
      {"a1", [&](const auto& v) { cfg.a1 = v.template get<double>(); }},
      {"a2", [&](const auto& v) { cfg.a2 = v.template get<double>(); }},
      {"a3", [&](const auto& v) { cfg.a3 = v.template get<double>(); }},
      {"a4", [&](const auto& v) { cfg.a4 = v.template get<double>(); }},
      {"c1", [&](const auto& v) { cfg.c1 = v.is_string() ? v.template get<std::string>() : v.dump(); }},
      {"c2", [&](const auto& v) { cfg.c2 = v.is_string() ? v.template get<std::string>() : v.dump(); }},
      {"eps", [&](const auto& v) { cfg.eps = v.template get<double>(); }},
      {"c", [&](const auto& v) { cfg.c = v.template get<double>(); }},
      {"grid", [&](const auto& v) { cfg.grid = v.is_string() ? v.template get<std::string>() : v.dump(); }},
      {"dx", [&](const auto& v) { cfg.dx = v.template get<double>(); }},
      {"dy", [&](const auto& v) { cfg.dy = v.template get<double>(); }},
      {"cfl", [&](const auto& v) { cfg.cfl = v.template get<double>(); }},
      {"t_end", [&](const auto& v) { cfg.t_end = v.template get<double>(); }},
      {"k_samples", [&](const auto& v) { cfg.k_samples = v.template get<int>(); }},
      {"seed", [&](const auto& v) { cfg.seed = v.template get<std::uint64_t>(); }},
      {"out", [&](const auto& v) { cfg.out = v.template get<std::string>(); }},
      {"jobs", [&](const auto& v) { cfg.jobs = v.template get<int>(); }},
      {"eps_list", [&](const auto& v) { cfg.eps_list = v.template get<std::vector<double>>(); }},
      {"divergence", [&](const auto& v) { cfg.divergence = v.template get<std::string>(); }},
      {"radius", [&](const auto& v) { cfg.radius = v.template get<int>(); }},
      {"identity_only", [&](const auto& v) { cfg.identity_only = v.template get<bool>(); }},
      {"cfl_sweep", [&](const auto& v) { cfg.cfl_sweep = v.template get<bool>(); }},
      {"cfl_max", [&](const auto& v) { cfg.cfl_max = v.template get<double>(); }},
      {"cfl_step", [&](const auto& v) { cfg.cfl_step = v.template get<double>(); }},
      {"horizon", [&](const auto& v) { cfg.horizon = v.template get<int>(); }},
      {"probe_every", [&](const auto& v) { cfg.probe_every = v.template get<int>(); }},
  };
  for (const auto& [key, value] : j.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw UsageError("unknown config key '" + key + "'");
    try {
      it->second(value);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad value for config key '" + key + "': " + e.what());
    }
  }
}

/// Binds every flag to `flags` and records, per flag, how to copy it into the
/// effective configuration. Only flags given on the command line are copied,
/// so they override the config file.
class FlagSet {
 public:
  explicit FlagSet(CLI::App& app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app_.add_option(name, flags_.*field, help);
    copies_.push_back({opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
    return opt;
  }
  CLI::Option* add_flag(const std::string& name, bool RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app_.add_flag(name, flags_.*field, help);
    copies_.push_back({opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
    return opt;
  }

  RunConfig resolve(const std::string& config_path) const {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw UsageError("cannot read config file " + config_path);
      nlohmann::json j;
      try {
        is >> j;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file is not valid JSON: " + std::string(e.what()));
      }
      apply_config(cfg, j);
    }
    for (const auto& [opt, copy] : copies_)
      if (opt->count() > 0) copy(cfg, flags_);
    return cfg;
  }

 private:
  CLI::App& app_;
  RunConfig flags_;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&, const RunConfig&)>>> copies_;
};

void add_common(FlagSet& f) {
  f.add("--scheme", &RunConfig::scheme, "scheme name (see catalog)");
  f.add("--a1", &RunConfig::a1, "dimsplit diffusion entry a1");
  f.add("--a2", &RunConfig::a2, "dimsplit diffusion entry a2");
  f.add("--a3", &RunConfig::a3, "dimsplit diffusion entry a3");
  f.add("--a4", &RunConfig::a4, "dimsplit diffusion entry a4");
  f.add("--c1", &RunConfig::c1, "consistent diffusion parameter c1 (exact rational)");
  f.add("--c2", &RunConfig::c2, "consistent diffusion parameter c2 (exact rational)");
  f.add("--eps", &RunConfig::eps, "Mach scaling eps");
  f.add("--c", &RunConfig::c, "sound speed c");
  f.add("--grid", &RunConfig::grid, "cell counts NX[,NY]");
  f.add("--dx", &RunConfig::dx, "cell width (default 1/NX)");
  f.add("--dy", &RunConfig::dy, "cell height (default 1/NY)");
  f.add("--cfl", &RunConfig::cfl, "CFL number (c/eps) dt / min(dx, dy)");
  f.add("--t-end", &RunConfig::t_end, "final time");
  f.add("--k-samples", &RunConfig::k_samples, "number of generic wavevector samples");
  f.add("--seed", &RunConfig::seed, "seed for sample shifts and random data");
  f.add("--out", &RunConfig::out, "output directory");
  f.add("--jobs", &RunConfig::jobs, "parallel jobs across sweep points");
}

GridSpec make_grid(const RunConfig& cfg) {
  int nx = 0, ny = 0;
  std::string text = cfg.grid;
  for (char& ch : text)
    if (ch == '[' || ch == ']') ch = ' ';
  std::istringstream is(text);
  char sep = 0;
  if (!(is >> nx)) throw UsageError("bad --grid '" + cfg.grid + "'");
  if (is >> sep) {
    if (sep != ',' || !(is >> ny)) throw UsageError("bad --grid '" + cfg.grid + "'");
  } else {
    ny = nx;
  }
  GridSpec g{nx, ny, cfg.dx.value_or(1.0 / nx), cfg.dy.value_or(1.0 / ny)};
  try {
    g.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return g;
}

DiffusionParams diffusion(const RunConfig& cfg) { return {cfg.a1, cfg.a2, cfg.a3, cfg.a4}; }

SchemeSpec scheme_from(const RunConfig& cfg, const GridSpec& grid) {
  try {
    return make_scheme(cfg.scheme, {cfg.c, cfg.eps}, grid, diffusion(cfg));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Json run_metadata(const std::string& command, const RunConfig& cfg, const GridSpec& grid) {
  return {{"command", command},
          {"scheme", cfg.scheme},
          {"diffusion", {{"a1", cfg.a1}, {"a2", cfg.a2}, {"a3", cfg.a3}, {"a4", cfg.a4}}},
          {"c", cfg.c},
          {"eps", cfg.eps},
          {"grid", grid_json(grid)},
          {"cfl", cfg.cfl},
          {"cfl_normalization", kCflNormalization},
          {"k_samples", cfg.k_samples},
          {"seed", cfg.seed},
          {"domain", kDomainNote}};
}

void write_artifact_json(const fs::path& path, const Json& body, const Json& meta) {
  write_json(path, body);
  write_sidecar(path, meta);
}

// ----------------------------------------------------------------- analyze

int cmd_analyze(const RunConfig& cfg) {
  const GridSpec grid = make_grid(cfg);
  const SchemeSpec spec = scheme_from(cfg, grid);
  if (cfg.k_samples <= 0) throw UsageError("--k-samples must be positive");

  std::vector<KSample> samples = generic_phase_samples(cfg.k_samples, cfg.seed);
  const auto structured = structured_phase_samples();
  samples.insert(samples.end(), structured.begin(), structured.end());
  const SpectralVerdict verdict = det_scan(spec.stencil, spec.params, grid, samples);

  Json report = {{"scheme", scheme_json(spec)}, {"grid", grid_json(grid)}};
  report["verdict"] = verdict_json(spec.name, verdict);

  bool ok = verdict.is_stationarity_preserving == spec.claims.stationarity_preserving;

  if (spec.family != SchemeFamily::dimsplit) {
    const auto generic = generic_phase_samples(cfg.k_samples, cfg.seed);
    const ScalingReport sc =
        eigenvalue_scaling_check(scheme_factory(cfg.scheme, grid), cfg.c, cfg.eps, generic);
    report["eigenvalue_scaling"] = scaling_json(sc);
    ok = ok && sc.pass;
    std::cout << "eigenvalue scaling: " << (sc.pass ? "linear in c/eps" : "FAILED") << " ("
              << sc.checked << " samples, max deviation "
              << std::max(sc.max_c_deviation, sc.max_eps_deviation) << ")\n";
  } else {
    report["eigenvalue_scaling"] = "not applicable: raw diffusion entries do not follow c and eps";
  }

  if (verdict.is_stationarity_preserving) {
    report["divergence_row"] = row_json(spec.divergence_row());
    try {
      const ConservedOperator op = extract_conserved_operator(spec);
      report["conserved_operator"] = conserved_json(op);
    } catch (const Error& e) {
      report["conserved_operator"] = std::string("not found: ") + e.what();
    }
  }

  int min_dim = 3, max_dim = 0;
  for (const auto& s : verdict.samples) {
    if (!s.generic) continue;
    min_dim = std::min(min_dim, s.kernel_dim);
    max_dim = std::max(max_dim, s.kernel_dim);
  }
  std::cout << "scheme " << spec.name << ": "
            << (verdict.is_stationarity_preserving ? "stationarity preserving"
                                                   : "not stationarity preserving")
            << " (" << verdict.judged << " judged, " << verdict.withheld
            << " withheld, kernel dim range [" << min_dim << ", " << max_dim << "])\n";
  std::cout << "claim: " << (spec.claims.stationarity_preserving ? "SP" : "not SP") << " -> "
            << (ok ? "match" : "MISMATCH") << "\n";

  const fs::path path = fs::path(cfg.out) / ("analyze_" + spec.name + ".json");
  write_artifact_json(path, report, run_metadata("analyze", cfg, grid));
  std::cout << "wrote " << path.string() << "\n";
  return ok ? kExitPass : kExitCertification;
}

// ----------------------------------------------------------------- certify

int cmd_certify(const RunConfig& cfg) {
  bool ok = true;
  Json report = Json::object();
  auto fail = [&](const std::string& what, const std::string& residual) {
    ok = false;
    std::cout << "FAIL " << what << "\n  residual: " << residual << "\n";
  };

  Json ids = Json::array();
  for (const auto& r : operator_identity_check()) {
    ids.push_back(identity_json(r));
    std::cout << "identity " << r.name << ": " << (r.holds ? "holds" : "FAILS") << "\n";
    if (!r.holds) fail(r.name, r.residual.to_string());
  }
  report["identities"] = ids;

  if (!cfg.identity_only) {
    if (cfg.divergence != "both" && cfg.divergence != "central" && cfg.divergence != "averaged")
      throw UsageError("--divergence must be central, averaged or both");
    Json ns = Json::array();
    auto check = [&](const std::string& name, const ExactRow& div, int expected) {
      NullspaceResult r;
      try {
        r = consistency_nullspace(div, cfg.radius);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      std::cout << "nullspace(" << name << ", radius " << cfg.radius << ") dimension "
                << r.dimension() << "\n";
      ns.push_back(nullspace_json(name, r));
      if (cfg.radius == 1 && r.dimension() != expected)
        fail("nullspace dimension for " + name, std::to_string(r.dimension()));
      if (!r.leading_second_order) fail("second-order leading term for " + name, "rank deficit");
      for (const auto& b : r.basis)
        if (!cross_consistency(stencil_to_symbol(b), stencil_to_symbol(div)))
          fail("basis member not cross consistent",
               cross(stencil_to_symbol(b), stencil_to_symbol(div)).to_string());
      return r;
    };
    if (cfg.divergence != "averaged") check("central_div", central_div(), 0);
    if (cfg.divergence != "central") {
      const NullspaceResult r = check("averaged_div", averaged_div(), 2);
      if (cfg.radius == 1) {
        const bool span = same_span(r.basis, {consistent_diffusion(1, 0), consistent_diffusion(0, 1)});
        std::cout << "basis spans consistent_diffusion(1,0), (0,1): " << (span ? "yes" : "NO") << "\n";
        report["basis_matches_consistent_diffusion"] = span;
        if (!span) fail("basis span", "basis differs from consistent_diffusion(1,0), (0,1)");

        OrderConstraints sym;
        sym.xy_swap_symmetric = true;
        const NullspaceResult rs = consistency_nullspace(averaged_div(), 1, sym);
        std::cout << "nullspace(averaged_div, xy-symmetric) dimension " << rs.dimension() << "\n";
        report["symmetric_nullspace"] = nullspace_json("averaged_div (xy-symmetric)", rs);
        if (rs.dimension() != 1) fail("symmetric nullspace dimension", std::to_string(rs.dimension()));
      }

      const Rational c1 = parse_rational(cfg.c1), c2 = parse_rational(cfg.c2);
      const LaurentRow cd = stencil_to_symbol(consistent_diffusion(c1, c2));
      const bool cc = cross_consistency(cd, stencil_to_symbol(averaged_div()));
      std::cout << "consistent_diffusion(" << to_exact_string(c1) << ", " << to_exact_string(c2)
                << ") cross consistent with averaged_div: " << (cc ? "yes" : "NO") << "\n";
      report["consistent_diffusion"] = {{"c1", to_exact_string(c1)},
                                        {"c2", to_exact_string(c2)},
                                        {"cross_consistent", cc},
                                        {"taylor", taylor_json(taylor_expand(cd, 3))}};
      if (!cc) fail("cross consistency", cross(cd, stencil_to_symbol(averaged_div())).to_string());

      report["averaged_div_taylor"] = taylor_json(taylor_expand(stencil_to_symbol(averaged_div()), 2));
    }
    report["nullspaces"] = ns;

    if (cfg.radius == 1 && cfg.divergence == "both") {
      const MooreScanReport scan = moore_symmetry_scan();
      std::cout << "moore scan: " << scan.entries.size() << " members, " << scan.positive_members
                << " with positive nullspace, only on averaged ray: "
                << (scan.positive_only_on_averaged_ray ? "yes" : "NO") << "\n";
      report["moore_scan"] = moore_scan_json(scan);
      if (!scan.positive_only_on_averaged_ray) fail("moore scan", "positive dimension off the averaged ray");
    }
  }

  report["pass"] = ok;
  const fs::path path = fs::path(cfg.out) / "certify.json";
  Json meta = {{"command", "certify"},
               {"divergence", cfg.divergence},
               {"radius", cfg.radius},
               {"identity_only", cfg.identity_only},
               {"c1", cfg.c1},
               {"c2", cfg.c2}};
  write_artifact_json(path, report, meta);
  std::cout << (ok ? "certification passed" : "certification FAILED") << "\nwrote " << path.string()
            << "\n";
  return ok ? kExitPass : kExitCertification;
}

// ---------------------------------------------------------------- simulate

Json benchmark_summary(const BenchmarkRun& r, const RunConfig& cfg, const GridSpec& grid,
                       const std::map<std::string, std::string>& files) {
  Json j = {{"scheme", cfg.scheme},
            {"eps", r.eps},
            {"c", cfg.c},
            {"grid", grid_json(grid)},
            {"cfl", cfg.cfl},
            {"dt", r.dt},
            {"steps", r.steps},
            {"t_end", r.t_end},
            {"dxu_ratio", r.dxu_ratio},
            {"dyu_ratio", r.dyu_ratio},
            {"residuals", {{"final_stationarity_residual", r.final_residual}}},
            {"files", files}};
  if (r.fit_ok) {
    j["lambda_fit"] = r.fit.rate;
    j["fit"] = fit_json(r.fit);
  } else {
    j["lambda_fit"] = nullptr;
    j["fit_error"] = r.fit_error;
  }
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

std::string eps_tag(double eps) {
  std::ostringstream os;
  os << eps;
  return os.str();
}

Json write_benchmark(const BenchmarkRun& r, const RunConfig& cfg, const GridSpec& grid,
                     const fs::path& dir) {
  const std::string stem = cfg.scheme + "_eps" + eps_tag(r.eps);
  Json meta = run_metadata("simulate", cfg, grid);
  meta["eps"] = r.eps;
  meta["t_end"] = r.t_end;
  meta["dt"] = r.dt;
  meta["vortex"] = {{"x0", 0.5}, {"y0", 0.5}, {"r1", 0.2}, {"r2", 0.4}, {"s", 1.0}, {"p0", 1.0}};
  if (r.warning) meta["warning"] = *r.warning;

  std::map<std::string, std::string> files;
  auto emit_series = [&](const std::string& key, const TimeSeries& s) {
    const fs::path p = dir / (stem + "_" + key + ".csv");
    write_series_csv(p, s);
    Json m = meta;
    m["probe"] = key;
    write_sidecar(p, m);
    files[key] = p.filename().string();
  };
  emit_series("dxu_l1", r.dxu);
  emit_series("dyu_l1", r.dyu);
  auto emit_field = [&](const std::string& key, const FieldSet& q) {
    const fs::path p = dir / (stem + "_" + key + ".csv");
    write_field_csv(p, q);
    write_sidecar(p, meta);
    files[key] = p.filename().string();
  };
  emit_field("initial_field", r.initial);
  emit_field("final_field", r.final_state);
  Json summary = benchmark_summary(r, cfg, grid, files);
  const fs::path sp = dir / (stem + "_summary.json");
  write_artifact_json(sp, summary, meta);
  return summary;
}

BenchmarkOptions benchmark_options(const RunConfig& cfg, const GridSpec& grid) {
  if (grid.dx != 1.0 / grid.nx || grid.dy != 1.0 / grid.ny)
    throw UsageError("the vortex benchmark runs on the unit square; drop --dx/--dy");
  BenchmarkOptions o;
  o.scheme = cfg.scheme;
  o.diffusion = diffusion(cfg);
  o.c = cfg.c;
  o.nx = grid.nx;
  o.ny = grid.ny;
  o.cfl = cfg.cfl;
  o.t_end = cfg.t_end;
  o.jobs = cfg.jobs;
  o.probe_every = cfg.probe_every;
  return o;
}

int cmd_cfl_sweep(const RunConfig& cfg, const GridSpec& grid) {
  const SchemeSpec spec = scheme_from(cfg, grid);
  if (!(cfg.cfl_step > 0.0) || !(cfg.cfl_max >= cfg.cfl_step))
    throw UsageError("bad cfl sweep range");
  std::vector<double> cfls;
  const int n = static_cast<int>(std::floor(cfg.cfl_max / cfg.cfl_step + 1e-9));
  for (int k = 1; k <= n; ++k) cfls.push_back(k * cfg.cfl_step);
  const FieldSet q0 = gresho_vortex(grid, {}, spec.params).state;
  const CflSweepResult res = cfl_sweep(spec, q0, cfls, cfg.horizon);

  const fs::path dir(cfg.out);
  const fs::path csv = dir / (spec.name + "_cfl_sweep.csv");
  {
    std::ostringstream body;
    body << "cfl,growth,stable\n";
    for (std::size_t k = 0; k < res.cfl.size(); ++k)
      body << format_double(res.cfl[k]) << ',' << format_double(res.growth[k]) << ','
           << (res.stable[k] ? 1 : 0) << '\n';
    fs::create_directories(dir);
    std::ofstream(csv, std::ios::binary) << body.str();
  }
  Json meta = run_metadata("simulate --cfl-sweep", cfg, grid);
  meta["horizon_steps"] = cfg.horizon;
  meta["growth_limit"] = 2.0;
  write_sidecar(csv, meta);
  const fs::path js = dir / (spec.name + "_cfl_sweep.json");
  write_artifact_json(js, {{"scheme", spec.name}, {"max_stable_cfl", res.max_stable}, {"csv", csv.filename().string()}},
                      meta);
  std::cout << "scheme " << spec.name << ": max stable cfl " << res.max_stable << " (horizon "
            << cfg.horizon << " steps)\nwrote " << csv.string() << "\n";
  return kExitPass;
}

int cmd_simulate(const RunConfig& cfg) {
  const GridSpec grid = make_grid(cfg);
  scheme_from(cfg, grid);
  if (cfg.cfl_sweep) return cmd_cfl_sweep(cfg, grid);
  BenchmarkOptions o = benchmark_options(cfg, grid);
  o.eps_list = {cfg.eps};
  if (!cfg.t_end) o.t_end = 0.3;
  const auto runs = vortex_benchmark(o);
  const BenchmarkRun& r = runs.front();
  write_benchmark(r, cfg, grid, cfg.out);
  std::cout << "scheme " << cfg.scheme << " eps " << r.eps << ": " << r.steps << " steps to t = "
            << r.t_end << "\n  |dx u|_L1 final/initial " << r.dxu_ratio << ", |dy u|_L1 final/initial "
            << r.dyu_ratio << "\n";
  if (r.fit_ok)
    std::cout << "  fitted decay rate lambda " << r.fit.rate << " (lambda*eps " << r.fit.rate * r.eps
              << ")\n";
  else
    std::cout << "  no decay fit: " << r.fit_error << "\n";
  if (r.warning) std::cout << "  warning: " << *r.warning << "\n";
  return kExitPass;
}

int cmd_sweep(const RunConfig& cfg) {
  const GridSpec grid = make_grid(cfg);
  scheme_from(cfg, grid);
  BenchmarkOptions o = benchmark_options(cfg, grid);
  o.eps_list = cfg.eps_list;
  const auto runs = vortex_benchmark(o);
  Json all = Json::array();
  for (const auto& r : runs) {
    all.push_back(write_benchmark(r, cfg, grid, cfg.out));
    std::cout << "eps " << r.eps << ": lambda " << (r.fit_ok ? r.fit.rate : NAN) << ", |dx u| ratio "
              << r.dxu_ratio << "\n";
  }
  Json ratios = Json::array();
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].fit_ok && runs[k - 1].fit_ok && runs[k - 1].fit.rate != 0.0) {
      const double ratio = runs[k].fit.rate / runs[k - 1].fit.rate;
      ratios.push_back({{"eps_from", runs[k - 1].eps}, {"eps_to", runs[k].eps}, {"lambda_ratio", ratio}});
      std::cout << "lambda(" << runs[k].eps << ") / lambda(" << runs[k - 1].eps << ") = " << ratio << "\n";
    }
  }
  const fs::path path = fs::path(cfg.out) / (cfg.scheme + "_sweep.json");
  Json meta = run_metadata("sweep", cfg, grid);
  meta["eps_list"] = cfg.eps_list;
  write_artifact_json(path, {{"runs", all}, {"lambda_ratios", ratios}}, meta);
  std::cout << "wrote " << path.string() << "\n";
  return kExitPass;
}

// ----------------------------------------------------------------- catalog

int cmd_catalog(const RunConfig& cfg, bool write) {
  const GridSpec grid = GridSpec::uniform(8, 8);
  Json list = Json::array();
  for (const auto& name : catalog_names()) {
    const SchemeSpec s = make_scheme(name, {cfg.c, cfg.eps}, grid, diffusion(cfg));
    std::cout << name << "  family=" << to_string(s.family)
              << "  SP=" << (s.claims.stationarity_preserving ? "yes" : "no");
    if (s.claims.fe_cfl_limit) std::cout << "  fe_cfl_limit=" << *s.claims.fe_cfl_limit;
    std::cout << "  a=(" << s.diffusion.a1 << ", " << s.diffusion.a2 << ", " << s.diffusion.a3 << ", "
              << s.diffusion.a4 << ")\n";
    list.push_back(scheme_json(s));
  }
  if (write) {
    const fs::path path = fs::path(cfg.out) / "catalog.json";
    write_artifact_json(path, list, {{"command", "catalog"}, {"c", cfg.c}, {"eps", cfg.eps}});
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationarity-preserving schemes for the linear acoustic equations"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config file (flags override it)");
  app.set_help_all_flag("--help-all", "help for every command");

  auto* analyze = app.add_subcommand("analyze", "symbol analysis of one scheme");
  auto* certify = app.add_subcommand("certify", "exact Laurent-polynomial certification");
  auto* simulate = app.add_subcommand("simulate", "vortex run or CFL sweep");
  auto* sweep = app.add_subcommand("sweep", "vortex runs over a list of eps");
  auto* catalog = app.add_subcommand("catalog", "list the scheme catalog");

  FlagSet fa(*analyze), fc(*certify), fs_(*simulate), fw(*sweep), fk(*catalog);
  for (auto* f : {&fa, &fc, &fs_, &fw, &fk}) add_common(*f);
  for (auto* sub : {analyze, certify, simulate, sweep, catalog})
    sub->add_option("--config", config_path, "flat JSON config file (flags override it)");
  fc.add("--divergence", &RunConfig::divergence, "central | averaged | both");
  fc.add("--radius", &RunConfig::radius, "stencil radius of the diffusion search");
  fc.add_flag("--identity-only", &RunConfig::identity_only, "only verify the operator identities");
  fs_.add_flag("--cfl-sweep", &RunConfig::cfl_sweep, "report the largest stable cfl");
  fs_.add("--cfl-max", &RunConfig::cfl_max, "largest cfl in the sweep");
  fs_.add("--cfl-step", &RunConfig::cfl_step, "cfl sweep increment");
  fs_.add("--horizon", &RunConfig::horizon, "steps per cfl value");
  fs_.add("--probe-every", &RunConfig::probe_every, "steps between probe samples");
  fw.add("--eps-list", &RunConfig::eps_list, "eps values")->delimiter(',');
  fw.add("--probe-every", &RunConfig::probe_every, "steps between probe samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(fa.resolve(config_path));
    if (certify->parsed()) return cmd_certify(fc.resolve(config_path));
    if (simulate->parsed()) return cmd_simulate(fs_.resolve(config_path));
    if (sweep->parsed()) return cmd_sweep(fw.resolve(config_path));
    if (catalog->parsed()) return cmd_catalog(fk.resolve(config_path), catalog->count("--out") > 0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InstabilityError& e) {
    std::cerr << "instability: " << e.what() << "\nlast stable time: " << e.last_stable_time << "\n";
    return kExitInstability;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
