#include "doctest.h"
#include "oracles.hpp"
#include "sps/io.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

using namespace sps;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sps_io_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e23) == "9.9999999999999992e+22");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int n = 0; n < 1000; ++n) {
    const double x = d(rng) / (n + 1);
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("field csv") {
  const GridSpec g{3, 2, 0.5, 0.25};
  std::mt19937_64 rng(2);
  FieldSet q(g);
  q.u = oracle::random_field(g.cells(), rng);
  q.v = oracle::random_field(g.cells(), rng);
  q.p = oracle::random_field(g.cells(), rng);
  const fs::path p = scratch("field.csv");
  write_field_csv(p, q);
  const auto rows = lines(slurp(p));
  REQUIRE(rows.size() == 1 + 6);
  CHECK(rows[0] == "i,j,x,y,u,v,p");
  std::size_t r = 1;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j, ++r) {
      const auto cells = split(rows[r]);
      REQUIRE(cells.size() == 7);
      CHECK(std::stoi(cells[0]) == i);
      CHECK(std::stoi(cells[1]) == j);
      CHECK(std::strtod(cells[2].c_str(), nullptr) == (i + 0.5) * 0.5);
      CHECK(std::strtod(cells[3].c_str(), nullptr) == (j + 0.5) * 0.25);
      const std::size_t k = g.index(i, j);
      CHECK(std::strtod(cells[4].c_str(), nullptr) == q.u[k]);
      CHECK(std::strtod(cells[5].c_str(), nullptr) == q.v[k]);
      CHECK(std::strtod(cells[6].c_str(), nullptr) == q.p[k]);
    }
  const std::string first = slurp(p);
  write_field_csv(p, q);
  CHECK(slurp(p) == first);
}

TEST_CASE("series csv and sidecar") {
  const TimeSeries s{"dxu", {0.0, 0.1, 0.2}, {1.0, 0.5, 1.0 / 3.0}};
  const fs::path p = scratch("sub/series.csv");
  write_series_csv(p, s);
  const auto rows = lines(slurp(p));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "t,value");
  CHECK(rows[2] == "0.10000000000000001,0.5");
  CHECK(std::strtod(split(rows[3])[1].c_str(), nullptr) == 1.0 / 3.0);

  write_sidecar(p, {{"scheme", "roe"}, {"seed", 3}});
  const fs::path meta = p.string() + ".meta.json";
  REQUIRE(fs::exists(meta));
  const Json j = Json::parse(slurp(meta));
  CHECK(j["scheme"] == "roe");
  CHECK(j["seed"] == 3);
  const std::string first = slurp(meta);
  write_sidecar(p, {{"scheme", "roe"}, {"seed", 3}});
  CHECK(slurp(meta) == first);
}

TEST_CASE("unwritable path is an error") {
  const fs::path blocker = scratch("blocker");
  { std::ofstream(blocker) << "x"; }
  CHECK_THROWS_AS(write_json(blocker / "inner.json", Json::object()), std::exception);
}

TEST_CASE("stencil json") {
  const GridSpec g = GridSpec::uniform(8, 8);
  const VecStencilRow row = averaged_div().evaluate(g);
  const Json j = row_json(row);
  CHECK(j["u"]["radius"] == 1);
  CHECK(j["u"]["entries"].size() == row.u.entries().size());
  for (const auto& e : j["u"]["entries"])
    CHECK(e["value"].get<double>() == row.u.coefficient({e["sx"].get<int>(), e["sy"].get<int>()}));

  const Json exact = row_json(averaged_div());
  CHECK(exact["u"]["unit"].is_string());
  bool saw_fraction = false;
  for (const auto& e : exact["u"]["entries"]) {
    REQUIRE(e["value"].is_string());
    saw_fraction |= e["value"].get<std::string>().find('/') != std::string::npos ||
                    e["value"].get<std::string>().find('.') != std::string::npos;
  }
  CHECK(saw_fraction);

  const SchemeSpec s = roe_scheme({1.0, 0.5}, g);
  const Json m = stencil_json(s.stencil);
  for (const auto& e : m["entries"]) {
    REQUIRE(e["matrix"].size() == 3);
    for (const auto& r : e["matrix"]) CHECK(r.size() == 3);
  }
  const Json sj = scheme_json(s);
  CHECK(sj["name"] == "roe");
  CHECK(sj["claims_fe_cfl_limit"] == 0.5);
  CHECK(sj["params"]["eps"] == 0.5);
}

TEST_CASE("verdict json") {
  const GridSpec g = GridSpec::uniform(16, 16);
  const AcousticParams ap{1.0, 0.1};
  const auto samples = generic_phase_samples(12, 3);
  for (const std::string name : {"roe", "multid"}) {
    const SchemeSpec s = make_scheme(name, ap, g);
    const SpectralVerdict v = det_scan(s.stencil, ap, g, samples);
    const Json j = verdict_json(name, v);
    CHECK(j["scheme"] == name);
    CHECK(j["samples"].size() == samples.size());
    CHECK(j["judged"] == v.judged);
    CHECK(j["is_stationarity_preserving"] == v.is_stationarity_preserving);
    for (const auto& e : j["samples"]) {
      CHECK(e.contains("thx"));
      CHECK(e.contains("absdet"));
      CHECK(e.contains("kernel_dim"));
      CHECK(e.contains("sigma_min_ratio"));
    }
    // Rendering twice gives the same bytes.
    CHECK(j.dump() == verdict_json(name, det_scan(s.stencil, ap, g, samples)).dump());
  }
}
