// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sps/experiments.hpp"
#include "sps/fourier.hpp"
#include "sps/laurent.hpp"
#include "sps/time_integration.hpp"

using namespace sps;
using oracle::pi;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::vector<std::string> sp_names() {
  std::vector<std::string> out;
  const GridSpec g = GridSpec::uniform(8, 8);
  for (const std::string& name : catalog_names())
    if (make_scheme(name, {1.0, 1.0}, g).claims.stationarity_preserving) out.push_back(name);
  return out;
}

double max_diff(const FieldSet& a, const FieldSet& b) {
  FieldSet d = a;
  d.axpy(-1.0, b);
  return d.max_norm();
}

double dyadic(double x, int bits) { return std::ldexp(std::round(std::ldexp(x, bits)), -bits); }

// ------------------------------------------------------------------ 1

void criterion1(Check& c) {
  const NullspaceResult central = consistency_nullspace(central_div(), 1);
  c.require(central.dimension() == 0, "central nullspace dimension " + std::to_string(central.dimension()));
  const NullspaceResult averaged = consistency_nullspace(averaged_div(), 1);
  c.require(averaged.dimension() == 2, "averaged nullspace dimension " + std::to_string(averaged.dimension()));
  c.require(same_span(averaged.basis, {consistent_diffusion(1, 0), consistent_diffusion(0, 1)}),
            "averaged basis span");
  for (const auto& r : operator_identity_check()) c.require(r.holds, "identity " + r.name);
  const MooreScanReport scan = moore_symmetry_scan();
  c.require(scan.positive_only_on_averaged_ray, "moore scan");
  c.detail << "dims central=" << central.dimension() << " averaged=" << averaged.dimension()
           << " scan members=" << scan.entries.size() << " positive=" << scan.positive_members;
}

// ------------------------------------------------------------------ 2

void criterion2(Check& c) {
  const GridSpec g = GridSpec::uniform(32, 32);
  const AcousticParams ap{1.0, 0.1};
  const auto samples = generic_phase_samples(256);
  const SpectralVerdict roe = det_scan(roe_scheme(ap, g).stencil, ap, g, samples);
  double roe_min = 1.0;
  for (const auto& s : roe.samples) {
    roe_min = std::min(roe_min, s.sigma_min_ratio);
    c.require(s.kernel_dim == 0, "roe kernel");
  }
  c.require(roe_min >= 1e-3, "roe sigma ratio");

  std::vector<SchemeSpec> sp;
  for (const std::string& name : {"central", "lowmach1", "lowmach2", "lowmach3", "multid"})
    sp.push_back(make_scheme(name, ap, g));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> a(-5.0, 5.0);
  for (int draw = 0; draw < 10; ++draw) sp.push_back(dimsplit_scheme(ap, g, {0.0, a(rng), a(rng), a(rng)}));
  double sp_max = 0.0;
  int judged = 0;
  for (const SchemeSpec& s : sp) {
    const SpectralVerdict v = det_scan(s.stencil, ap, g, samples);
    c.require(v.is_stationarity_preserving, s.name + " verdict");
    for (const auto& smp : v.samples) {
      c.require(smp.kernel_dim == 1, s.name + " kernel dimension");
      sp_max = std::max(sp_max, smp.sigma_min_ratio);
    }
    judged += v.judged;
  }
  c.require(sp_max <= 1e-12, "sp sigma ratio");
  c.detail << samples.size() << " samples, roe min sigma ratio " << roe_min << ", SP max sigma ratio " << sp_max
           << ", judged " << judged << "/" << sp.size() * samples.size();
}

// ------------------------------------------------------------------ 3

void criterion3(Check& c) {
  const GridSpec g{24, 20, 1.0 / 24, 0.05};
  const AcousticParams ap{1.3, 0.2};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(-3.0, 3.0), th(-pi, pi);
  double worst_e = 0, worst_k = 0;
  for (int draw = 0; draw < 5; ++draw) {
    const DiffusionParams dp{0.0, a(rng), a(rng), a(rng)};
    const SchemeSpec s = dimsplit_scheme(ap, g, dp);
    for (int n = 0; n < 50; ++n) {
      const Phase ph{th(rng), th(rng)};
      const Matrix3c E = evolution_matrix(s.stencil, ph);
      const auto ref = oracle::dimsplit_E(dp.a1, dp.a2, dp.a3, dp.a4, ap.c, ap.eps, g.dx, g.dy, ph.thx, ph.thy);
      double scale = 0, diff = 0;
      for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) {
          scale = std::max(scale, std::abs(ref[r][k]));
          diff = std::max(diff, std::abs(E(r, k) - ref[r][k]));
        }
      worst_e = std::max(worst_e, diff / scale);
      const auto kv = oracle::dimsplit_kernel(dp.a3, ap.c, g.dx, g.dy, ph.thx, ph.thy);
      worst_k = std::max(worst_k, 1.0 - alignment(right_kernel(E), Vector3c(kv[0], kv[1], kv[2])));
    }
  }
  c.require(worst_e <= 1e-13, "evolution matrix");
  c.require(worst_k <= 1e-10, "right kernel");
  c.detail << "250 phases, max relative entry error " << worst_e << ", max kernel misalignment " << worst_k;
}

// ------------------------------------------------------------------ 4

void criterion4(Check& c) {
  // Dyadic grid, parameters and streamfunction: the discrete divergence of the
  // stream velocity then cancels without rounding.
  const GridSpec g = GridSpec::uniform(32, 32);
  const AcousticParams ap{1.0, 0.5};
  const DiffusionParams dp{0.0, 0.75, 1.875, 0.375};
  std::mt19937_64 rng(7);
  Component2D psi = oracle::smooth_random(g.nx, g.ny, rng);
  for (double& x : psi) x = dyadic(x, 24);
  double worst_res = 0, worst_drift = 0;
  for (const std::string& name : sp_names()) {
    const SchemeSpec s = make_scheme(name, ap, g, dp);
    const FieldSet q0 = kernel_adapted_state(s, psi);
    const double res = stationarity_residual(s, q0);
    FieldSet q = q0;
    const double dt = cfl_dt(ap, g, 0.4);
    for (int n = 0; n < 1000; ++n) q = forward_euler_step(s, q, dt);
    const double drift = max_diff(q, q0) / q0.max_norm();
    c.require(res <= 1e-12, name + " residual");
    c.require(drift <= 1e-10, name + " drift");
    worst_res = std::max(worst_res, res);
    worst_drift = std::max(worst_drift, drift);
    c.detail << name << " ";
  }
  c.detail << "max residual " << worst_res << ", max relative change after 1000 steps " << worst_drift;
}

// ------------------------------------------------------------------ 5

void criterion5(Check& c) {
  std::mt19937_64 rng(9);
  double worst = 0;
  for (const GridSpec& g : {GridSpec::uniform(20, 20), GridSpec{20, 16, 0.05, 0.0625}}) {
    for (const std::string& name : sp_names()) {
      const SchemeSpec s = make_scheme(name, {1.3, 0.2}, g, {0.0, 0.7, 1.9, 0.4});
      const ConservedOperator op = extract_conserved_operator(s);
      for (int n = 0; n < 20; ++n) {
        FieldSet q(g);
        q.u = oracle::random_field(g.cells(), rng);
        q.v = oracle::random_field(g.cells(), rng);
        q.p = oracle::random_field(g.cells(), rng);
        worst = std::max(worst, conserved_residual(op, s, q));
      }
    }
  }
  c.require(worst <= 1e-12, "conserved residual");

  const GridSpec g = GridSpec::uniform(50, 50);
  const SchemeSpec s = multid_scheme({1.0, 0.1}, g);
  const ConservedOperator op = extract_conserved_operator(s);
  FieldSet q = gresho_vortex(g, {}).state;
  const Component2D w0 = op.apply(q);
  const double dt = cfl_dt(s.params, g, 0.4);
  for (int n = 0; n < 500; ++n) q = forward_euler_step(s, q, dt);
  const double drift = oracle::max_abs_diff(op.apply(q), w0) / oracle::max_abs(w0);
  c.require(drift <= 1e-10, "vortex drift");
  c.detail << "max residual over 20 random states per scheme " << worst << ", multid vortex drift after 500 steps "
           << drift;
}

// ------------------------------------------------------------------ 6

void criterion6(Check& c) {
  BenchmarkOptions o;
  o.scheme = "roe";
  o.eps_list = {1.0, 0.1, 0.01};
  o.jobs = 3;
  const auto runs = vortex_benchmark(o);
  std::vector<double> rates;
  for (const auto& r : runs) {
    c.require(r.fit_ok, "fit at eps " + std::to_string(r.eps));
    rates.push_back(r.fit.rate);
  }
  c.detail << "roe rates";
  for (double l : rates) c.detail << " " << l;
  for (std::size_t k = 1; k < rates.size(); ++k) {
    const double ratio = rates[k] / rates[k - 1];
    c.detail << " ratio " << ratio;
    c.require(ratio >= 7 && ratio <= 13, "rate ratio");
  }
  for (const std::string& name : {"lowmach3", "multid", "roe"}) {
    BenchmarkOptions lo;
    lo.scheme = name;
    lo.eps_list = {0.01};
    lo.t_end = 0.3;
    const BenchmarkRun r = vortex_benchmark(lo).front();
    c.detail << ", " << name << " final/initial " << r.dxu_ratio;
    if (name == "roe")
      c.require(r.dxu_ratio <= 0.05, "roe decay");
    else
      c.require(r.dxu_ratio >= 0.9, name + " retention");
  }
}

// ------------------------------------------------------------------ 7

void criterion7(Check& c) {
  auto series = [](double eps, double t_end) {
    BenchmarkOptions o;
    o.scheme = "roe";
    o.eps_list = {eps};
    o.t_end = t_end;
    return vortex_benchmark(o).front().dxu;
  };
  const TimeSeries a = series(0.1, 1.0), b = series(0.01, 0.1);
  c.require(a.t.size() == b.t.size(), "matching sample counts");
  double worst = 0, worst_t = 0;
  for (std::size_t k = 0; k < std::min(a.t.size(), b.t.size()); ++k) {
    c.require(std::abs(a.t[k] / 0.1 - b.t[k] / 0.01) <= 1e-9, "rescaled times");
    const double rel = std::abs(a.value[k] - b.value[k]) / std::abs(a.value[k]);
    worst = std::max(worst, rel);
    worst_t = std::max(worst_t, std::abs(a.t[k] / 0.1 - b.t[k] / 0.01));
  }
  c.require(worst <= 0.05, "pointwise agreement");
  const GridSpec g = GridSpec::uniform(50, 50);
  const auto samples = generic_phase_samples(64, 11);
  const ScalingReport r = eigenvalue_scaling_check(scheme_factory("roe", g), 1.0, 0.1, samples, 1e-10);
  c.require(r.pass, "eigenvalue scaling");
  c.detail << a.t.size() << " samples on t/eps in [0, 10], max relative difference " << worst
           << ", eigenvalue deviations c " << r.max_c_deviation << " eps " << r.max_eps_deviation;
}

// ------------------------------------------------------------------ 8

void criterion8(Check& c) {
  const GridSpec g = GridSpec::uniform(50, 50);
  const AcousticParams ap{1.0, 0.1};
  const FieldSet q = gresho_vortex(g, {}).state;
  std::vector<double> grid;
  for (int k = 1; k <= 40; ++k) grid.push_back(0.05 * k);
  const double roe = cfl_sweep(roe_scheme(ap, g), q, grid).max_stable;
  const double multid = cfl_sweep(multid_scheme(ap, g), q, grid).max_stable;
  const double ratio = roe > 0 ? multid / roe : 0.0;
  c.require(ratio >= 1.6 && ratio <= 2.4, "ratio");
  c.detail << "max stable cfl roe " << roe << ", multid " << multid << ", ratio " << ratio;
}

// ------------------------------------------------------------------ 9

double div_error(const std::function<VecStencilRow(const GridSpec&)>& make, int n) {
  const GridSpec g = GridSpec::uniform(n, n);
  auto u = [](double x, double y) { return std::sin(2 * pi * x) * std::cos(2 * pi * y); };
  auto v = [](double x, double y) { return std::cos(4 * pi * x) * std::sin(2 * pi * y) + std::sin(2 * pi * y); };
  auto div = [](double x, double y) {
    return 2 * pi * std::cos(2 * pi * x) * std::cos(2 * pi * y) +
           2 * pi * std::cos(4 * pi * x) * std::cos(2 * pi * y) + 2 * pi * std::cos(2 * pi * y);
  };
  const Component2D got = make(g).apply(oracle::sample(n, n, g.dx, g.dy, u), oracle::sample(n, n, g.dx, g.dy, v), g);
  return oracle::max_abs_diff(got, oracle::sample(n, n, g.dx, g.dy, div));
}

void criterion9(Check& c) {
  auto averaged = [](const GridSpec& g) { return averaged_div().evaluate(g); };
  auto split = [](const GridSpec& g) { return dimsplit_div(1.0, 1.0, g); };
  const double pa = oracle::observed_order(div_error(averaged, 64), div_error(averaged, 128));
  const double ps = oracle::observed_order(div_error(split, 64), div_error(split, 128));
  c.require(pa >= 1.9, "averaged order");
  c.require(ps >= 0.9 && ps <= 1.1, "dimsplit order");

  // Δx^2 / 12 (3 ∂x∂y² u + 2 (∂x³ u + ∂y³ v) + 3 ∂x²∂y v).
  TaylorSeries printed;
  printed.terms[{Component::u, 1, 2, 2, 0}] = make_rational(3, 12);
  printed.terms[{Component::u, 3, 0, 2, 0}] = make_rational(2, 12);
  printed.terms[{Component::v, 0, 3, 2, 0}] = make_rational(2, 12);
  printed.terms[{Component::v, 2, 1, 2, 0}] = make_rational(3, 12);
  const TaylorSeries got = taylor_expand(stencil_to_symbol(averaged_div()), 2).isotropic().at_power(2);
  c.require(got == printed, "taylor term");
  c.detail << "orders averaged " << pa << ", dimsplit " << ps << ", second-order term " << got.to_string();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"exact certification", criterion1},
      {"symbol verdicts", criterion2},
      {"dimsplit closed form", criterion3},
      {"machine-precision stationarity", criterion4},
      {"vorticity preservation", criterion5},
      {"decay-rate scaling", criterion6},
      {"low Mach and long time equivalence", criterion7},
      {"CFL ratio", criterion8},
      {"consistency orders", criterion9},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " [exception: " << e.what() << "]";
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << criteria[k].first
              << "): " << c.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
