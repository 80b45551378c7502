#include "sps/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sps {

void StepControl::validate() const {
  if (!(cfl > 0.0) || !std::isfinite(cfl)) throw Error("cfl must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error("t_end must be non-negative");
  if (max_steps <= 0) throw Error("max_steps must be positive");
  if (probe_every <= 0) throw Error("probe_every must be positive");
}

double cfl_dt(const AcousticParams& params, const GridSpec& grid, double cfl) {
  params.validate();
  grid.validate();
  return cfl * std::min(grid.dx, grid.dy) * params.eps / params.c;
}

FieldSet forward_euler_step(const SchemeSpec& spec, const FieldSet& state, double dt) {
  if (!(dt > 0.0)) throw Error("time step must be positive");
  FieldSet next = state;
  next.axpy(dt, rhs(spec, state));
  if (!next.all_finite()) throw InstabilityError("non-finite state after step 0", 0, 0.0);
  return next;
}

FieldSet heun_step(const SchemeSpec& spec, const FieldSet& state, double dt) {
  if (!(dt > 0.0)) throw Error("time step must be positive");
  const FieldSet k1 = rhs(spec, state);
  FieldSet mid = state;
  mid.axpy(dt, k1);
  const FieldSet k2 = rhs(spec, mid);
  FieldSet next = state;
  next.axpy(0.5 * dt, k1);
  next.axpy(0.5 * dt, k2);
  if (!next.all_finite()) throw InstabilityError("non-finite state after step 0", 0, 0.0);
  return next;
}

RunResult run(const SchemeSpec& spec, const FieldSet& initial, const StepControl& control,
              const std::vector<Probe>& probes) {
  control.validate();
  RunResult res;
  res.dt = cfl_dt(spec.params, spec.grid, control.cfl);
  res.final_state = initial;
  for (const auto& p : probes) res.series.push_back({p.name, {}, {}});

  auto record = [&](double t) {
    for (std::size_t n = 0; n < probes.size(); ++n) {
      res.series[n].t.push_back(t);
      res.series[n].value.push_back(probes[n].measure(res.final_state));
    }
  };

  double t = 0.0;
  record(t);
  long step = 0;
  // A tiny relative slack avoids a spurious final step of length ~1e-17.
  const double slack = 1e-12 * res.dt;
  while (t < control.t_end - slack) {
    if (step >= control.max_steps) throw Error("max_steps reached before t_end");
    const double h = std::min(res.dt, control.t_end - t);
    FieldSet next = res.final_state;
    next.axpy(h, rhs(spec, res.final_state));
    ++step;
    if (!next.all_finite()) {
      std::ostringstream os;
      os << "non-finite state at step " << step << " (last stable time " << t << ")";
      throw InstabilityError(os.str(), step, t);
    }
    res.final_state = std::move(next);
    t = std::min(step * res.dt, control.t_end);
    const bool last = !(t < control.t_end - slack);
    if (step % control.probe_every == 0 || last) record(t);
  }
  res.steps = step;
  res.t_final = t;
  return res;
}

CflSweepResult cfl_sweep(const SchemeSpec& spec, const FieldSet& initial,
                         const std::vector<double>& cfl_grid, int horizon_steps,
                         double growth_limit) {
  if (!std::is_sorted(cfl_grid.begin(), cfl_grid.end())) throw Error("cfl grid must be ascending");
  if (horizon_steps <= 0) throw Error("horizon must be positive");
  CflSweepResult res;
  const double q0 = initial.max_norm();
  if (q0 == 0.0) throw Error("cfl sweep needs a nonzero initial state");
  for (double cfl : cfl_grid) {
    const double dt = cfl_dt(spec.params, spec.grid, cfl);
    FieldSet q = initial;
    double growth = 0.0;
    bool finite = true;
    for (int n = 0; n < horizon_steps; ++n) {
      q.axpy(dt, rhs(spec, q));
      // Early exit once growth is far past the limit.
      if (!q.all_finite() || q.max_norm() > 1e6 * q0) {
        finite = false;
        break;
      }
    }
    growth = finite ? q.max_norm() / q0 : std::numeric_limits<double>::infinity();
    const bool ok = growth <= growth_limit;
    res.cfl.push_back(cfl);
    res.growth.push_back(growth);
    res.stable.push_back(ok);
    if (!ok) break;
    res.max_stable = cfl;
  }
  return res;
}

}  // namespace sps
