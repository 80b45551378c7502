/// @file time_integration.hpp
/// @brief Explicit method-of-lines stepping and CFL bookkeeping.
///
/// CFL numbers are ν = (c/eps) dt / min(dx, dy).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sps/grid_fields.hpp"
#include "sps/schemes.hpp"

namespace sps {

/// Human-readable statement of the CFL normalization, written to metadata.
inline constexpr const char* kCflNormalization = "dt = cfl * min(dx, dy) * eps / c";

struct StepControl {
  double cfl = 0.4;
  double t_end = 1.0;
  long max_steps = 10'000'000;
  /// Probes are evaluated every `probe_every` steps and at the final time.
  int probe_every = 1;

  void validate() const;
};

/// Raised when a step produces a non-finite state.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, long step, double last_stable_time)
      : Error(what), step(step), last_stable_time(last_stable_time) {}
  long step;
  double last_stable_time;
};

double cfl_dt(const AcousticParams& params, const GridSpec& grid, double cfl);

/// q + dt * rhs(q). Throws InstabilityError (step 0) if the result is not finite.
FieldSet forward_euler_step(const SchemeSpec& spec, const FieldSet& state, double dt);

/// Two-stage Runge-Kutta (Heun). Provided for convergence studies.
FieldSet heun_step(const SchemeSpec& spec, const FieldSet& state, double dt);

struct TimeSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> value;
};

struct Probe {
  std::string name;
  std::function<double(const FieldSet&)> measure;
};

struct RunResult {
  FieldSet final_state;
  std::vector<TimeSeries> series;  ///< one per probe, in probe order
  long steps = 0;
  double dt = 0.0;
  double t_final = 0.0;
};

/// Forward Euler from t = 0 to t_end with dt = cfl_dt; the last step is
/// shortened to land on t_end. Probes are recorded at t = 0, every
/// `probe_every` steps and at the end. Throws InstabilityError naming the step.
RunResult run(const SchemeSpec& spec, const FieldSet& initial, const StepControl& control,
              const std::vector<Probe>& probes = {});

struct CflSweepResult {
  std::vector<double> cfl;
  std::vector<double> growth;  ///< ‖q‖∞ after the horizon divided by the initial value
  std::vector<bool> stable;
  double max_stable = 0.0;     ///< 0 when even the first value fails
};

/// Runs `horizon_steps` forward-Euler steps per cfl value (ascending) and
/// declares a value stable when ‖q‖∞ stays within `growth_limit` times the
/// initial value. Stops at the first failure.
CflSweepResult cfl_sweep(const SchemeSpec& spec, const FieldSet& initial,
                         const std::vector<double>& cfl_grid, int horizon_steps = 500,
                         double growth_limit = 2.0);

}  // namespace sps
