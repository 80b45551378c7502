/// @file experiments.hpp
/// @brief Vortex benchmark, exact discrete stationary data, conserved
/// operators and decay fits.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sps/grid_fields.hpp"
#include "sps/schemes.hpp"
#include "sps/stencil.hpp"
#include "sps/time_integration.hpp"

namespace sps {

/// Piecewise-linear azimuthal speed: s r/r1 inside r1, s (r2 - r)/(r2 - r1)
/// between r1 and r2, zero outside; constant pressure p0.
struct VortexParams {
  double x0 = 0.5;
  double y0 = 0.5;
  double r1 = 0.2;
  double r2 = 0.4;
  double s = 1.0;
  double p0 = 1.0;

  void validate() const;
};

struct VortexField {
  FieldSet state;
  /// Set when the support r < r2 reaches the domain boundary.
  std::optional<std::string> warning;
};

/// The vortex sampled at cell centers. `acoustic` only enters through
/// validation: the profile is stationary for every (c, eps).
VortexField gresho_vortex(const GridSpec& grid, const VortexParams& vp,
                          const AcousticParams& acoustic = {});

/// u = -A_v ψ, v = A_u ψ for div_row = (A_u, A_v), so that
/// A_u u + A_v v = (A_v A_u - A_u A_v) ψ = 0. Throws Error when A_u and A_v do
/// not commute.
std::pair<Component2D, Component2D> stream_velocity(const Component2D& psi,
                                                     const VecStencilRow& div_row,
                                                     const GridSpec& grid);

/// Velocity from stream_velocity with the scheme's own divergence row and a
/// constant pressure p0.
FieldSet kernel_adapted_state(const SchemeSpec& spec, const Component2D& psi, double p0 = 1.0);

/// ‖rhs(q)‖∞ / ((c/eps) ‖q‖∞); zero for the zero state.
double stationarity_residual(const SchemeSpec& spec, const FieldSet& state);

/// Left-kernel operator Ω = w_u u + w_v v + w_p p with Ω ∘ rhs = 0.
struct ConservedOperator {
  VecStencilRow velocity;
  ScalarStencil pressure;
  int radius = 0;
  int nullspace_dim = 0;       ///< dimension of the solution space at `radius`
  double sigma_ratio = 0.0;    ///< smallest singular value relative to the largest

  Component2D apply(const FieldSet& q) const;
  /// Sum of |coefficients| over all three components.
  double norm() const;
};

/// Searches the smallest centered box (radius 0, 1, 2, ...) admitting a row
/// (w_u, w_v, w_p) with sum_row w_row ∘ alpha_{row,col} = 0 for every column.
/// The result is scaled so that the largest velocity coefficient is 1.
/// Throws Error when no such row exists up to `max_radius`.
ConservedOperator extract_conserved_operator(const SchemeSpec& spec, int max_radius = 2);

/// ‖Ω(rhs(q))‖∞ / (‖Ω‖ ‖alpha‖ ‖q‖∞), a roundoff-scaled residual.
double conserved_residual(const ConservedOperator& op, const SchemeSpec& spec, const FieldSet& q);

struct DecayFit {
  double rate = 0.0;       ///< λ = -slope of log(value) versus t
  double intercept = 0.0;  ///< log(value) at t = 0
  double t_a = 0.0;
  double t_b = 0.0;
  double residual = 0.0;   ///< root-mean-square misfit in log(value)
  int points = 0;
};

/// Least-squares line through (t, log value) for t in [t_a, t_b]. Throws Error
/// on non-positive values in the window or fewer than two points.
DecayFit fit_decay(const TimeSeries& series, double t_a, double t_b);

/// Window [t_start, end] with end the earlier of the last sample and the first
/// time the series falls below `floor`.
std::pair<double, double> decay_window(const TimeSeries& series, double t_start,
                                       double floor = 1e-14);

struct BenchmarkOptions {
  std::string scheme = "roe";
  DiffusionParams diffusion;
  std::vector<double> eps_list = {1.0, 0.1, 0.01};
  double c = 1.0;
  int nx = 50;
  int ny = 50;
  double cfl = 0.2;
  /// End time per eps; when unset t_end_over_eps * eps is used.
  std::optional<double> t_end;
  double t_end_over_eps = 3.0;
  int probe_every = 1;
  VortexParams vortex;
  int jobs = 1;
};

struct BenchmarkRun {
  double eps = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  long steps = 0;
  TimeSeries dxu;  ///< ‖∂x u‖_L1
  TimeSeries dyu;  ///< ‖∂y u‖_L1
  DecayFit fit;
  bool fit_ok = false;
  std::string fit_error;
  double dxu_ratio = 0.0;  ///< final / initial
  double dyu_ratio = 0.0;
  double final_residual = 0.0;
  FieldSet initial;
  FieldSet final_state;
  std::optional<std::string> warning;
};

/// Vortex initial data, forward Euler to t_end, decay fit of ‖∂x u‖_L1 on the
/// window starting at 5 min(dx, dy) eps / c. Runs for different eps are
/// independent and use up to `jobs` threads; results keep the eps order.
std::vector<BenchmarkRun> vortex_benchmark(const BenchmarkOptions& opts);

}  // namespace sps
