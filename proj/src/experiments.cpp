#include "sps/experiments.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <sstream>

namespace sps {

void VortexParams::validate() const {
  if (!(r1 > 0.0) || !(r2 > r1)) throw Error("vortex radii must satisfy 0 < r1 < r2");
  if (!std::isfinite(s) || !std::isfinite(p0) || !std::isfinite(x0) || !std::isfinite(y0))
    throw Error("vortex parameters must be finite");
}

VortexField gresho_vortex(const GridSpec& grid, const VortexParams& vp,
                          const AcousticParams& acoustic) {
  grid.validate();
  vp.validate();
  acoustic.validate();
  VortexField out;
  out.state = make_field(grid, [&](double x, double y) {
    const double dx = x - vp.x0, dy = y - vp.y0;
    const double r = std::hypot(dx, dy);
    double speed = 0.0;
    if (r < vp.r1)
      speed = vp.s * r / vp.r1;
    else if (r < vp.r2)
      speed = vp.s * (vp.r2 - r) / (vp.r2 - vp.r1);
    // (-sin φ, cos φ) * speed = speed * (-dy, dx) / r.
    if (r == 0.0) return CellValue{0.0, 0.0, vp.p0};
    return CellValue{-speed * dy / r, speed * dx / r, vp.p0};
  });
  const double margin = std::min({vp.x0, grid.width() - vp.x0, vp.y0, grid.height() - vp.y0});
  if (vp.r2 > margin) {
    std::ostringstream os;
    os << "vortex support radius " << vp.r2 << " exceeds the distance " << margin
       << " to the periodic boundary";
    out.warning = os.str();
  }
  return out;
}

namespace {

double max_coefficient(const ScalarStencil& st) {
  double m = 0.0;
  for (const auto& [off, c] : st.entries()) m = std::max(m, std::abs(c));
  return m;
}

bool nearly_equal(const ScalarStencil& a, const ScalarStencil& b, double tol) {
  const ScalarStencil d = a - b;
  return max_coefficient(d) <= tol;
}

}  // namespace

std::pair<Component2D, Component2D> stream_velocity(const Component2D& psi,
                                                     const VecStencilRow& div_row,
                                                     const GridSpec& grid) {
  const ScalarStencil uv = div_row.u.compose(div_row.v);
  const ScalarStencil vu = div_row.v.compose(div_row.u);
  const double scale = std::max(max_coefficient(uv), max_coefficient(vu));
  if (!nearly_equal(uv, vu, 1e-14 * scale)) throw Error("divergence row components do not commute");
  Component2D u = apply(div_row.v, psi, grid);
  for (double& x : u) x = -x;
  Component2D v = apply(div_row.u, psi, grid);
  return {std::move(u), std::move(v)};
}

FieldSet kernel_adapted_state(const SchemeSpec& spec, const Component2D& psi, double p0) {
  FieldSet q(spec.grid);
  auto [u, v] = stream_velocity(psi, spec.divergence_row(), spec.grid);
  q.u = std::move(u);
  q.v = std::move(v);
  std::fill(q.p.begin(), q.p.end(), p0);
  return q;
}

double stationarity_residual(const SchemeSpec& spec, const FieldSet& state) {
  const double qn = state.max_norm();
  if (qn == 0.0) return 0.0;
  return rhs(spec, state).max_norm() / (spec.params.wave_speed() * qn);
}

Component2D ConservedOperator::apply(const FieldSet& q) const {
  Component2D out(q.grid.cells(), 0.0);
  apply_add(velocity.u, q.u, q.grid, 1.0, out);
  apply_add(velocity.v, q.v, q.grid, 1.0, out);
  apply_add(pressure, q.p, q.grid, 1.0, out);
  return out;
}

double ConservedOperator::norm() const {
  double s = 0.0;
  for (const auto* st : {&velocity.u, &velocity.v, &pressure})
    for (const auto& [off, c] : st->entries()) s += std::abs(c);
  return s;
}

ConservedOperator extract_conserved_operator(const SchemeSpec& spec, int max_radius) {
  constexpr Component comps[] = {Component::u, Component::v, Component::p};
  for (int R = 0; R <= max_radius; ++R) {
    const int side = 2 * R + 1;
    const int per = side * side;
    const int n = 3 * per;
    auto unknown = [&](int comp, Offset s) { return comp * per + (s.sx + R) * side + (s.sy + R); };

    // One equation per (column, offset of the composed stencil).
    std::map<std::pair<int, Offset>, int> eq_index;
    std::vector<std::tuple<int, int, double>> triplets;
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < 3; ++col) {
        const ScalarStencil& blk = spec.stencil.block(comps[row], comps[col]);
        for (int sx = -R; sx <= R; ++sx) {
          for (int sy = -R; sy <= R; ++sy) {
            const Offset s{sx, sy};
            for (const auto& [off, c] : blk.entries()) {
              auto [it, inserted] =
                  eq_index.try_emplace({col, s + off}, static_cast<int>(eq_index.size()));
              triplets.emplace_back(it->second, unknown(row, s), c);
            }
          }
        }
      }
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(eq_index.size()), n);
    for (const auto& [r, c, v] : triplets) a(r, c) += v;

    // Column equilibration: the u/v and p rows of alpha can differ by 1/eps^2.
    Eigen::VectorXd scale(n);
    for (int k = 0; k < n; ++k) {
      const double cn = a.col(k).norm();
      scale(k) = cn > 0.0 ? 1.0 / cn : 1.0;
      a.col(k) *= scale(k);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    // Rank-deficient tall matrices report fewer singular values than columns.
    int nullity = n - static_cast<int>(sv.size());
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) <= 1e-10 * smax) ++nullity;
    if (nullity == 0) continue;

    const Eigen::VectorXd w = svd.matrixV().col(n - 1).cwiseProduct(scale);
    ConservedOperator op;
    op.radius = R;
    op.nullspace_dim = nullity;
    op.sigma_ratio = sv.size() == n && smax > 0.0 ? sv(n - 1) / smax : 0.0;

    double vmax = 0.0;
    for (int k = 0; k < 2 * per; ++k) vmax = std::max(vmax, std::abs(w(k)));
    double wmax = w.cwiseAbs().maxCoeff();
    const double norm_by = vmax > 0.0 ? vmax : wmax;
    // Fix the sign so that the first significant velocity coefficient is positive.
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
      if (std::abs(w(k)) > 1e-8 * wmax) {
        sign = w(k) > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int comp = 0; comp < 3; ++comp) {
      ScalarStencil& dst = comp == 0 ? op.velocity.u : comp == 1 ? op.velocity.v : op.pressure;
      for (int sx = -R; sx <= R; ++sx) {
        for (int sy = -R; sy <= R; ++sy) {
          const double c = w(unknown(comp, {sx, sy}));
          if (std::abs(c) > 1e-12 * wmax) dst.add({sx, sy}, sign * c / norm_by);
        }
      }
    }
    return op;
  }
  throw Error("no conserved operator with radius <= " + std::to_string(max_radius) + " for scheme " +
              spec.name);
}

double conserved_residual(const ConservedOperator& op, const SchemeSpec& spec, const FieldSet& q) {
  const double denom = op.norm() * spec.stencil.operator_norm() * q.max_norm();
  if (denom == 0.0) return 0.0;
  return max_abs(op.apply(rhs(spec, q))) / denom;
}

DecayFit fit_decay(const TimeSeries& series, double t_a, double t_b) {
  if (!(t_a < t_b)) throw Error("decay window must satisfy t_a < t_b");
  double st = 0, sy = 0, stt = 0, sty = 0;
  int n = 0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    const double t = series.t[k];
    if (t < t_a || t > t_b) continue;
    const double v = series.value[k];
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "non-positive value " << v << " at t = " << t << " inside the decay window";
      throw Error(os.str());
    }
    const double y = std::log(v);
    pts.emplace_back(t, y);
    st += t; sy += y; stt += t * t; sty += t * y;
    ++n;
  }
  if (n < 2) throw Error("decay window holds fewer than two samples");
  const double det = n * stt - st * st;
  if (det <= 0.0) throw Error("degenerate decay window");
  const double slope = (n * sty - st * sy) / det;
  DecayFit fit;
  fit.intercept = (sy - slope * st) / n;
  fit.rate = -slope;
  fit.t_a = t_a;
  fit.t_b = t_b;
  fit.points = n;
  double ss = 0.0;
  for (const auto& [t, y] : pts) {
    const double r = y - (fit.intercept + slope * t);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::pair<double, double> decay_window(const TimeSeries& series, double t_start, double floor) {
  if (series.t.empty()) throw Error("empty series");
  double end = series.t.back();
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    if (series.value[k] < floor) {
      end = series.t[k];
      break;
    }
  }
  return {t_start, end};
}

namespace {

BenchmarkRun benchmark_one(const BenchmarkOptions& opts, double eps) {
  const GridSpec grid = GridSpec::uniform(opts.nx, opts.ny);
  const AcousticParams ap{opts.c, eps};
  const SchemeSpec spec = make_scheme(opts.scheme, ap, grid, opts.diffusion);
  VortexField vf = gresho_vortex(grid, opts.vortex, ap);

  BenchmarkRun out;
  out.eps = eps;
  out.t_end = opts.t_end ? *opts.t_end : opts.t_end_over_eps * eps;
  out.warning = vf.warning;
  out.initial = vf.state;

  StepControl ctl;
  ctl.cfl = opts.cfl;
  ctl.t_end = out.t_end;
  ctl.probe_every = opts.probe_every;
  const std::vector<Probe> probes = {
      {"dxu_l1", [](const FieldSet& q) { return l1_norm_central_diff(q.u, Axis::x, q.grid); }},
      {"dyu_l1", [](const FieldSet& q) { return l1_norm_central_diff(q.u, Axis::y, q.grid); }},
  };
  RunResult rr = run(spec, vf.state, ctl, probes);
  out.dt = rr.dt;
  out.steps = rr.steps;
  out.dxu = std::move(rr.series[0]);
  out.dyu = std::move(rr.series[1]);
  out.final_state = std::move(rr.final_state);
  out.dxu_ratio = out.dxu.value.back() / out.dxu.value.front();
  out.dyu_ratio = out.dyu.value.back() / out.dyu.value.front();
  out.final_residual = stationarity_residual(spec, out.final_state);

  const double t_start = 5.0 * std::min(grid.dx, grid.dy) * eps / opts.c;
  try {
    const auto [ta, tb] = decay_window(out.dxu, t_start);
    out.fit = fit_decay(out.dxu, ta, tb);
    out.fit_ok = true;
  } catch (const Error& e) {
    out.fit_error = e.what();
  }
  return out;
}

}  // namespace

std::vector<BenchmarkRun> vortex_benchmark(const BenchmarkOptions& opts) {
  make_scheme(opts.scheme, {opts.c, 1.0}, GridSpec::uniform(opts.nx, opts.ny), opts.diffusion);
  const int jobs = std::max(1, opts.jobs);
  std::vector<BenchmarkRun> out(opts.eps_list.size());
  for (std::size_t start = 0; start < opts.eps_list.size(); start += jobs) {
    const std::size_t stop = std::min(opts.eps_list.size(), start + static_cast<std::size_t>(jobs));
    if (jobs == 1) {
      out[start] = benchmark_one(opts, opts.eps_list[start]);
      continue;
    }
    std::vector<std::future<BenchmarkRun>> pending;
    for (std::size_t k = start; k < stop; ++k)
      pending.push_back(std::async(std::launch::async, benchmark_one, std::cref(opts), opts.eps_list[k]));
    for (std::size_t k = start; k < stop; ++k) out[k] = pending[k - start].get();
  }
  return out;
}

}  // namespace sps
