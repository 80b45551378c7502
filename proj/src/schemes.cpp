#include "sps/schemes.hpp"

#include <cmath>

namespace sps {

std::string to_string(SchemeFamily f) {
  switch (f) {
    case SchemeFamily::central: return "central";
    case SchemeFamily::dimsplit: return "dimsplit";
    case SchemeFamily::roe: return "roe";
    case SchemeFamily::lowmach1: return "lowmach1";
    case SchemeFamily::lowmach2: return "lowmach2";
    case SchemeFamily::lowmach3: return "lowmach3";
    case SchemeFamily::multid: return "multid";
  }
  return "unknown";
}

void DiffusionParams::validate() const {
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3) || !std::isfinite(a4))
    throw Error("diffusion parameters must be finite");
}

VecStencilRow SchemeSpec::divergence_row() const {
  const double k = 1.0 / (params.c * params.c);
  return {stencil.block(Component::p, Component::u).scaled(k),
          stencil.block(Component::p, Component::v).scaled(k)};
}

namespace {

using C = Component;

/// Adds (J [q]_{±1} - D [[q]]_{±1/2}) / (2h) along `axis`; `n` is the velocity
/// component normal to the axis.
void add_split_axis(MatrixStencil& st, Axis axis, double h, const AcousticParams& ap,
                    const DiffusionParams& dp) {
  const C n = axis == Axis::x ? C::u : C::v;
  const Offset plus = axis == Axis::x ? Offset{1, 0} : Offset{0, 1};
  const double inv_eps2 = 1.0 / (ap.eps * ap.eps);
  const double c2 = ap.c * ap.c;
  const double s = 1.0 / (2.0 * h);
  auto put = [&](C row, C col, double j, double d) {
    ScalarStencil& b = st.block(row, col);
    b.add(plus, (j - d) * s);
    b.add(-plus, (-j - d) * s);
    b.add({0, 0}, 2.0 * d * s);
  };
  put(n, n, 0.0, dp.a1);
  put(n, C::p, inv_eps2, dp.a2);
  put(C::p, n, c2, dp.a3);
  put(C::p, C::p, 0.0, dp.a4);
}

SchemeSpec split_spec(std::string name, SchemeFamily family, const AcousticParams& params,
                      const GridSpec& grid, const DiffusionParams& dp) {
  params.validate();
  grid.validate();
  dp.validate();
  SchemeSpec spec;
  spec.name = std::move(name);
  spec.family = family;
  spec.params = params;
  spec.grid = grid;
  spec.diffusion = dp;
  add_split_axis(spec.stencil, Axis::x, grid.dx, params, dp);
  add_split_axis(spec.stencil, Axis::y, grid.dy, params, dp);
  spec.claims.stationarity_preserving = dp.a1 == 0.0;
  return spec;
}

}  // namespace

SchemeSpec dimsplit_scheme(const AcousticParams& params, const GridSpec& grid,
                           const DiffusionParams& dp) {
  return split_spec("dimsplit", SchemeFamily::dimsplit, params, grid, dp);
}

SchemeSpec central_scheme(const AcousticParams& params, const GridSpec& grid) {
  SchemeSpec s = split_spec("central", SchemeFamily::central, params, grid, {});
  return s;
}

SchemeSpec roe_scheme(const AcousticParams& params, const GridSpec& grid) {
  const double w = params.c / params.eps;
  SchemeSpec s = split_spec("roe", SchemeFamily::roe, params, grid, {w, 0.0, 0.0, w});
  s.claims.fe_cfl_limit = 0.5;
  return s;
}

SchemeSpec lowmach_scheme(const AcousticParams& params, const GridSpec& grid, int variant) {
  params.validate();
  const double c = params.c, eps = params.eps;
  switch (variant) {
    case 1:
      return split_spec("lowmach1", SchemeFamily::lowmach1, params, grid,
                        {0.0, 1.0 / (eps * eps), -c * c, 0.0});
    case 2:
      return split_spec("lowmach2", SchemeFamily::lowmach2, params, grid,
                        {0.0, 0.0, -c * c, 2.0 * c / eps});
    case 3: {
      SchemeSpec s = split_spec("lowmach3", SchemeFamily::lowmach3, params, grid,
                                {0.0, 1.0 / (eps * eps), 0.0, 2.0 * c / eps});
      s.claims.fe_cfl_limit = 0.25;
      return s;
    }
    default:
      throw Error("low Mach variant must be 1, 2 or 3, got " + std::to_string(variant));
  }
}

SchemeSpec multid_scheme(const AcousticParams& params, const GridSpec& grid) {
  params.validate();
  grid.validate();
  using namespace bracket;
  const double c = params.c, eps = params.eps;
  const double inv_eps2 = 1.0 / (eps * eps);
  const double w = c / eps;

  SchemeSpec spec;
  spec.name = "multid";
  spec.family = SchemeFamily::multid;
  spec.params = params;
  spec.grid = grid;
  spec.claims.stationarity_preserving = true;
  spec.claims.fe_cfl_limit = 1.0;

  MatrixStencil& st = spec.stencil;
  const VecStencilRow div = averaged_div().evaluate(grid);
  const VecStencilRow diff_u = consistent_diffusion(1, 0).evaluate(grid);
  const VecStencilRow diff_v = consistent_diffusion(0, 1).evaluate(grid);

  // Pressure gradient uses the same averaged differences as the divergence.
  st.block(C::u, C::p) = div.u.scaled(inv_eps2);
  st.block(C::v, C::p) = div.v.scaled(inv_eps2);
  st.block(C::p, C::u) = div.u.scaled(c * c);
  st.block(C::p, C::v) = div.v.scaled(c * c);

  st.block(C::u, C::u) = diff_u.u.scaled(-w / 2.0);
  st.block(C::u, C::v) = diff_u.v.scaled(-w / 2.0);
  st.block(C::v, C::u) = diff_v.u.scaled(-w / 2.0);
  st.block(C::v, C::v) = diff_v.v.scaled(-w / 2.0);

  const RationalStencil lap_x = sum2_half(Axis::y).compose(diff2_half(Axis::x));
  const RationalStencil lap_y = sum2_half(Axis::x).compose(diff2_half(Axis::y));
  st.block(C::p, C::p) = to_numeric(lap_x, -w / (8.0 * grid.dx)) + to_numeric(lap_y, -w / (8.0 * grid.dy));
  return spec;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"central", "dimsplit", "roe",   "lowmach1",
                                                 "lowmach2", "lowmach3", "multid"};
  return names;
}

SchemeSpec make_scheme(const std::string& name, const AcousticParams& params, const GridSpec& grid,
                       const DiffusionParams& dp) {
  if (name == "central") return central_scheme(params, grid);
  if (name == "dimsplit") return dimsplit_scheme(params, grid, dp);
  if (name == "roe") return roe_scheme(params, grid);
  if (name == "lowmach1") return lowmach_scheme(params, grid, 1);
  if (name == "lowmach2") return lowmach_scheme(params, grid, 2);
  if (name == "lowmach3") return lowmach_scheme(params, grid, 3);
  if (name == "multid") return multid_scheme(params, grid);
  throw Error("unknown scheme '" + name + "'");
}

SchemeFactory scheme_factory(const std::string& name, const GridSpec& grid,
                             const DiffusionParams& dp) {
  make_scheme(name, {}, grid, dp);  // validates the name early
  return [name, grid, dp](double c, double eps) {
    return make_scheme(name, {c, eps}, grid, dp).stencil;
  };
}

FieldSet rhs(const SchemeSpec& spec, const FieldSet& state) {
  if (!(state.grid == spec.grid)) throw Error("state grid does not match the scheme's grid");
  FieldSet out = spec.stencil.apply(state);
  out *= -1.0;
  return out;
}

}  // namespace sps
