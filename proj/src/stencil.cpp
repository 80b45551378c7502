#include "sps/stencil.hpp"

#include <cmath>
#include <sstream>

namespace sps {

ScalarStencil to_numeric(const RationalStencil& st, double scale) {
  ScalarStencil out;
  for (const auto& [off, c] : st.entries()) out.add(off, to_double(c) * scale);
  return out;
}

namespace {

void check_fits(const ScalarStencil& st, const GridSpec& grid) {
  const int width = 2 * st.radius() + 1;
  if (grid.nx < width || grid.ny < width) {
    std::ostringstream os;
    os << "grid " << grid.nx << "x" << grid.ny << " too small for stencil radius " << st.radius();
    throw Error(os.str());
  }
}

}  // namespace

void apply_add(const ScalarStencil& st, const Component2D& q, const GridSpec& grid, double scale,
               Component2D& out) {
  if (q.size() != grid.cells() || out.size() != grid.cells())
    throw Error("component size does not match grid");
  check_fits(st, grid);
  std::vector<int> jmap(grid.ny);
  for (const auto& [off, coef] : st.entries()) {
    const double c = coef * scale;
    for (int j = 0; j < grid.ny; ++j) jmap[j] = ((j + off.sy) % grid.ny + grid.ny) % grid.ny;
    for (int i = 0; i < grid.nx; ++i) {
      const int si = ((i + off.sx) % grid.nx + grid.nx) % grid.nx;
      const double* src = q.data() + grid.index(si, 0);
      double* dst = out.data() + grid.index(i, 0);
      for (int j = 0; j < grid.ny; ++j) dst[j] += c * src[jmap[j]];
    }
  }
}

Component2D apply(const ScalarStencil& st, const Component2D& q, const GridSpec& grid) {
  Component2D out(grid.cells(), 0.0);
  apply_add(st, q, grid, 1.0, out);
  return out;
}

namespace bracket {

namespace {
Offset step(Axis axis, int n) { return axis == Axis::x ? Offset{n, 0} : Offset{0, n}; }
RationalStencil three_point(Axis axis, long minus, long center, long plus) {
  RationalStencil st;
  st.add(step(axis, -1), Rational(minus));
  st.add(step(axis, 0), Rational(center));
  st.add(step(axis, 1), Rational(plus));
  return st;
}
}  // namespace

RationalStencil diff_half(Axis axis) { return three_point(axis, 0, -1, 1); }
RationalStencil sum_half(Axis axis) { return three_point(axis, 0, 1, 1); }
RationalStencil diff_pm1(Axis axis) { return three_point(axis, -1, 0, 1); }
RationalStencil diff2_half(Axis axis) { return three_point(axis, 1, -2, 1); }
RationalStencil sum2_half(Axis axis) { return three_point(axis, 1, 2, 1); }

}  // namespace bracket

Component2D VecStencilRow::apply(const Component2D& fu, const Component2D& fv,
                                 const GridSpec& grid) const {
  Component2D out(grid.cells(), 0.0);
  apply_add(u, fu, grid, 1.0, out);
  apply_add(v, fv, grid, 1.0, out);
  return out;
}

namespace {
const SpacingMonomial kPerDx{-1, 0};
const SpacingMonomial kPerDy{0, -1};
}  // namespace

ExactRow central_div() {
  using namespace bracket;
  return {{diff_pm1(Axis::x).scaled(make_rational(1, 2)), kPerDx},
          {diff_pm1(Axis::y).scaled(make_rational(1, 2)), kPerDy}};
}

ExactRow averaged_div() {
  using namespace bracket;
  return {{sum2_half(Axis::y).compose(diff_pm1(Axis::x)).scaled(make_rational(1, 8)), kPerDx},
          {diff_pm1(Axis::y).compose(sum2_half(Axis::x)).scaled(make_rational(1, 8)), kPerDy}};
}

ExactRow consistent_diffusion(const Rational& c1, const Rational& c2) {
  using namespace bracket;
  const Rational q1 = c1 / 4;
  const Rational q2 = c2 / 4;
  const RationalStencil uu = sum2_half(Axis::y).compose(diff2_half(Axis::x)).scaled(q1) +
                             diff_pm1(Axis::y).compose(diff_pm1(Axis::x)).scaled(q2);
  const RationalStencil vv = diff_pm1(Axis::y).compose(diff_pm1(Axis::x)).scaled(q1) +
                             diff2_half(Axis::y).compose(sum2_half(Axis::x)).scaled(q2);
  return {{uu, kPerDx}, {vv, kPerDy}};
}

ExactRow central_curl() { return central_div().curl(); }
ExactRow averaged_curl() { return averaged_div().curl(); }

VecStencilRow dimsplit_div(double a3, double c, const GridSpec& grid) {
  using namespace bracket;
  const double k = a3 / (c * c);
  auto along = [&](Axis axis, double h) {
    return to_numeric(diff_pm1(axis), 1.0 / (2.0 * h)) - to_numeric(diff2_half(axis), k / (2.0 * h));
  };
  return {along(Axis::x, grid.dx), along(Axis::y, grid.dy)};
}

VecStencilRow dimsplit_vorticity(double a3, double c, const GridSpec& grid) {
  return dimsplit_div(a3, c, grid).curl();
}

int MatrixStencil::radius() const {
  int r = 0;
  for (const auto& b : blocks_) r = std::max(r, b.radius());
  return r;
}

std::map<Offset, Eigen::Matrix3d> MatrixStencil::coefficients() const {
  std::map<Offset, Eigen::Matrix3d> out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (const auto& [off, coef] : blocks_[r * 3 + c].entries()) {
        auto [it, inserted] = out.try_emplace(off, Eigen::Matrix3d::Zero());
        it->second(r, c) += coef;
      }
    }
  }
  return out;
}

double MatrixStencil::operator_norm() const {
  double best = 0.0;
  for (int r = 0; r < 3; ++r) {
    double row = 0.0;
    for (int c = 0; c < 3; ++c)
      for (const auto& [off, coef] : blocks_[r * 3 + c].entries()) row += std::abs(coef);
    best = std::max(best, row);
  }
  return best;
}

FieldSet MatrixStencil::apply(const FieldSet& q) const {
  FieldSet out(q.grid);
  constexpr Component comps[] = {Component::u, Component::v, Component::p};
  for (Component r : comps)
    for (Component c : comps) apply_add(block(r, c), q[c], q.grid, 1.0, out[r]);
  return out;
}

MatrixStencil MatrixStencil::operator+(const MatrixStencil& o) const {
  MatrixStencil out = *this;
  for (int n = 0; n < 9; ++n) out.blocks_[n] = out.blocks_[n] + o.blocks_[n];
  return out;
}

}  // namespace sps
