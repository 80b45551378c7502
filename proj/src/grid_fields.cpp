#include "sps/grid_fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sps {

void GridSpec::validate() const {
  if (nx < 3 || ny < 3) {
    std::ostringstream os;
    os << "grid needs at least 3 cells per axis, got " << nx << "x" << ny;
    throw Error(os.str());
  }
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
    throw Error("grid spacings must be positive and finite");
  }
}

GridSpec GridSpec::uniform(int nx, int ny, double lx, double ly) {
  GridSpec g{nx, ny, lx / nx, ly / ny};
  g.validate();
  return g;
}

void AcousticParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error("sound speed c must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error("Mach scaling eps must be positive");
}

FieldSet::FieldSet(const GridSpec& g)
    : grid(g), u(g.cells(), 0.0), v(g.cells(), 0.0), p(g.cells(), 0.0) {}

Component2D& FieldSet::operator[](Component c) {
  switch (c) {
    case Component::u: return u;
    case Component::v: return v;
    case Component::p: return p;
  }
  throw Error("bad component");
}

const Component2D& FieldSet::operator[](Component c) const {
  return const_cast<FieldSet&>(*this)[c];
}

double FieldSet::max_norm() const {
  return std::max({max_abs(u), max_abs(v), max_abs(p)});
}

bool FieldSet::all_finite() const {
  auto finite = [](const Component2D& q) {
    return std::all_of(q.begin(), q.end(), [](double x) { return std::isfinite(x); });
  };
  return finite(u) && finite(v) && finite(p);
}

FieldSet& FieldSet::operator+=(const FieldSet& other) {
  axpy(1.0, other);
  return *this;
}

FieldSet& FieldSet::operator*=(double s) {
  for (auto* q : {&u, &v, &p})
    for (double& x : *q) x *= s;
  return *this;
}

void FieldSet::axpy(double s, const FieldSet& other) {
  if (other.grid.cells() != grid.cells()) throw Error("axpy: grid mismatch");
  for (std::size_t n = 0; n < u.size(); ++n) {
    u[n] += s * other.u[n];
    v[n] += s * other.v[n];
    p[n] += s * other.p[n];
  }
}

FieldSet make_field(const GridSpec& grid, const CellInit& init) {
  grid.validate();
  FieldSet f(grid);
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      const CellValue c = init(grid.x_center(i), grid.y_center(j));
      if (!std::isfinite(c.u) || !std::isfinite(c.v) || !std::isfinite(c.p)) {
        std::ostringstream os;
        os << "initial data is not finite at cell (" << i << ", " << j << ")";
        throw Error(os.str());
      }
      const auto n = grid.index(i, j);
      f.u[n] = c.u;
      f.v[n] = c.v;
      f.p[n] = c.p;
    }
  }
  return f;
}

double l1_norm_central_diff(const Component2D& q, Axis axis, const GridSpec& grid) {
  if (q.size() != grid.cells()) throw Error("component size does not match grid");
  const double h = axis == Axis::x ? grid.dx : grid.dy;
  double sum = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      double plus, minus;
      if (axis == Axis::x) {
        plus = q[grid.index((i + 1) % grid.nx, j)];
        minus = q[grid.index((i - 1 + grid.nx) % grid.nx, j)];
      } else {
        plus = q[grid.index(i, (j + 1) % grid.ny)];
        minus = q[grid.index(i, (j - 1 + grid.ny) % grid.ny)];
      }
      sum += std::abs(plus - minus) / (2.0 * h);
    }
  }
  return sum * grid.dx * grid.dy;
}

double l1_norm(const Component2D& q, const GridSpec& grid) {
  double sum = 0.0;
  for (double x : q) sum += std::abs(x);
  return sum * grid.dx * grid.dy;
}

double max_abs(const Component2D& q) {
  double m = 0.0;
  for (double x : q) m = std::max(m, std::abs(x));
  return m;
}

Component2D shifted(const Component2D& q, const GridSpec& grid, int si, int sj) {
  Component2D out(q.size());
  for (int i = 0; i < grid.nx; ++i) {
    const int src_i = ((i - si) % grid.nx + grid.nx) % grid.nx;
    for (int j = 0; j < grid.ny; ++j) {
      const int src_j = ((j - sj) % grid.ny + grid.ny) % grid.ny;
      out[grid.index(i, j)] = q[grid.index(src_i, src_j)];
    }
  }
  return out;
}

}  // namespace sps
