/// @file stencil.hpp
/// @brief Linear finite-difference formulas on the periodic grid.
///
/// A stencil is a finite map from integer offsets S = (sx, sy) to coefficients;
/// applied at cell I it yields sum_S coeff(S) q_{I+S}. Exact-zero entries are
/// never stored, so two stencils are equal iff their maps are equal.
///
/// Bracket notation (axis-generic, shown for x):
///   [q]_{i+1/2}    = q_{i+1} - q_i          {q}_{i+1/2}    = q_{i+1} + q_i
///   [q]_{i±1}      = q_{i+1} - q_{i-1}
///   [[q]]_{i±1/2}  = q_{i+1} - 2 q_i + q_{i-1}
///   {{q}}_{i±1/2}  = q_{i+1} + 2 q_i + q_{i-1}
/// Multi-axis brackets are compositions; brackets along different axes commute.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdlib>
#include <map>
#include <utility>

#include "sps/grid_fields.hpp"
#include "sps/rational.hpp"

namespace sps {

struct Offset {
  int sx = 0;
  int sy = 0;
  auto operator<=>(const Offset&) const = default;
  Offset operator+(const Offset& o) const { return {sx + o.sx, sy + o.sy}; }
  Offset operator-() const { return {-sx, -sy}; }
};

template <class T>
class BasicStencil {
 public:
  using Map = std::map<Offset, T>;

  BasicStencil() = default;
  BasicStencil(std::initializer_list<std::pair<const Offset, T>> init) {
    for (const auto& [off, c] : init) add(off, c);
  }

  static BasicStencil identity() { return BasicStencil{{Offset{0, 0}, T(1)}}; }

  /// Accumulates `c` at `off`; entries that cancel to exactly zero are removed.
  void add(Offset off, const T& c) {
    auto it = entries_.find(off);
    if (it == entries_.end()) {
      if (c != 0) entries_.emplace(off, c);
      return;
    }
    it->second += c;
    if (it->second == 0) entries_.erase(it);
  }

  T coefficient(Offset off) const {
    auto it = entries_.find(off);
    return it == entries_.end() ? T(0) : it->second;
  }

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Smallest N with every offset in [-N, N]^2.
  int radius() const {
    int r = 0;
    for (const auto& [off, c] : entries_) r = std::max({r, std::abs(off.sx), std::abs(off.sy)});
    return r;
  }

  /// Convolution: (A.compose(B)) q = A (B q).
  BasicStencil compose(const BasicStencil& other) const {
    BasicStencil out;
    for (const auto& [oa, ca] : entries_)
      for (const auto& [ob, cb] : other.entries_) out.add(oa + ob, T(ca * cb));
    return out;
  }

  BasicStencil shifted(Offset by) const {
    BasicStencil out;
    for (const auto& [off, c] : entries_) out.add(off + by, c);
    return out;
  }

  BasicStencil scaled(const T& s) const {
    BasicStencil out;
    for (const auto& [off, c] : entries_) out.add(off, T(c * s));
    return out;
  }

  /// Exchanges the roles of the x and y axes.
  BasicStencil transposed() const {
    BasicStencil out;
    for (const auto& [off, c] : entries_) out.add(Offset{off.sy, off.sx}, c);
    return out;
  }

  /// Mirror image under x -> -x and/or y -> -y.
  BasicStencil reflected(bool flip_x, bool flip_y) const {
    BasicStencil out;
    for (const auto& [off, c] : entries_)
      out.add(Offset{flip_x ? -off.sx : off.sx, flip_y ? -off.sy : off.sy}, c);
    return out;
  }

  BasicStencil operator+(const BasicStencil& o) const {
    BasicStencil out = *this;
    for (const auto& [off, c] : o.entries_) out.add(off, c);
    return out;
  }
  BasicStencil operator-(const BasicStencil& o) const { return *this + o.scaled(T(-1)); }
  BasicStencil operator-() const { return scaled(T(-1)); }

  bool operator==(const BasicStencil& o) const { return entries_ == o.entries_; }

 private:
  Map entries_;
};

using ScalarStencil = BasicStencil<double>;
using RationalStencil = BasicStencil<Rational>;

/// Converts exact coefficients to doubles, multiplying each by `scale`.
ScalarStencil to_numeric(const RationalStencil& st, double scale = 1.0);

/// out_I = sum_S coeff(S) q_{I+S} with periodic indexing. Throws Error when the
/// grid has fewer than 2N+1 cells along an axis.
Component2D apply(const ScalarStencil& st, const Component2D& q, const GridSpec& grid);

/// Accumulating form of `apply`: out += scale * (st q).
void apply_add(const ScalarStencil& st, const Component2D& q, const GridSpec& grid, double scale,
               Component2D& out);

/// Bracket builders. All are integer stencils along one axis.
namespace bracket {
RationalStencil diff_half(Axis axis);   ///< [q]_{+1/2}
RationalStencil sum_half(Axis axis);    ///< {q}_{+1/2}
RationalStencil diff_pm1(Axis axis);    ///< [q]_{±1}
RationalStencil diff2_half(Axis axis);  ///< [[q]]_{±1/2}
RationalStencil sum2_half(Axis axis);   ///< {{q}}_{±1/2}
}  // namespace bracket

/// Exact scalar operator: shape * Δx^unit.x * Δy^unit.y.
struct ExactScalar {
  RationalStencil shape;
  SpacingMonomial unit;

  ScalarStencil evaluate(double dx, double dy) const {
    return to_numeric(shape, unit.value(dx, dy));
  }
};

/// Numeric operator acting on (u, v) and returning one scalar per cell.
struct VecStencilRow {
  ScalarStencil u;
  ScalarStencil v;

  Component2D apply(const Component2D& fu, const Component2D& fv, const GridSpec& grid) const;
  /// Row obtained by the substitution (u, v) -> (v, -u).
  VecStencilRow curl() const { return {-v, u}; }
  int radius() const { return std::max(u.radius(), v.radius()); }
};

/// Exact (u, v)-row with formal spacing units per component.
struct ExactRow {
  ExactScalar u;
  ExactScalar v;

  VecStencilRow evaluate(const GridSpec& grid) const {
    return {u.evaluate(grid.dx, grid.dy), v.evaluate(grid.dx, grid.dy)};
  }
  ExactRow curl() const { return {{-v.shape, v.unit}, {u.shape, u.unit}}; }
  ExactRow scaled(const Rational& s) const {
    return {{u.shape.scaled(s), u.unit}, {v.shape.scaled(s), v.unit}};
  }
};

/// [u]_{i±1}/(2Δx) + [v]_{j±1}/(2Δy).
ExactRow central_div();
/// {{[u]_{i±1}}}_{j±1/2}/(8Δx) + [{{v}}_{i±1/2}]_{j±1}/(8Δy).
ExactRow averaged_div();
/// (c1/4)({{[[u]]_{i±1/2}}}_{j±1/2}/Δx + [[v]_{i±1}]_{j±1}/Δy)
///   + (c2/4)([[u]_{i±1}]_{j±1}/Δx + [[{{v}}_{i±1/2}]]_{j±1/2}/Δy).
/// Vanishes exactly wherever averaged_div vanishes.
ExactRow consistent_diffusion(const Rational& c1, const Rational& c2);
ExactRow central_curl();
ExactRow averaged_curl();

/// [u]_{i±1}/(2Δx) - (a3/c^2)[[u]]_{i±1/2}/(2Δx), and the y counterpart on v:
/// the divergence kept stationary by the dimensionally split schemes with a1 = 0.
VecStencilRow dimsplit_div(double a3, double c, const GridSpec& grid);
/// dimsplit_div under (u, v) -> (v, -u).
VecStencilRow dimsplit_vorticity(double a3, double c, const GridSpec& grid);

/// Semi-discrete scheme d_t q_I + sum_S alpha_S q_{I+S} = 0, stored as a 3x3
/// array of scalar stencils (row = equation, column = variable). Coefficients
/// already carry their 1/Δ factors.
class MatrixStencil {
 public:
  ScalarStencil& block(Component row, Component col) {
    return blocks_[static_cast<int>(row) * 3 + static_cast<int>(col)];
  }
  const ScalarStencil& block(Component row, Component col) const {
    return blocks_[static_cast<int>(row) * 3 + static_cast<int>(col)];
  }

  int radius() const;
  /// alpha_S as dense 3x3 matrices, one per offset that appears in any block.
  std::map<Offset, Eigen::Matrix3d> coefficients() const;
  /// Row sums of |alpha| maximized over rows: a bound on the operator's max-norm.
  double operator_norm() const;
  /// sum_S alpha_S q_{I+S} at every cell.
  FieldSet apply(const FieldSet& q) const;

  MatrixStencil operator+(const MatrixStencil& o) const;
  bool operator==(const MatrixStencil&) const = default;

 private:
  std::array<ScalarStencil, 9> blocks_{};
};

}  // namespace sps
