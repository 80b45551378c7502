/// @file laurent.hpp
/// @brief Exact Laurent-polynomial algebra in the translation factors t_x, t_y.
///
/// The symbol of a scalar stencil sum_S c_S q_{I+S} is sum_S c_S t_x^{sx} t_y^{sy}.
/// Spacing factors such as 1/Δx are kept as a formal monomial next to the
/// polynomial, so every identity proven here holds for all grid spacings.

#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sps/fourier.hpp"
#include "sps/rational.hpp"
#include "sps/stencil.hpp"

namespace sps {

/// Exponent pair (a, b) of t_x^a t_y^b.
using Monomial = Offset;

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(RationalStencil shape, SpacingMonomial unit = {})
      : shape_(std::move(shape)), unit_(unit) {}

  static LaurentPoly constant(const Rational& c) {
    return LaurentPoly(RationalStencil{{Monomial{0, 0}, c}});
  }
  static LaurentPoly monomial(int a, int b, const Rational& c = 1) {
    return LaurentPoly(RationalStencil{{Monomial{a, b}, c}});
  }
  /// t_x or t_y to the first power.
  static LaurentPoly t(Axis axis) { return axis == Axis::x ? monomial(1, 0) : monomial(0, 1); }

  const RationalStencil& terms() const { return shape_; }
  const SpacingMonomial& unit() const { return unit_; }
  bool is_zero() const { return shape_.empty(); }
  Rational coefficient(int a, int b) const { return shape_.coefficient({a, b}); }

  /// Sums require equal units unless one operand is zero.
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const { return LaurentPoly(-shape_, unit_); }
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(const Rational& s) const { return LaurentPoly(shape_.scaled(s), unit_); }
  LaurentPoly with_unit(SpacingMonomial u) const { return LaurentPoly(shape_, u); }
  /// Multiplication by t_x^a t_y^b.
  LaurentPoly shifted(int a, int b) const { return LaurentPoly(shape_.shifted({a, b}), unit_); }

  /// Value at t_x = exp(i θx), t_y = exp(i θy), with the unit evaluated at (dx, dy).
  std::complex<double> evaluate(const Phase& ph, double dx = 1.0, double dy = 1.0) const;

  /// Exact equality of terms and (for nonzero polynomials) units.
  bool operator==(const LaurentPoly& o) const;

  std::string to_string() const;

 private:
  RationalStencil shape_;
  SpacingMonomial unit_;
};

/// Result of exact division: quotient when divisible.
struct DivisionResult {
  bool divisible = false;
  LaurentPoly quotient;
  LaurentPoly remainder;
};

/// Finds R with Q * R = P exactly, or reports non-divisibility. Works in the
/// ring of Laurent polynomials: both operands are first multiplied by
/// monomials to become ordinary polynomials. Throws Error when Q = 0.
DivisionResult divide_exact(const LaurentPoly& p, const LaurentPoly& q);

/// Symbol of a (u, v)-row operator: (P_u, P_v).
struct LaurentRow {
  LaurentPoly u;
  LaurentPoly v;

  LaurentRow operator+(const LaurentRow& o) const { return {u + o.u, v + o.v}; }
  LaurentRow operator-(const LaurentRow& o) const { return {u - o.u, v - o.v}; }
  LaurentRow scaled(const Rational& s) const { return {u.scaled(s), v.scaled(s)}; }
  /// Multiplies both components by a scalar polynomial (units multiply).
  LaurentRow times(const LaurentPoly& f) const { return {u * f, v * f}; }
  bool is_zero() const { return u.is_zero() && v.is_zero(); }
  bool operator==(const LaurentRow& o) const { return u == o.u && v == o.v; }
  std::string to_string() const;
};

LaurentPoly stencil_to_symbol(const ExactScalar& st);
LaurentRow stencil_to_symbol(const ExactRow& row);
ExactScalar symbol_to_stencil(const LaurentPoly& p);
ExactRow symbol_to_stencil(const LaurentRow& row);

/// Recovers exact coefficients from a numeric stencil. Each coefficient must be
/// a rational with denominator at most `max_den` to within 1e-14 relative;
/// otherwise throws Error.
RationalStencil rationalize(const ScalarStencil& st, long max_den = 1 << 20);

/// B_u A_v - B_v A_u, the exact cross product of two rows.
LaurentPoly cross(const LaurentRow& b, const LaurentRow& a);

/// True iff B_u A_v - B_v A_u vanishes identically, i.e. B annihilates every
/// (û, v̂) that A annihilates.
bool cross_consistency(const LaurentRow& b, const LaurentRow& a);

/// Requirements placed on B beyond cross consistency.
struct OrderConstraints {
  /// B kills constants and linear fields (order-0 and order-1 Taylor rows vanish).
  bool annihilate_linear = true;
  /// B(S) = B(-S): only even Taylor orders, as a second-derivative formula has.
  bool point_symmetric = true;
  /// B is invariant under the simultaneous swap (u, v, x, y) -> (v, u, y, x).
  bool xy_swap_symmetric = false;
};

struct NullspaceResult {
  int radius = 0;
  int unknowns = 0;
  int equations = 0;
  std::vector<ExactRow> basis;  ///< shapes carry the units of A
  /// Every nonzero member has a nonzero second-order Taylor row.
  bool leading_second_order = true;
  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Exact solution space of B (radius `radius`, both components) with
/// cross_consistency(B, A) and the order constraints. Radius must be 1 or 2;
/// smaller radii cannot hold a second difference and throw Error.
NullspaceResult consistency_nullspace(const ExactRow& a, int radius,
                                      const OrderConstraints& constraints = {});

/// True iff the rows span the same rational vector space. Units must agree
/// componentwise across all rows.
bool same_span(const std::vector<ExactRow>& lhs, const std::vector<ExactRow>& rhs);

/// Rank of a set of rows over the rationals.
int exact_rank(const std::vector<ExactRow>& rows);

/// The symmetry predicate used by the scan: B_u odd in x and even in y, B_v
/// the mirror image under x <-> y with B_u <-> B_v.
bool is_directionally_unbiased(const ExactRow& row);

/// Radius-1 divergence row (1/Δx)[α [u]_{i±1} + β (corner differences)] and
/// its mirror image. (α, β) = (1/4, 1/8) is averaged_div, (1/2, 0) central_div.
ExactRow moore_divergence(const Rational& alpha, const Rational& beta);

struct MooreScanEntry {
  Rational alpha;
  Rational beta;
  int nullspace_dim = 0;
  bool on_averaged_ray = false;  ///< α = 2β
};

struct MooreScanReport {
  std::vector<MooreScanEntry> entries;
  /// Positive dimension occurs on the averaged ray and nowhere else.
  bool positive_only_on_averaged_ray = false;
  int positive_members = 0;
};

/// Scans the radius-1 family of directionally unbiased divergence rows: an
/// integer lattice |α|, |β| <= lattice (members with 2α + 4β = 0 have no
/// first-order term and are skipped) and the normalized slice 2α + 4β = 1 with
/// β = k / slice_den for |k| <= slice_den.
MooreScanReport moore_symmetry_scan(int lattice = 3, int slice_den = 16);

struct IdentityResult {
  std::string name;
  bool holds = false;
  LaurentRow residual;  ///< lhs - rhs
};

/// (t_x + 1) symbol(consistent_diffusion(1, 0)) = 2 (t_x - 1) symbol(div) and
/// (t_y + 1) symbol(consistent_diffusion(0, 1)) = 2 (t_y - 1) symbol(div).
std::vector<IdentityResult> operator_identity_check(const ExactRow& div = averaged_div());

/// Key of one Taylor term: coefficient * Δx^px Δy^py ∂x^m ∂y^n (component).
struct TaylorKey {
  Component component = Component::u;
  int m = 0;
  int n = 0;
  int px = 0;
  int py = 0;
  auto operator<=>(const TaylorKey&) const = default;
};

struct TaylorSeries {
  std::map<TaylorKey, Rational> terms;

  Rational coefficient(const TaylorKey& key) const;
  /// Terms with px + py == power.
  TaylorSeries at_power(int power) const;
  /// Collapses Δy onto Δx.
  TaylorSeries isotropic() const;
  bool operator==(const TaylorSeries&) const = default;
  std::string to_string() const;
};

/// Expansion of the row applied to smooth (u, v): every term up to total
/// spacing power `order` (px + py <= order). Throws Error for order > 8.
TaylorSeries taylor_expand(const LaurentRow& row, int order);

}  // namespace sps
