#include "sps/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sps {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (!(unit_ == o.unit_))
    throw Error("adding Laurent polynomials with units " + unit_.to_string() + " and " +
                o.unit_.to_string());
  return LaurentPoly(shape_ + o.shape_, unit_);
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  return LaurentPoly(shape_.compose(o.shape_), unit_ * o.unit_);
}

std::complex<double> LaurentPoly::evaluate(const Phase& ph, double dx, double dy) const {
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : shape_.entries())
    sum += to_double(c) * std::polar(1.0, m.sx * ph.thx + m.sy * ph.thy);
  return sum * unit_.value(dx, dy);
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  return shape_ == o.shape_ && unit_ == o.unit_;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest powers first reads more naturally.
  const auto& e = shape_.entries();
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    const bool plain = m.sx == 0 && m.sy == 0;
    if (mag != 1 || plain) os << to_exact_string(mag);
    if (m.sx != 0) os << (mag != 1 ? "*" : "") << "tx^" << m.sx;
    if (m.sy != 0) os << ((mag != 1 || m.sx != 0) ? "*" : "") << "ty^" << m.sy;
  }
  if (!(unit_ == SpacingMonomial{})) return "(" + os.str() + ") * " + unit_.to_string();
  return os.str();
}

std::string LaurentRow::to_string() const {
  return "[u: " + u.to_string() + "; v: " + v.to_string() + "]";
}

// ------------------------------------------------------------------- division

namespace {

/// Smallest exponents present in each variable.
Monomial min_exponents(const RationalStencil& s) {
  Monomial m{0, 0};
  bool first = true;
  for (const auto& [off, c] : s.entries()) {
    if (first) {
      m = off;
      first = false;
    } else {
      m.sx = std::min(m.sx, off.sx);
      m.sy = std::min(m.sy, off.sy);
    }
  }
  return m;
}

/// Lex-largest term (x exponent first).
std::pair<Monomial, Rational> leading(const RationalStencil& s) {
  const auto it = std::prev(s.entries().end());
  return {it->first, it->second};
}

}  // namespace

DivisionResult divide_exact(const LaurentPoly& p, const LaurentPoly& q) {
  if (q.is_zero()) throw Error("division by the zero Laurent polynomial");
  DivisionResult res;
  const SpacingMonomial unit{p.unit().x - q.unit().x, p.unit().y - q.unit().y};
  if (p.is_zero()) {
    res.divisible = true;
    res.quotient = LaurentPoly({}, unit);
    return res;
  }
  const Monomial sp = min_exponents(p.terms());
  const Monomial sq = min_exponents(q.terms());
  RationalStencil rest = p.terms().shifted(-sp);
  const RationalStencil den = q.terms().shifted(-sq);
  const auto [lq, lc] = leading(den);

  RationalStencil quot;
  RationalStencil rem;
  while (!rest.empty()) {
    const auto [lp, pc] = leading(rest);
    if (lp.sx >= lq.sx && lp.sy >= lq.sy) {
      const Monomial step{lp.sx - lq.sx, lp.sy - lq.sy};
      const Rational f = pc / lc;
      quot.add(step, f);
      rest = rest - den.shifted(step).scaled(f);
    } else {
      rem.add(lp, pc);
      rest.add(lp, -pc);
    }
  }
  res.divisible = rem.empty();
  const Monomial back{sp.sx - sq.sx, sp.sy - sq.sy};
  res.quotient = LaurentPoly(quot.shifted(back), unit);
  res.remainder = LaurentPoly(rem.shifted(sp), p.unit());
  return res;
}

// ------------------------------------------------------------ symbol <-> stencil

LaurentPoly stencil_to_symbol(const ExactScalar& st) { return LaurentPoly(st.shape, st.unit); }

LaurentRow stencil_to_symbol(const ExactRow& row) {
  return {stencil_to_symbol(row.u), stencil_to_symbol(row.v)};
}

ExactScalar symbol_to_stencil(const LaurentPoly& p) { return {p.terms(), p.unit()}; }

ExactRow symbol_to_stencil(const LaurentRow& row) {
  return {symbol_to_stencil(row.u), symbol_to_stencil(row.v)};
}

namespace {

Rational rationalize_value(double x, long max_den) {
  if (!std::isfinite(x)) throw Error("non-finite stencil coefficient");
  // Continued-fraction convergents.
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rest);
    if (std::abs(a) > 9.0e15) break;
    const long long ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-14 * std::max(1.0, std::abs(x))) {
      Rational r(static_cast<long>(h1), static_cast<long>(k1));
      r.canonicalize();
      return r;
    }
    const double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  std::ostringstream os;
  os.precision(17);
  os << "stencil coefficient " << x << " is not a rational with denominator <= " << max_den;
  throw Error(os.str());
}

}  // namespace

RationalStencil rationalize(const ScalarStencil& st, long max_den) {
  RationalStencil out;
  for (const auto& [off, c] : st.entries()) out.add(off, rationalize_value(c, max_den));
  return out;
}

// ------------------------------------------------------------ cross consistency

LaurentPoly cross(const LaurentRow& b, const LaurentRow& a) {
  const LaurentPoly lhs = b.u * a.v;
  const LaurentPoly rhs = b.v * a.u;
  if (lhs.is_zero() || rhs.is_zero() || lhs.unit() == rhs.unit()) return lhs - rhs;
  // Different formal units cannot cancel; keep both parts visible by putting
  // the unit mismatch into an error.
  throw Error("cross product terms carry different units " + lhs.unit().to_string() + " and " +
              rhs.unit().to_string());
}

bool cross_consistency(const LaurentRow& b, const LaurentRow& a) {
  const LaurentPoly lhs = b.u * a.v;
  const LaurentPoly rhs = b.v * a.u;
  if (lhs.is_zero() || rhs.is_zero() || lhs.unit() == rhs.unit()) return (lhs - rhs).is_zero();
  return lhs.is_zero() && rhs.is_zero();
}

// --------------------------------------------------------------- exact linear algebra

namespace {

using RatMatrix = std::vector<std::vector<Rational>>;

/// Reduces `m` (n columns) to reduced row echelon form; returns pivot columns.
std::vector<int> rref(RatMatrix& m, int ncols) {
  std::vector<int> pivots;
  int row = 0;
  const int nrows = static_cast<int>(m.size());
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int sel = -1;
    for (int r = row; r < nrows; ++r)
      if (m[r][col] != 0) { sel = r; break; }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    const Rational piv = m[row][col];
    for (int c = col; c < ncols; ++c) m[row][c] /= piv;
    for (int r = 0; r < nrows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

RatMatrix nullspace(RatMatrix m, int ncols) {
  const std::vector<int> pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> vec(ncols, Rational(0));
    vec[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) vec[pivots[r]] = -m[r][free];
    basis.push_back(std::move(vec));
  }
  return basis;
}

int rank(RatMatrix m, int ncols) { return static_cast<int>(rref(m, ncols).size()); }

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Rational ipow(int base, int e) {
  Rational r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

/// Moment sum_S c_S sx^m sy^n / (m! n!).
Rational moment(const RationalStencil& st, int m, int n) {
  Rational sum = 0;
  for (const auto& [off, c] : st.entries()) sum += c * ipow(off.sx, m) * ipow(off.sy, n);
  return sum / (factorial(m) * factorial(n));
}

/// Unknown layout of a radius-N row: u block then v block, offsets in box order.
struct BoxLayout {
  int radius;
  int side() const { return 2 * radius + 1; }
  int per_component() const { return side() * side(); }
  int size() const { return 2 * per_component(); }
  int index(int comp, Offset s) const {
    return comp * per_component() + (s.sx + radius) * side() + (s.sy + radius);
  }
  Offset offset(int idx) const {
    const int local = idx % per_component();
    return {local / side() - radius, local % side() - radius};
  }
  int component(int idx) const { return idx / per_component(); }
};

ExactRow row_from_vector(const std::vector<Rational>& vec, const BoxLayout& box,
                         const ExactRow& units) {
  ExactRow row{{{}, units.u.unit}, {{}, units.v.unit}};
  for (int k = 0; k < box.size(); ++k) {
    if (vec[k] == 0) continue;
    (box.component(k) == 0 ? row.u.shape : row.v.shape).add(box.offset(k), vec[k]);
  }
  return row;
}

/// Flattens rows to coefficient vectors over the union of their offsets.
RatMatrix flatten(const std::vector<ExactRow>& rows, int& ncols) {
  std::map<std::pair<int, Offset>, int> cols;
  for (const auto& r : rows) {
    for (const auto& [off, c] : r.u.shape.entries()) cols.try_emplace({0, off}, 0);
    for (const auto& [off, c] : r.v.shape.entries()) cols.try_emplace({1, off}, 0);
  }
  int n = 0;
  for (auto& [k, idx] : cols) idx = n++;
  ncols = n;
  RatMatrix m;
  for (const auto& r : rows) {
    std::vector<Rational> vec(n, Rational(0));
    for (const auto& [off, c] : r.u.shape.entries()) vec[cols.at({0, off})] = c;
    for (const auto& [off, c] : r.v.shape.entries()) vec[cols.at({1, off})] = c;
    m.push_back(std::move(vec));
  }
  return m;
}

}  // namespace

NullspaceResult consistency_nullspace(const ExactRow& a, int radius,
                                      const OrderConstraints& constraints) {
  if (radius < 1)
    throw Error("radius " + std::to_string(radius) +
                " cannot hold a second difference; need radius >= 1");
  if (radius > 2) throw Error("nullspace search supports radius 1 or 2, got " + std::to_string(radius));

  const BoxLayout box{radius};
  const int n = box.size();
  RatMatrix eqs;

  // Cross product B_u A_v - B_v A_u: one equation per monomial.
  std::map<Monomial, std::vector<Rational>> cross_rows;
  auto add_products = [&](int comp, const RationalStencil& other, const Rational& sign) {
    for (int sx = -radius; sx <= radius; ++sx) {
      for (int sy = -radius; sy <= radius; ++sy) {
        const Offset s{sx, sy};
        for (const auto& [off, c] : other.entries()) {
          auto [it, inserted] = cross_rows.try_emplace(s + off, std::vector<Rational>(n, Rational(0)));
          it->second[box.index(comp, s)] += sign * c;
        }
      }
    }
  };
  add_products(0, a.v.shape, Rational(1));
  add_products(1, a.u.shape, Rational(-1));
  for (auto& [m, row] : cross_rows) eqs.push_back(std::move(row));

  auto functional = [&](int comp, auto&& weight) {
    std::vector<Rational> row(n, Rational(0));
    for (int sx = -radius; sx <= radius; ++sx)
      for (int sy = -radius; sy <= radius; ++sy) row[box.index(comp, {sx, sy})] = weight(sx, sy);
    return row;
  };

  if (constraints.annihilate_linear) {
    for (int comp = 0; comp < 2; ++comp) {
      eqs.push_back(functional(comp, [](int, int) { return Rational(1); }));
      eqs.push_back(functional(comp, [](int sx, int) { return Rational(sx); }));
      eqs.push_back(functional(comp, [](int, int sy) { return Rational(sy); }));
    }
  }
  if (constraints.point_symmetric) {
    for (int comp = 0; comp < 2; ++comp) {
      for (int sx = -radius; sx <= radius; ++sx) {
        for (int sy = -radius; sy <= radius; ++sy) {
          const Offset s{sx, sy};
          if (!(-s < s)) continue;
          std::vector<Rational> row(n, Rational(0));
          row[box.index(comp, s)] = 1;
          row[box.index(comp, -s)] = -1;
          eqs.push_back(std::move(row));
        }
      }
    }
  }
  if (constraints.xy_swap_symmetric) {
    for (int sx = -radius; sx <= radius; ++sx) {
      for (int sy = -radius; sy <= radius; ++sy) {
        std::vector<Rational> row(n, Rational(0));
        row[box.index(0, {sx, sy})] = 1;
        row[box.index(1, {sy, sx})] = -1;
        eqs.push_back(std::move(row));
      }
    }
  }

  NullspaceResult res;
  res.radius = radius;
  res.unknowns = n;
  res.equations = static_cast<int>(eqs.size());
  const RatMatrix basis = nullspace(std::move(eqs), n);
  for (const auto& vec : basis) res.basis.push_back(row_from_vector(vec, box, a));

  // Second-order Taylor rows of the basis must be linearly independent.
  if (!res.basis.empty()) {
    RatMatrix second;
    for (const auto& b : res.basis) {
      std::vector<Rational> row;
      for (const auto* st : {&b.u.shape, &b.v.shape})
        for (auto [m, k] : {std::pair{2, 0}, std::pair{1, 1}, std::pair{0, 2}})
          row.push_back(moment(*st, m, k));
      second.push_back(std::move(row));
    }
    res.leading_second_order = rank(std::move(second), 6) == res.dimension();
  }
  return res;
}

int exact_rank(const std::vector<ExactRow>& rows) {
  int ncols = 0;
  RatMatrix m = flatten(rows, ncols);
  return rank(std::move(m), ncols);
}

bool same_span(const std::vector<ExactRow>& lhs, const std::vector<ExactRow>& rhs) {
  std::vector<ExactRow> all = lhs;
  all.insert(all.end(), rhs.begin(), rhs.end());
  for (const auto& r : all) {
    if (!(r.u.unit == all.front().u.unit) || !(r.v.unit == all.front().v.unit)) return false;
  }
  const int rl = exact_rank(lhs);
  return rl == exact_rank(rhs) && rl == exact_rank(all);
}

// ------------------------------------------------------------------ Moore scan

bool is_directionally_unbiased(const ExactRow& row) {
  const auto& bu = row.u.shape;
  const bool u_odd_x = bu.reflected(true, false) == -bu;
  const bool u_even_y = bu.reflected(false, true) == bu;
  const bool mirror = row.v.shape == bu.transposed() &&
                      row.v.unit == SpacingMonomial{row.u.unit.y, row.u.unit.x};
  return u_odd_x && u_even_y && mirror;
}

ExactRow moore_divergence(const Rational& alpha, const Rational& beta) {
  RationalStencil bu;
  bu.add({1, 0}, alpha);
  bu.add({-1, 0}, -alpha);
  for (int sy : {-1, 1}) {
    bu.add({1, sy}, beta);
    bu.add({-1, sy}, -beta);
  }
  return {{bu, {-1, 0}}, {bu.transposed(), {0, -1}}};
}

MooreScanReport moore_symmetry_scan(int lattice, int slice_den) {
  MooreScanReport rep;
  auto visit = [&](const Rational& alpha, const Rational& beta) {
    const ExactRow row = moore_divergence(alpha, beta);
    if (!is_directionally_unbiased(row)) throw Error("scan member violates the symmetry predicate");
    MooreScanEntry e{alpha, beta, consistency_nullspace(row, 1).dimension(), alpha == 2 * beta};
    rep.entries.push_back(e);
  };
  for (int a = -lattice; a <= lattice; ++a)
    for (int b = -lattice; b <= lattice; ++b)
      if (2 * a + 4 * b != 0) visit(Rational(a), Rational(b));
  for (int k = -slice_den; k <= slice_den; ++k) {
    const Rational beta = make_rational(k, slice_den);
    visit((1 - 4 * beta) / 2, beta);
  }
  bool only_on_ray = true;
  bool ray_hit = false;
  for (const auto& e : rep.entries) {
    if (e.nullspace_dim > 0) {
      ++rep.positive_members;
      if (!e.on_averaged_ray) only_on_ray = false;
    }
    if (e.on_averaged_ray && e.nullspace_dim > 0) ray_hit = true;
    if (e.on_averaged_ray && e.nullspace_dim == 0) only_on_ray = false;
  }
  rep.positive_only_on_averaged_ray = only_on_ray && ray_hit;
  return rep;
}

// ------------------------------------------------------------ operator identity

std::vector<IdentityResult> operator_identity_check(const ExactRow& div) {
  const LaurentRow d = stencil_to_symbol(div);
  std::vector<IdentityResult> out;
  for (Axis axis : {Axis::x, Axis::y}) {
    const LaurentPoly t = LaurentPoly::t(axis);
    const LaurentPoly one = LaurentPoly::constant(1);
    const ExactRow cd = axis == Axis::x ? consistent_diffusion(1, 0) : consistent_diffusion(0, 1);
    const LaurentRow lhs = stencil_to_symbol(cd).times(t + one);
    const LaurentRow rhs = d.times((t - one).scaled(2));
    IdentityResult r;
    r.name = axis == Axis::x ? "(tx+1)*cd(1,0) == 2(tx-1)*div" : "(ty+1)*cd(0,1) == 2(ty-1)*div";
    r.residual = lhs - rhs;
    r.holds = r.residual.is_zero();
    out.push_back(std::move(r));
  }
  return out;
}

// -------------------------------------------------------------------- Taylor

Rational TaylorSeries::coefficient(const TaylorKey& key) const {
  auto it = terms.find(key);
  return it == terms.end() ? Rational(0) : it->second;
}

TaylorSeries TaylorSeries::at_power(int power) const {
  TaylorSeries out;
  for (const auto& [k, c] : terms)
    if (k.px + k.py == power) out.terms.emplace(k, c);
  return out;
}

TaylorSeries TaylorSeries::isotropic() const {
  TaylorSeries out;
  for (const auto& [k, c] : terms) {
    TaylorKey iso = k;
    iso.px = k.px + k.py;
    iso.py = 0;
    auto [it, inserted] = out.terms.try_emplace(iso, Rational(0));
    it->second += c;
    if (it->second == 0) out.terms.erase(it);
  }
  return out;
}

std::string TaylorSeries::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    os << (first ? "" : " + ") << "(" << to_exact_string(c) << ")";
    first = false;
    if (k.px != 0) os << " dx^" << k.px;
    if (k.py != 0) os << " dy^" << k.py;
    if (k.m != 0) os << " d_x^" << k.m;
    if (k.n != 0) os << " d_y^" << k.n;
    os << " " << (k.component == Component::u ? "u" : "v");
  }
  return os.str();
}

TaylorSeries taylor_expand(const LaurentRow& row, int order) {
  if (order > 8) throw Error("Taylor order above 8 is not supported");
  TaylorSeries out;
  for (const auto& [comp, poly] : {std::pair{Component::u, &row.u}, std::pair{Component::v, &row.v}}) {
    if (poly->is_zero()) continue;
    const SpacingMonomial unit = poly->unit();
    const int max_deriv = order - unit.x - unit.y;
    for (int total = 0; total <= max_deriv; ++total) {
      for (int m = 0; m <= total; ++m) {
        const int n = total - m;
        const Rational c = moment(poly->terms(), m, n);
        if (c == 0) continue;
        out.terms.emplace(TaylorKey{comp, m, n, m + unit.x, n + unit.y}, c);
      }
    }
  }
  return out;
}

}  // namespace sps
