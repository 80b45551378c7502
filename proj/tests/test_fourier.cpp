#include "doctest.h"
#include "oracles.hpp"
#include "sps/fourier.hpp"
#include "sps/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace sps;
using oracle::pi;

namespace {

const GridSpec kGrid{20, 16, 0.05, 0.0625};
const AcousticParams kParams{1.3, 0.2};

std::vector<Phase> random_phases(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(-pi, pi);
  std::vector<Phase> out;
  for (int k = 0; k < n; ++k) out.push_back({th(rng), th(rng)});
  return out;
}

double max_entry(const Matrix3c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("continuous symbol J.k") {
  CHECK(jk_matrix(kParams, {0, 0}).isZero(0.0));
  const Wavevector k{3.0, -4.0};
  const Eigen::Matrix3d j = jk_matrix(kParams, k);
  const double eps2 = kParams.eps * kParams.eps, c2 = kParams.c * kParams.c;
  CHECK(j(0, 2) == doctest::Approx(3.0 / eps2));
  CHECK(j(1, 2) == doctest::Approx(-4.0 / eps2));
  CHECK(j(2, 0) == doctest::Approx(3.0 * c2));
  CHECK(j(2, 1) == doctest::Approx(-4.0 * c2));
  CHECK(j.block<2, 2>(0, 0).isZero(0.0));
  CHECK(j(2, 2) == 0.0);

  Eigen::Vector3cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix3cd>(j.cast<std::complex<double>>()).eigenvalues();
  std::vector<double> re;
  for (int n = 0; n < 3; ++n) {
    CHECK(std::abs(ev(n).imag()) < 1e-10);
    re.push_back(ev(n).real());
  }
  std::sort(re.begin(), re.end());
  const double w = kParams.c * 5.0 / kParams.eps;
  CHECK(re[0] == doctest::Approx(-w).epsilon(1e-12));
  CHECK(std::abs(re[1]) < 1e-10);
  CHECK(re[2] == doctest::Approx(w).epsilon(1e-12));

  const Matrix3c jc = j.cast<std::complex<double>>();
  CHECK(kernel_dimension(jc) == 1);
  CHECK(alignment(right_kernel(jc), Vector3c(4.0, 3.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(alignment(left_kernel(jc).transpose(), Vector3c(4.0, 3.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (const Phase& ph : random_phases(20, 3))
    CHECK(kernel_dimension(jk_matrix(kParams, Wavevector::from_phase(ph, kGrid)).cast<std::complex<double>>()) == 1);
}

TEST_CASE("phase wrapping") {
  const GridSpec g = GridSpec::uniform(10, 10);
  const Phase p = Wavevector{30 * pi, -10 * pi}.phase(g);
  CHECK(p.thx == doctest::Approx(pi));
  CHECK(p.thy == doctest::Approx(pi));
  const Phase q = Wavevector{35 * pi, 0.0}.phase(g);
  CHECK(q.thx == doctest::Approx(-pi / 2));
  for (double kx : {-123.4, 0.0, 7.7, 1e4}) {
    const Phase r = Wavevector{kx, kx}.phase(g);
    CHECK(r.thx > -pi);
    CHECK(r.thx <= pi);
  }
}

TEST_CASE("consistency: E(0) vanishes for the whole catalog") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const SchemeSpec s = make_scheme(name, kParams, kGrid, {0, 0.4, -1.1, 2.0});
    CHECK(max_entry(evolution_matrix(s.stencil, {0, 0})) < 1e-12 * s.stencil.operator_norm());
  }
}

TEST_CASE("dimsplit evolution matrix matches the closed form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  for (int draw = 0; draw < 5; ++draw) {
    const DiffusionParams dp{a(rng), a(rng), a(rng), a(rng)};
    const SchemeSpec s = dimsplit_scheme(kParams, kGrid, dp);
    for (const Phase& ph : random_phases(50, 100 + draw)) {
      const Matrix3c E = evolution_matrix(s.stencil, ph);
      const auto ref = oracle::dimsplit_E(dp.a1, dp.a2, dp.a3, dp.a4, kParams.c, kParams.eps, kGrid.dx,
                                          kGrid.dy, ph.thx, ph.thy);
      double scale = 0, diff = 0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          scale = std::max(scale, std::abs(ref[r][c]));
          diff = std::max(diff, std::abs(E(r, c) - ref[r][c]));
        }
      CHECK(diff <= 1e-13 * scale);
    }
  }
}

TEST_CASE("central scheme symbol") {
  const SchemeSpec s = central_scheme(kParams, kGrid);
  for (const Phase& ph : random_phases(30, 9)) {
    const EvolutionSample es = evolution_sample(s.stencil, ph);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(es.E(n, n)) == 0.0);
    CHECK(es.E(0, 1) == std::complex<double>(0.0));
    CHECK(es.E(0, 2).real() ==
          doctest::Approx(std::sin(ph.thx) / (kGrid.dx * kParams.eps * kParams.eps)).epsilon(1e-13));
    CHECK(std::abs(es.E(0, 2).imag()) < 1e-12 * std::abs(es.E(0, 2)) + 1e-300);
    const double w = kParams.c / kParams.eps *
                     std::hypot(std::sin(ph.thx) / kGrid.dx, std::sin(ph.thy) / kGrid.dy);
    std::vector<double> re;
    for (int n = 0; n < 3; ++n) {
      CHECK(std::abs(es.eigenvalues(n).imag()) <= 1e-10 * w);
      re.push_back(es.eigenvalues(n).real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-w).epsilon(1e-10));
    CHECK(std::abs(re[1]) <= 1e-10 * w);
    CHECK(re[2] == doctest::Approx(w).epsilon(1e-10));
  }
}

TEST_CASE("kernel extraction errors carry the dimension") {
  try {
    right_kernel(Matrix3c::Zero());
    FAIL("expected error");
  } catch (const KernelDimensionError& e) {
    CHECK(e.dimension == 3);
  }
  try {
    left_kernel(Matrix3c::Identity());
    FAIL("expected error");
  } catch (const KernelDimensionError& e) {
    CHECK(e.dimension == 0);
  }
  Matrix3c two = Matrix3c::Zero();
  two(0, 0) = 1.0;
  CHECK(kernel_dimension(two) == 2);
  CHECK_THROWS_AS(right_kernel(two), KernelDimensionError);
}

TEST_CASE("stationarity verdicts over generic samples") {
  const auto samples = generic_phase_samples(200);
  SUBCASE("Roe has a trivial kernel everywhere") {
    const SpectralVerdict v = det_scan(roe_scheme(kParams, kGrid).stencil, kParams, kGrid, samples);
    CHECK_FALSE(v.is_stationarity_preserving);
    CHECK(v.judged == 200);
    for (const auto& s : v.samples) {
      CHECK(s.kernel_dim == 0);
      CHECK(s.sigma_min_ratio >= 1e-3);
      CHECK(s.abs_det > 0.0);
    }
  }
  std::vector<SchemeSpec> sp = {central_scheme(kParams, kGrid), lowmach_scheme(kParams, kGrid, 1),
                                lowmach_scheme(kParams, kGrid, 2), lowmach_scheme(kParams, kGrid, 3),
                                multid_scheme(kParams, kGrid)};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> a(-5.0, 5.0);
  for (int draw = 0; draw < 10; ++draw) sp.push_back(dimsplit_scheme(kParams, kGrid, {0.0, a(rng), a(rng), a(rng)}));
  for (const SchemeSpec& s : sp) {
    CAPTURE(s.name);
    const SpectralVerdict v = det_scan(s.stencil, kParams, kGrid, samples);
    CHECK(v.is_stationarity_preserving);
    CHECK(v.judged + v.withheld == 200);
    CHECK(v.judged > 0);
    for (const auto& smp : v.samples) {
      CHECK(smp.expected_kernel_dim == 1);
      if (!smp.diagonalizable) continue;
      CHECK(smp.kernel_dim == 1);
      CHECK(smp.sigma_min_ratio <= 1e-12);
      REQUIRE(smp.left.has_value());
      REQUIRE(smp.right.has_value());
      const Matrix3c E = evolution_matrix(s.stencil, smp.phase);
      CHECK((*smp.left * E).norm() <= 1e-12 * E.norm());
      CHECK((E * *smp.right).norm() <= 1e-12 * E.norm());
    }
  }
  SUBCASE("a1 != 0 breaks stationarity preservation") {
    const SpectralVerdict v =
        det_scan(dimsplit_scheme(kParams, kGrid, {0.5, 0, 1, 0}).stencil, kParams, kGrid, samples);
    CHECK_FALSE(v.is_stationarity_preserving);
  }
}

TEST_CASE("dimsplit right kernel matches the closed-form eigenvector") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> a(-2.0, 2.0);
  for (int draw = 0; draw < 5; ++draw) {
    const DiffusionParams dp{0.0, a(rng), a(rng), a(rng)};
    const SchemeSpec s = dimsplit_scheme(kParams, kGrid, dp);
    for (const Phase& ph : random_phases(50, 200 + draw)) {
      const auto k = oracle::dimsplit_kernel(dp.a3, kParams.c, kGrid.dx, kGrid.dy, ph.thx, ph.thy);
      const Vector3c ref(k[0], k[1], k[2]);
      const Vector3c got = right_kernel(evolution_matrix(s.stencil, ph));
      CHECK(alignment(got, ref) >= 1.0 - 1e-10);
    }
  }
}

TEST_CASE("multid stationary modes carry no pressure") {
  const SchemeSpec s = multid_scheme(kParams, kGrid);
  for (const KSample& k : generic_phase_samples(200, 4)) {
    const Vector3c r = right_kernel(evolution_matrix(s.stencil, k.phase));
    CHECK(std::abs(r(2)) <= 1e-10);
  }
}

TEST_CASE("symbol symmetries") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const SchemeSpec s = make_scheme(name, kParams, kGrid, {0, 0.3, 0.9, 1.7});
    for (const Phase& ph : random_phases(20, 31)) {
      const Matrix3c E = evolution_matrix(s.stencil, ph);
      // Real stencils: E(-k) = -conj(E(k)) since E carries the factor -i.
      const Matrix3c Em = evolution_matrix(s.stencil, {-ph.thx, -ph.thy});
      CHECK((Em + E.conjugate()).norm() <= 1e-13 * E.norm() + 1e-300);
      // Translating every coefficient by one cell multiplies E by t_x t_y.
      MatrixStencil moved;
      for (Component r : {Component::u, Component::v, Component::p})
        for (Component c : {Component::u, Component::v, Component::p})
          moved.block(r, c) = s.stencil.block(r, c).shifted({1, -2});
      const Matrix3c Et = evolution_matrix(moved, ph);
      Eigen::JacobiSVD<Matrix3c> a(E), b(Et);
      CHECK((a.singularValues() - b.singularValues()).norm() <= 1e-12 * a.singularValues()(0) + 1e-300);
      CHECK(std::abs(std::abs(E.determinant()) - std::abs(Et.determinant())) <=
            1e-10 * std::pow(E.norm(), 3) + 1e-300);
    }
  }
}

TEST_CASE("eigenvalues scale linearly in c / eps") {
  const auto samples = generic_phase_samples(40, 8);
  for (const std::string& name : {"roe", "central", "multid", "lowmach1", "lowmach2", "lowmach3"}) {
    CAPTURE(name);
    const ScalingReport r = eigenvalue_scaling_check(scheme_factory(name, kGrid), 1.0, 1.0, samples);
    CHECK(r.pass);
    CHECK(r.checked > 0);
    CHECK(r.max_c_deviation <= 1e-10);
    CHECK(r.max_eps_deviation <= 1e-10);
    CHECK(r.max_zero_drift <= 1e-12);
  }
  // Raw dimsplit parameters do not follow c and eps; the diffusion then breaks the scaling.
  const ScalingReport bad =
      eigenvalue_scaling_check(scheme_factory("dimsplit", kGrid, {1.0, 0, 0, 1.0}), 1.0, 1.0, samples);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("phase samples") {
  const auto a = generic_phase_samples(200);
  const auto b = generic_phase_samples(200);
  const auto c = generic_phase_samples(200, 99);
  REQUIRE(a.size() == 200);
  bool differs = false;
  for (std::size_t n = 0; n < a.size(); ++n) {
    CHECK(a[n].phase.thx == b[n].phase.thx);
    CHECK(a[n].phase.thy == b[n].phase.thy);
    CHECK(a[n].generic);
    for (double t : {a[n].phase.thx, a[n].phase.thy, c[n].phase.thx, c[n].phase.thy}) {
      CHECK(std::abs(t) >= 0.1);
      CHECK(std::abs(t) <= pi - 0.1);
    }
    differs = differs || a[n].phase.thx != c[n].phase.thx;
  }
  CHECK(differs);
  int neg = 0;
  for (const auto& k : a) neg += k.phase.thx < 0;
  CHECK(neg > 60);
  CHECK(neg < 140);
  for (const auto& k : structured_phase_samples(8)) CHECK_FALSE(k.generic);
}

TEST_CASE("structured samples are reported but not judged") {
  auto samples = generic_phase_samples(20);
  const auto extra = structured_phase_samples(4);
  samples.insert(samples.end(), extra.begin(), extra.end());
  const SpectralVerdict v = det_scan(multid_scheme(kParams, kGrid).stencil, kParams, kGrid, samples);
  CHECK(v.samples.size() == samples.size());
  CHECK(v.judged + v.withheld == 20);
  CHECK(v.is_stationarity_preserving);
}
