#include "sps/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace sps {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double wrap_phase(double th) {
  double w = std::remainder(th, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

Eigen::JacobiSVD<Matrix3c> full_svd(const Matrix3c& m) {
  return Eigen::JacobiSVD<Matrix3c>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace

Phase Wavevector::phase(const GridSpec& grid) const {
  return {wrap_phase(kx * grid.dx), wrap_phase(ky * grid.dy)};
}

Eigen::Matrix3d jk_matrix(const AcousticParams& params, const Wavevector& k) {
  params.validate();
  const double inv_eps2 = 1.0 / (params.eps * params.eps);
  const double c2 = params.c * params.c;
  Eigen::Matrix3d m;
  m << 0.0, 0.0, k.kx * inv_eps2,
       0.0, 0.0, k.ky * inv_eps2,
       c2 * k.kx, c2 * k.ky, 0.0;
  return m;
}

std::complex<double> symbol(const ScalarStencil& st, const Phase& ph) {
  cd sum = 0.0;
  for (const auto& [off, c] : st.entries())
    sum += c * std::polar(1.0, off.sx * ph.thx + off.sy * ph.thy);
  return sum;
}

Matrix3c evolution_matrix(const MatrixStencil& st, const Phase& ph) {
  Matrix3c sum = Matrix3c::Zero();
  for (const auto& [off, alpha] : st.coefficients())
    sum += alpha.cast<cd>() * std::polar(1.0, off.sx * ph.thx + off.sy * ph.thy);
  return cd(0.0, -1.0) * sum;
}

EvolutionSample evolution_sample(const MatrixStencil& st, const Phase& ph) {
  EvolutionSample s{ph, evolution_matrix(st, ph), {}};
  Eigen::ComplexEigenSolver<Matrix3c> es(s.E, false);
  s.eigenvalues = es.eigenvalues();
  return s;
}

int kernel_dimension(const Matrix3c& m, double tol_rel) {
  const auto sv = Eigen::JacobiSVD<Matrix3c>(m).singularValues();
  const double smax = sv(0);
  if (smax == 0.0) return 3;
  int dim = 0;
  for (int n = 0; n < 3; ++n)
    if (sv(n) <= tol_rel * smax) ++dim;
  return dim;
}

Vector3c right_kernel(const Matrix3c& E, double tol_rel) {
  const int dim = kernel_dimension(E, tol_rel);
  if (dim != 1) {
    std::ostringstream os;
    os << "right kernel requested but kernel dimension is " << dim;
    throw KernelDimensionError(dim, os.str());
  }
  return full_svd(E).matrixV().col(2);
}

RowVector3c left_kernel(const Matrix3c& E, double tol_rel) {
  const int dim = kernel_dimension(E, tol_rel);
  if (dim != 1) {
    std::ostringstream os;
    os << "left kernel requested but kernel dimension is " << dim;
    throw KernelDimensionError(dim, os.str());
  }
  return full_svd(E).matrixU().col(2).adjoint();
}

double alignment(const Vector3c& a, const Vector3c& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

std::vector<KSample> generic_phase_samples(int count, std::uint64_t seed, double guard) {
  // R2 low-discrepancy sequence, alpha = (1/g, 1/g^2) with g the plastic number.
  constexpr double g = 1.32471795724474602596;
  constexpr double a1 = 1.0 / g;
  constexpr double a2 = 1.0 / (g * g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double shift1 = seed == 0 ? 0.5 : unit(rng);
  const double shift2 = seed == 0 ? 0.5 : unit(rng);
  auto to_phase = [guard](double w) {
    // First half of [0,1) -> negative phases, second half -> positive.
    const double frac = std::fmod(2.0 * w, 1.0);
    const double mag = guard + (kPi - 2.0 * guard) * frac;
    return w < 0.5 ? -mag : mag;
  };
  std::vector<KSample> out;
  out.reserve(count);
  for (int n = 1; n <= count; ++n) {
    const double w1 = std::fmod(shift1 + n * a1, 1.0);
    const double w2 = std::fmod(shift2 + n * a2, 1.0);
    out.push_back({{to_phase(w1), to_phase(w2)}, true});
  }
  return out;
}

std::vector<KSample> structured_phase_samples(int per_line) {
  std::vector<KSample> out;
  for (int n = 1; n <= per_line; ++n) {
    const double th = kPi * n / (per_line + 1);
    out.push_back({{th, 0.0}, false});
    out.push_back({{0.0, th}, false});
    out.push_back({{th, th}, false});
    out.push_back({{th, -th}, false});
  }
  return out;
}

SpectralVerdict det_scan(const MatrixStencil& st, const AcousticParams& params, const GridSpec& grid,
                         std::span<const KSample> samples, const ScanOptions& opts) {
  SpectralVerdict verdict;
  bool all_match = true;
  for (const auto& ks : samples) {
    SampleReport r;
    r.phase = ks.phase;
    r.generic = ks.generic;
    const Matrix3c E = evolution_matrix(st, ks.phase);
    const auto svd = full_svd(E);
    const auto sv = svd.singularValues();
    r.abs_det = std::abs(E.determinant());
    r.sigma_min_ratio = sv(0) > 0.0 ? sv(2) / sv(0) : 0.0;
    r.kernel_dim = kernel_dimension(E, opts.tol_rel);

    const Eigen::Matrix3d jk = jk_matrix(params, Wavevector::from_phase(ks.phase, grid));
    r.expected_kernel_dim = kernel_dimension(jk.cast<std::complex<double>>(), opts.tol_rel);

    Eigen::ComplexEigenSolver<Matrix3c> es(E, true);
    const auto& vecs = es.eigenvectors();
    const auto vsv = Eigen::JacobiSVD<Matrix3c>(vecs).singularValues();
    r.eigvec_condition = vsv(2) > 0.0 ? vsv(0) / vsv(2) : std::numeric_limits<double>::infinity();
    r.diagonalizable = r.eigvec_condition <= opts.max_eigvec_condition;

    if (r.kernel_dim == 1) {
      r.right = svd.matrixV().col(2);
      r.left = svd.matrixU().col(2).adjoint();
    }
    r.matches = r.kernel_dim == r.expected_kernel_dim;
    if (ks.generic) {
      if (!r.diagonalizable) {
        ++verdict.withheld;
      } else {
        ++verdict.judged;
        all_match = all_match && r.matches;
      }
    }
    verdict.samples.push_back(std::move(r));
  }
  verdict.is_stationarity_preserving = all_match && verdict.judged > 0;
  return verdict;
}

namespace {

struct Matching {
  bool ok = true;
  std::vector<int> index;
};

/// Pairs each predicted eigenvalue with the nearest actual one; fails if the
/// assignment is not a permutation.
Matching match_eigenvalues(const Vector3c& predicted, const Vector3c& actual) {
  Matching m;
  m.index.resize(3);
  std::array<bool, 3> used{false, false, false};
  for (int a = 0; a < 3; ++a) {
    int best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (int b = 0; b < 3; ++b) {
      const double d = std::abs(predicted(a) - actual(b));
      if (d < dist) { dist = d; best = b; }
    }
    if (used[best]) m.ok = false;
    used[best] = true;
    m.index[a] = best;
  }
  return m;
}

}  // namespace

ScalingReport eigenvalue_scaling_check(const SchemeFactory& family, double c, double eps,
                                       std::span<const KSample> samples, double tol) {
  ScalingReport rep;
  const MatrixStencil base = family(c, eps);
  const MatrixStencil c2 = family(2.0 * c, eps);
  const MatrixStencil e2 = family(c, eps / 2.0);
  for (const auto& ks : samples) {
    const Vector3c w0 = evolution_sample(base, ks.phase).eigenvalues;
    const double scale = w0.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      ++rep.skipped;
      continue;
    }
    // Collision: two eigenvalues too close for nearest-neighbour matching.
    bool collide = false;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (std::abs(w0(a) - w0(b)) < 1e-6 * scale) collide = true;
    if (collide) {
      ++rep.skipped;
      std::ostringstream os;
      os << "eigenvalue collision at (" << ks.phase.thx << ", " << ks.phase.thy << ")";
      rep.notes.push_back(os.str());
      continue;
    }
    bool sample_ok = true;
    for (const auto* scaled : {&c2, &e2}) {
      const Vector3c w1 = evolution_sample(*scaled, ks.phase).eigenvalues;
      const Matching m = match_eigenvalues(2.0 * w0, w1);
      if (!m.ok) {
        sample_ok = false;
        break;
      }
      for (int a = 0; a < 3; ++a) {
        const cd w = w0(a);
        const cd wp = w1(m.index[a]);
        if (std::abs(w) <= 1e-12 * scale) {
          rep.max_zero_drift = std::max(rep.max_zero_drift, std::abs(wp) / (2.0 * scale));
          continue;
        }
        const double dev = std::abs(wp / w - 2.0);
        if (scaled == &c2)
          rep.max_c_deviation = std::max(rep.max_c_deviation, dev);
        else
          rep.max_eps_deviation = std::max(rep.max_eps_deviation, dev);
      }
    }
    if (!sample_ok) {
      ++rep.skipped;
      std::ostringstream os;
      os << "ambiguous eigenvalue matching at (" << ks.phase.thx << ", " << ks.phase.thy << ")";
      rep.notes.push_back(os.str());
      continue;
    }
    ++rep.checked;
  }
  rep.pass = rep.checked > 0 && rep.max_c_deviation <= tol && rep.max_eps_deviation <= tol &&
             rep.max_zero_drift <= 1e-12;
  return rep;
}

}  // namespace sps
