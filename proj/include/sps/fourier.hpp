/// @file fourier.hpp
/// @brief Numeric symbol analysis of semi-discrete schemes.
///
/// With translation factors t_x = exp(i θx), t_y = exp(i θy) (θ = k Δ), the
/// evolution matrix of d_t q_I + sum_S alpha_S q_{I+S} = 0 is
///   E(k) = -i sum_S alpha_S t_x^{sx} t_y^{sy},
/// and Fourier modes evolve as exp(-i ω t) with ω an eigenvalue of E.
/// Kernel dimensions are read off singular values, never off the determinant.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sps/grid_fields.hpp"
#include "sps/stencil.hpp"

namespace sps {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using RowVector3c = Eigen::RowVector3cd;

/// Phases (θx, θy) = (kx Δx, ky Δy).
struct Phase {
  double thx = 0.0;
  double thy = 0.0;
};

struct Wavevector {
  double kx = 0.0;
  double ky = 0.0;

  /// Phases wrapped to (-π, π].
  Phase phase(const GridSpec& grid) const;
  static Wavevector from_phase(const Phase& ph, const GridSpec& grid) {
    return {ph.thx / grid.dx, ph.thy / grid.dy};
  }
};

/// The continuous symbol J·k of the acoustic system:
/// rows (0, 0, kx/eps^2), (0, 0, ky/eps^2), (c^2 kx, c^2 ky, 0).
Eigen::Matrix3d jk_matrix(const AcousticParams& params, const Wavevector& k);

/// sum_S coeff(S) t_x^{sx} t_y^{sy}.
std::complex<double> symbol(const ScalarStencil& st, const Phase& ph);

/// E at one phase.
Matrix3c evolution_matrix(const MatrixStencil& st, const Phase& ph);

struct EvolutionSample {
  Phase phase;
  Matrix3c E;
  Vector3c eigenvalues;
};

EvolutionSample evolution_sample(const MatrixStencil& st, const Phase& ph);

/// Number of singular values at or below tol_rel * sigma_max (3 for the zero matrix).
int kernel_dimension(const Matrix3c& m, double tol_rel = 1e-12);

/// Thrown by right_kernel / left_kernel when the kernel is not one-dimensional.
class KernelDimensionError : public Error {
 public:
  KernelDimensionError(int dim, const std::string& what) : Error(what), dimension(dim) {}
  int dimension;
};

/// Unit v with E v = 0. Requires kernel dimension 1.
Vector3c right_kernel(const Matrix3c& E, double tol_rel = 1e-12);
/// Unit row w with w E = 0. Requires kernel dimension 1.
RowVector3c left_kernel(const Matrix3c& E, double tol_rel = 1e-12);

/// |<a, b>| / (|a| |b|): 1 when a and b agree up to complex scaling.
double alignment(const Vector3c& a, const Vector3c& b);

struct KSample {
  Phase phase;
  bool generic = true;  ///< false for structured samples excluded from verdicts
};

/// `count` quasi-random phases (R2 sequence, Cranley-Patterson shift from
/// `seed`) with guard |θ| in [guard, π - guard] for both components.
std::vector<KSample> generic_phase_samples(int count, std::uint64_t seed = 0, double guard = 0.1);

/// Points on the axes θy = 0, θx = 0 and the diagonals; reported, not judged.
std::vector<KSample> structured_phase_samples(int per_line = 8);

struct ScanOptions {
  double tol_rel = 1e-12;             ///< zero-singular-value threshold
  double max_eigvec_condition = 1e8;  ///< above this a sample is non-diagonalizable
};

struct SampleReport {
  Phase phase;
  bool generic = true;
  double abs_det = 0.0;
  int kernel_dim = 0;
  int expected_kernel_dim = 0;  ///< dim ker(J·k) at the same k, computed
  double sigma_min_ratio = 0.0;
  double eigvec_condition = 0.0;
  bool diagonalizable = true;
  std::optional<Vector3c> right;
  std::optional<RowVector3c> left;
  bool matches = false;  ///< kernel_dim == expected_kernel_dim
};

struct SpectralVerdict {
  bool is_stationarity_preserving = false;
  std::vector<SampleReport> samples;
  int withheld = 0;  ///< generic samples flagged non-diagonalizable
  int judged = 0;
};

/// Compares dim ker E(k) with dim ker(J·k) over `samples`. The verdict is true
/// iff every judged (generic, diagonalizable) sample matches.
SpectralVerdict det_scan(const MatrixStencil& st, const AcousticParams& params, const GridSpec& grid,
                         std::span<const KSample> samples, const ScanOptions& opts = {});

/// Scheme family parametrized by sound speed and Mach scaling.
using SchemeFactory = std::function<MatrixStencil(double c, double eps)>;

struct ScalingReport {
  int checked = 0;
  int skipped = 0;
  double max_c_deviation = 0.0;    ///< max |ω(2c)/ω(c) - 2|
  double max_eps_deviation = 0.0;  ///< max |ω(eps/2)/ω(eps) - 2|
  double max_zero_drift = 0.0;     ///< largest |ω'| matched to a zero eigenvalue, relative
  std::vector<std::string> notes;
  bool pass = false;
};

/// Checks that every nonzero eigenvalue of E doubles under c -> 2c and under
/// eps -> eps/2, matching eigenvalues by nearest neighbour after the predicted
/// scaling. Samples with colliding eigenvalues are skipped with a note.
ScalingReport eigenvalue_scaling_check(const SchemeFactory& family, double c, double eps,
                                       std::span<const KSample> samples, double tol = 1e-10);

}  // namespace sps
