/// @file schemes.hpp
/// @brief Catalog of semi-discrete schemes for the acoustic system.
///
/// Dimensionally split schemes read
///   d_t q + (J_x [q]_{i±1} - D_x [[q]]_{i±1/2}) / (2Δx)
///         + (J_y [q]_{j±1} - D_y [[q]]_{j±1/2}) / (2Δy) = 0
/// with D_x = ((a1, 0, a2), (0, 0, 0), (a3, 0, a4)) and D_y the same entries
/// placed in the (v, p) pattern.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sps/fourier.hpp"
#include "sps/grid_fields.hpp"
#include "sps/stencil.hpp"

namespace sps {

enum class SchemeFamily { central, dimsplit, roe, lowmach1, lowmach2, lowmach3, multid };

std::string to_string(SchemeFamily f);

/// Raw entries of the diffusion matrices.
struct DiffusionParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;

  void validate() const;
};

struct SchemeClaims {
  bool stationarity_preserving = false;
  /// Largest forward-Euler stable ν = (c/eps) dt / min(dx, dy), when known.
  std::optional<double> fe_cfl_limit;
};

struct SchemeSpec {
  std::string name;
  SchemeFamily family = SchemeFamily::central;
  AcousticParams params;
  GridSpec grid;
  DiffusionParams diffusion;  ///< meaningful for the dimensionally split families
  MatrixStencil stencil;
  SchemeClaims claims;

  /// Velocity part of the pressure equation divided by c^2: the discrete
  /// divergence whose kernel carries the scheme's stationary states.
  VecStencilRow divergence_row() const;
};

SchemeSpec dimsplit_scheme(const AcousticParams& params, const GridSpec& grid,
                           const DiffusionParams& dp);
SchemeSpec central_scheme(const AcousticParams& params, const GridSpec& grid);
SchemeSpec roe_scheme(const AcousticParams& params, const GridSpec& grid);
/// variant 1: a2 = 1/eps^2, a3 = -c^2, a4 = 0; variant 2: a2 = 0, a3 = -c^2,
/// a4 = 2c/eps; variant 3: a2 = 1/eps^2, a3 = 0, a4 = 2c/eps. All have a1 = 0.
SchemeSpec lowmach_scheme(const AcousticParams& params, const GridSpec& grid, int variant);
/// Averaged pressure gradient and divergence, stationarity-consistent velocity
/// diffusion (c/(2 eps)) consistent_diffusion(1, 0) resp. (0, 1), and averaged
/// pressure diffusion.
SchemeSpec multid_scheme(const AcousticParams& params, const GridSpec& grid);

/// Names accepted by make_scheme.
const std::vector<std::string>& catalog_names();

/// Builds a catalog scheme by name; `dp` is used only by "dimsplit". Throws
/// Error for unknown names.
SchemeSpec make_scheme(const std::string& name, const AcousticParams& params, const GridSpec& grid,
                       const DiffusionParams& dp = {});

/// (c, eps) -> stencil for a named family on a fixed grid. Raw dimsplit
/// parameters do not follow c and eps, so "dimsplit" keeps `dp` fixed.
SchemeFactory scheme_factory(const std::string& name, const GridSpec& grid,
                             const DiffusionParams& dp = {});

/// Tendency -sum_S alpha_S q_{I+S}. Throws Error when the state's grid differs
/// from the scheme's.
FieldSet rhs(const SchemeSpec& spec, const FieldSet& state);

}  // namespace sps
