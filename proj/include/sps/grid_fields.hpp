/// @file grid_fields.hpp
/// @brief Periodic 2-D Cartesian grid, the (u, v, p) state and the norms used by
/// the vortex experiments.
///
/// Storage is row-major in (i, j): cell (i, j) lives at index i * ny + j.
/// Cell centers sit at ((i + 1/2) dx, (j + 1/2) dy) measured from the domain
/// corner. All indexing is periodic.

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sps {

/// Raised for invalid arguments anywhere in the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;

  /// Throws Error unless nx, ny >= 3 and dx, dy > 0.
  void validate() const;

  std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j);
  }
  double x_center(int i) const { return (i + 0.5) * dx; }
  double y_center(int j) const { return (j + 0.5) * dy; }
  double width() const { return nx * dx; }
  double height() const { return ny * dy; }

  /// nx x ny cells on [0, lx] x [0, ly].
  static GridSpec uniform(int nx, int ny, double lx = 1.0, double ly = 1.0);

  bool operator==(const GridSpec&) const = default;
};

/// Sound speed c and Mach scaling eps of the acoustic system
///   d_t v + grad p / eps^2 = 0,   d_t p + c^2 div v = 0.
struct AcousticParams {
  double c = 1.0;
  double eps = 1.0;

  void validate() const;
  /// Fastest signal speed c / eps.
  double wave_speed() const { return c / eps; }
};

enum class Axis { x, y };
enum class Component { u = 0, v = 1, p = 2 };

/// One cell-centered scalar array.
using Component2D = std::vector<double>;

struct FieldSet {
  GridSpec grid;
  Component2D u;
  Component2D v;
  Component2D p;

  FieldSet() = default;
  /// Zero-initialized state on `grid`.
  explicit FieldSet(const GridSpec& grid);

  Component2D& operator[](Component c);
  const Component2D& operator[](Component c) const;

  /// Max-norm over all three components.
  double max_norm() const;
  bool all_finite() const;

  FieldSet& operator+=(const FieldSet& other);
  FieldSet& operator*=(double s);
  /// this += s * other, component-wise.
  void axpy(double s, const FieldSet& other);
};

struct CellValue {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
};

using CellInit = std::function<CellValue(double x, double y)>;

/// Evaluates `init` at every cell center. Throws Error naming the first cell
/// where `init` returns a non-finite value.
FieldSet make_field(const GridSpec& grid, const CellInit& init);

/// Sum over cells of |(q_{i+1} - q_{i-1}) / (2 delta)| * dx * dy along `axis`,
/// with periodic wraparound.
double l1_norm_central_diff(const Component2D& q, Axis axis, const GridSpec& grid);

/// Sum over cells of |q| * dx * dy.
double l1_norm(const Component2D& q, const GridSpec& grid);
double max_abs(const Component2D& q);

/// Periodic shift: out(i, j) = q(i - si, j - sj).
Component2D shifted(const Component2D& q, const GridSpec& grid, int si, int sj);

}  // namespace sps
