#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace smcf {

/// Uniform periodic grid on the unit torus, anchored at cell corners
/// (sample i sits at x = i*h).
class GridSpec {
 public:
  explicit GridSpec(int n);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double coord(int i) const { return static_cast<double>(i) / n_; }

  /// Wraps an arbitrary integer index onto [0, n).
  int wrap(int i) const {
    const int r = i % n_;
    return r < 0 ? r + n_ : r;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
};

enum class Method { Spectral, Central2 };

std::string_view to_string(Method m);

/// Real samples of a scalar function, row-major: value(i, j) = u(i*h, j*h).
class ScalarField {
 public:
  explicit ScalarField(GridSpec grid, double fill = 0.0);
  ScalarField(GridSpec grid, std::vector<double> values);

  static ScalarField from_function(GridSpec grid,
                                   const std::function<double(double, double)>& f);

  const GridSpec& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  std::size_t size() const { return values_.size(); }

  double& operator()(int i, int j) {
    return values_[static_cast<std::size_t>(grid_.wrap(i)) * grid_.n() + grid_.wrap(j)];
  }
  double operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(grid_.wrap(i)) * grid_.n() + grid_.wrap(j)];
  }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

  /// Bitwise equality of grid and samples.
  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

struct VectorField {
  ScalarField x;
  ScalarField y;
  /// Discretization that produced the field, if it came from a differential
  /// operator. Consumers reject mixing methods.
  std::optional<Method> method;
};

/// Symmetric 2x2 tensor per point; the off-diagonal entry is stored once.
struct SymTensorField {
  ScalarField xx;
  ScalarField xy;
  ScalarField yy;
};

/// General 2x2 tensor per point, entry (r, c) = d w_r / d x_c.
struct TensorField {
  ScalarField xx;
  ScalarField xy;
  ScalarField yx;
  ScalarField yy;
};

/// Throws NonFiniteError naming the first offending sample.
void require_finite(const ScalarField& u, std::string_view what);

/// Index of the first non-finite sample, if any.
std::optional<std::size_t> first_non_finite(const ScalarField& u);

// Quadrature. Sums use a fixed-order pairwise reduction so results do not
// depend on how work is scheduled.
double pairwise_sum(std::span<const double> xs);
double integrate(const ScalarField& u);
double inner(const ScalarField& a, const ScalarField& b);
double l2_norm_sq(const ScalarField& u);
double l2_norm_sq(const VectorField& f);
double linf_norm(const ScalarField& u);
double linf_norm(const SymTensorField& t);

/// Samples of the fine field at the coarse grid points (fine n must be a
/// multiple of coarse n).
ScalarField restrict_to(const ScalarField& fine, GridSpec coarse);

}  // namespace smcf
