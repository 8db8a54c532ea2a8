#include "smcf/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smcf/errors.hpp"

namespace smcf {

GridSpec::GridSpec(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid size n must be even and >= 8, got " + std::to_string(n));
  }
}

std::string_view to_string(Method m) {
  return m == Method::Spectral ? "spectral" : "central2";
}

ScalarField::ScalarField(GridSpec grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("ScalarField: payload length does not match n*n");
  }
}

ScalarField ScalarField::from_function(GridSpec grid,
                                       const std::function<double(double, double)>& f) {
  ScalarField u(grid);
  const int n = grid.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      u(i, j) = f(grid.coord(i), grid.coord(j));
    }
  }
  return u;
}

static void check_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("field grid mismatch");
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  check_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  check_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  check_same_grid(a, b);
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

std::optional<std::size_t> first_non_finite(const ScalarField& u) {
  const auto vals = u.values();
  const auto it = std::find_if(vals.begin(), vals.end(), [](double v) { return !std::isfinite(v); });
  if (it == vals.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vals.begin());
}

void require_finite(const ScalarField& u, std::string_view what) {
  if (const auto idx = first_non_finite(u)) {
    const int n = u.n();
    std::ostringstream msg;
    msg << what << ": non-finite value at (" << *idx / n << ", " << *idx % n << ")";
    throw NonFiniteError(msg.str(), *idx);
  }
}

double pairwise_sum(std::span<const double> xs) {
  constexpr std::size_t kLeaf = 16;
  if (xs.size() <= kLeaf) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double integrate(const ScalarField& u) {
  const double h = u.grid().h();
  return h * h * pairwise_sum(u.values());
}

double inner(const ScalarField& a, const ScalarField& b) {
  return integrate(hadamard(a, b));
}

double l2_norm_sq(const ScalarField& u) { return inner(u, u); }

double l2_norm_sq(const VectorField& f) { return l2_norm_sq(f.x) + l2_norm_sq(f.y); }

double linf_norm(const ScalarField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double linf_norm(const SymTensorField& t) {
  return std::max({linf_norm(t.xx), linf_norm(t.xy), linf_norm(t.yy)});
}

ScalarField restrict_to(const ScalarField& fine, GridSpec coarse) {
  const int nf = fine.n();
  const int nc = coarse.n();
  if (nf % nc != 0) {
    throw std::invalid_argument("restrict_to: fine grid is not a refinement of the coarse grid");
  }
  const int r = nf / nc;
  ScalarField out(coarse);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < nc; ++j) out(i, j) = fine(i * r, j * r);
  }
  return out;
}

}  // namespace smcf
