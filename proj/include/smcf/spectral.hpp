#pragma once

#include <complex>
#include <vector>

#include "smcf/field.hpp"

namespace smcf {

/// Half-complex spectrum of a real n x n field: n rows (k1) by n/2+1
/// columns (k2 >= 0), FFTW r2c layout.
using Spectrum = std::vector<std::complex<double>>;

/// FFT plans, scratch buffers, and wavenumber tables for one grid size.
///
/// Owns mutable scratch, so a workspace must not be used from two threads at
/// once; create one per worker. Plan creation is serialized internally
/// (the FFTW planner is not re-entrant), execution is not.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(GridSpec grid);
  ~SpectralWorkspace();
  SpectralWorkspace(SpectralWorkspace&& other) noexcept;
  SpectralWorkspace& operator=(SpectralWorkspace&&) = delete;
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

  const GridSpec& grid() const { return grid_; }
  int n() const { return grid_.n(); }
  /// Number of stored k2 columns (n/2 + 1).
  int columns() const { return grid_.n() / 2 + 1; }
  std::size_t spectrum_size() const { return static_cast<std::size_t>(n()) * columns(); }

  Spectrum forward(const ScalarField& u);
  /// Normalized inverse: inverse(forward(u)) == u up to rounding.
  ScalarField inverse(const Spectrum& s);

  /// Signed wavenumber of row r, in {-n/2+1, ..., n/2}.
  int k1(int row) const { return row <= n() / 2 ? row : row - n(); }
  int k2(int col) const { return col; }
  bool is_nyquist_row(int row) const { return row == n() / 2; }
  bool is_nyquist_col(int col) const { return col == n() / 2; }

  /// Laplacian symbol -4 pi^2 |k|^2 in spectrum layout.
  const std::vector<double>& laplacian_symbol() const { return lap_; }
  /// Symbol of the second-order central difference Laplacian.
  const std::vector<double>& central_laplacian_symbol() const { return lap_central_; }
  /// Symbol of Delta^{2K}: lambda(k)^{2K} (an even power, so >= 0).
  std::vector<double> polyharmonic_symbol(int big_k) const;

  /// Multiplies the spectrum of u by a real symbol and transforms back.
  ScalarField apply_symbol(const ScalarField& u, const std::vector<double>& symbol);

  /// Exponential filter exp(-36 (|k|/(n/2))^order); order 0 is a no-op.
  ScalarField filter(const ScalarField& u, int order);

 private:
  GridSpec grid_;
  double* real_buf_ = nullptr;
  void* cplx_buf_ = nullptr;
  void* plan_fwd_ = nullptr;
  void* plan_inv_ = nullptr;
  std::vector<double> lap_;
  std::vector<double> lap_central_;
};

}  // namespace smcf
