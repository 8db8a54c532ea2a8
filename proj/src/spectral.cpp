#include "smcf/spectral.hpp"

#include <utility>

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace smcf {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

SpectralWorkspace::SpectralWorkspace(GridSpec grid) : grid_(grid) {
  const int n = grid_.n();
  real_buf_ = fftw_alloc_real(grid_.size());
  auto* cplx = fftw_alloc_complex(spectrum_size());
  cplx_buf_ = cplx;
  {
    std::lock_guard lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_2d(n, n, real_buf_, cplx, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_2d(n, n, cplx, real_buf_, FFTW_ESTIMATE);
  }

  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  const double h = grid_.h();
  lap_.resize(spectrum_size());
  lap_central_.resize(spectrum_size());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < columns(); ++c) {
      const double a = k1(r);
      const double b = k2(c);
      const std::size_t idx = static_cast<std::size_t>(r) * columns() + c;
      lap_[idx] = -four_pi2 * (a * a + b * b);
      const double sa = std::sin(std::numbers::pi * a * h);
      const double sb = std::sin(std::numbers::pi * b * h);
      lap_central_[idx] = -4.0 / (h * h) * (sa * sa + sb * sb);
    }
  }
}

SpectralWorkspace::~SpectralWorkspace() {
  if (plan_fwd_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  }
  if (real_buf_ != nullptr) fftw_free(real_buf_);
  if (cplx_buf_ != nullptr) fftw_free(cplx_buf_);
}

SpectralWorkspace::SpectralWorkspace(SpectralWorkspace&& other) noexcept
    : grid_(other.grid_),
      real_buf_(std::exchange(other.real_buf_, nullptr)),
      cplx_buf_(std::exchange(other.cplx_buf_, nullptr)),
      plan_fwd_(std::exchange(other.plan_fwd_, nullptr)),
      plan_inv_(std::exchange(other.plan_inv_, nullptr)),
      lap_(std::move(other.lap_)),
      lap_central_(std::move(other.lap_central_)) {}

Spectrum SpectralWorkspace::forward(const ScalarField& u) {
  if (!(u.grid() == grid_)) throw std::invalid_argument("SpectralWorkspace: grid mismatch");
  std::memcpy(real_buf_, u.values().data(), grid_.size() * sizeof(double));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  Spectrum out(spectrum_size());
  std::memcpy(out.data(), cplx_buf_, spectrum_size() * sizeof(fftw_complex));
  return out;
}

ScalarField SpectralWorkspace::inverse(const Spectrum& s) {
  if (s.size() != spectrum_size()) throw std::invalid_argument("SpectralWorkspace: spectrum size mismatch");
  std::memcpy(cplx_buf_, s.data(), spectrum_size() * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  ScalarField out(grid_);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  auto vals = out.values();
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = real_buf_[k] * scale;
  return out;
}

std::vector<double> SpectralWorkspace::polyharmonic_symbol(int big_k) const {
  std::vector<double> out(lap_.size());
  for (std::size_t i = 0; i < lap_.size(); ++i) {
    double p = 1.0;
    for (int e = 0; e < 2 * big_k; ++e) p *= lap_[i];
    out[i] = p;
  }
  return out;
}

ScalarField SpectralWorkspace::apply_symbol(const ScalarField& u, const std::vector<double>& symbol) {
  Spectrum s = forward(u);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= symbol[i];
  return inverse(s);
}

ScalarField SpectralWorkspace::filter(const ScalarField& u, int order) {
  if (order <= 0) return u;
  const double kmax = n() / 2.0;
  std::vector<double> sigma(spectrum_size());
  for (int r = 0; r < n(); ++r) {
    for (int c = 0; c < columns(); ++c) {
      const double kk = std::hypot(static_cast<double>(k1(r)), static_cast<double>(k2(c))) / kmax;
      sigma[static_cast<std::size_t>(r) * columns() + c] = std::exp(-36.0 * std::pow(kk, order));
    }
  }
  return apply_symbol(u, sigma);
}

}  // namespace smcf
