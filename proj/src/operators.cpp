#include "smcf/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smcf/errors.hpp"

namespace smcf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using cplx = std::complex<double>;

// i * 2 pi k, with the Nyquist mode removed.
cplx d1_factor(const SpectralWorkspace& ws, int row) {
  return ws.is_nyquist_row(row) ? cplx{} : cplx{0.0, kTwoPi * ws.k1(row)};
}
cplx d2_factor(const SpectralWorkspace& ws, int col) {
  return ws.is_nyquist_col(col) ? cplx{} : cplx{0.0, kTwoPi * ws.k2(col)};
}

template <class F>
ScalarField spectral_multiply(const Spectrum& s, SpectralWorkspace& ws, F&& factor) {
  Spectrum out(s.size());
  const int cols = ws.columns();
  for (int r = 0; r < ws.n(); ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * cols + c;
      out[idx] = s[idx] * factor(r, c);
    }
  }
  return ws.inverse(out);
}

ScalarField central_dx(const ScalarField& u) {
  ScalarField out(u.grid());
  const int n = u.n();
  const double inv = 0.5 * n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = (u(i + 1, j) - u(i - 1, j)) * inv;
  return out;
}

ScalarField central_dy(const ScalarField& u) {
  ScalarField out(u.grid());
  const int n = u.n();
  const double inv = 0.5 * n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = (u(i, j + 1) - u(i, j - 1)) * inv;
  return out;
}

SymTensorField central_hessian(const ScalarField& u) {
  const GridSpec g = u.grid();
  SymTensorField t{ScalarField(g), ScalarField(g), ScalarField(g)};
  const int n = u.n();
  const double inv_h2 = static_cast<double>(n) * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c = u(i, j);
      t.xx(i, j) = (u(i + 1, j) - 2.0 * c + u(i - 1, j)) * inv_h2;
      t.yy(i, j) = (u(i, j + 1) - 2.0 * c + u(i, j - 1)) * inv_h2;
      t.xy(i, j) = (u(i + 1, j + 1) - u(i + 1, j - 1) - u(i - 1, j + 1) + u(i - 1, j - 1)) * 0.25 * inv_h2;
    }
  }
  return t;
}

void check_method(const VectorField& f, Method method) {
  if (f.method && *f.method != method) {
    throw std::invalid_argument("divergence: vector field was produced with method '" +
                                std::string(to_string(*f.method)) + "' but '" +
                                std::string(to_string(method)) + "' was requested");
  }
  if (!(f.x.grid() == f.y.grid())) throw std::invalid_argument("divergence: component grid mismatch");
}

}  // namespace

VectorField gradient(const ScalarField& u, Method method, SpectralWorkspace& ws) {
  require_finite(u, "gradient");
  if (method == Method::Central2) return {central_dx(u), central_dy(u), method};
  const Spectrum s = ws.forward(u);
  return {spectral_multiply(s, ws, [&](int r, int) { return d1_factor(ws, r); }),
          spectral_multiply(s, ws, [&](int, int c) { return d2_factor(ws, c); }), method};
}

ScalarField divergence(const VectorField& f, Method method, SpectralWorkspace& ws) {
  check_method(f, method);
  require_finite(f.x, "divergence");
  require_finite(f.y, "divergence");
  if (method == Method::Central2) return central_dx(f.x) + central_dy(f.y);
  const Spectrum sx = ws.forward(f.x);
  const Spectrum sy = ws.forward(f.y);
  Spectrum out(sx.size());
  const int cols = ws.columns();
  for (int r = 0; r < ws.n(); ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * cols + c;
      out[idx] = sx[idx] * d1_factor(ws, r) + sy[idx] * d2_factor(ws, c);
    }
  }
  return ws.inverse(out);
}

ScalarField laplacian(const ScalarField& u, Method method, SpectralWorkspace& ws) {
  require_finite(u, "laplacian");
  if (method == Method::Central2) {
    SymTensorField t = central_hessian(u);
    return t.xx + t.yy;
  }
  return ws.apply_symbol(u, ws.laplacian_symbol());
}

SymTensorField hessian(const ScalarField& u, Method method, SpectralWorkspace& ws) {
  return derivatives(u, method, ws).hess;
}

Derivatives derivatives(const ScalarField& u, Method method, SpectralWorkspace& ws) {
  require_finite(u, "derivatives");
  if (method == Method::Central2) {
    return {{central_dx(u), central_dy(u), method}, central_hessian(u)};
  }
  const Spectrum s = ws.forward(u);
  const double four_pi2 = kTwoPi * kTwoPi;
  auto xx = [&](int r, int) {
    const double k = ws.k1(r);
    return cplx{-four_pi2 * k * k, 0.0};
  };
  auto yy = [&](int, int c) {
    const double k = ws.k2(c);
    return cplx{-four_pi2 * k * k, 0.0};
  };
  auto xy = [&](int r, int c) { return d1_factor(ws, r) * d2_factor(ws, c); };
  return {{spectral_multiply(s, ws, [&](int r, int) { return d1_factor(ws, r); }),
           spectral_multiply(s, ws, [&](int, int c) { return d2_factor(ws, c); }), method},
          {spectral_multiply(s, ws, xx), spectral_multiply(s, ws, xy), spectral_multiply(s, ws, yy)}};
}

std::vector<double> linear_symbol(const LinearPart& a, Method method, const SpectralWorkspace& ws) {
  const std::vector<double>& lam =
      method == Method::Spectral ? ws.laplacian_symbol() : ws.central_laplacian_symbol();
  std::vector<double> out(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    double p = 1.0;
    for (int e = 0; e < 2 * a.big_k; ++e) p *= lam[i];
    out[i] = a.lap_coeff * lam[i] - a.eta * p;
  }
  return out;
}

ScalarField resolvent_apply(const ScalarField& rhs, double dt, const std::vector<double>& a_symbol,
                            SpectralWorkspace& ws) {
  require_finite(rhs, "implicit_solve");
  Spectrum s = ws.forward(rhs);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] /= (1.0 - dt * a_symbol[i]);
  return ws.inverse(s);
}

ScalarField implicit_solve(const ScalarField& rhs, double dt, double eps, double eta, int big_k,
                           SpectralWorkspace& ws) {
  if (!(dt > 0.0) || !(eps >= 0.0) || !(eta >= 0.0) || big_k < 1) {
    throw std::invalid_argument("implicit_solve: require dt > 0, eps >= 0, eta >= 0, K >= 1");
  }
  return resolvent_apply(rhs, dt, linear_symbol({1.0 + eps, eta, big_k}, Method::Spectral, ws), ws);
}

ScalarField linear_apply(const ScalarField& u, const std::vector<double>& a_symbol, SpectralWorkspace& ws) {
  return ws.apply_symbol(u, a_symbol);
}

ScalarField semigroup_apply(const ScalarField& u, double t, const std::vector<double>& a_symbol,
                            SpectralWorkspace& ws) {
  Spectrum s = ws.forward(u);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= std::exp(t * a_symbol[i]);
  return ws.inverse(s);
}

}  // namespace smcf
