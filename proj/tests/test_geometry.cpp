#include <doctest.h>

#include <cmath>
#include <numbers>

#include "smcf/geometry.hpp"
#include "smcf/initial_condition.hpp"
#include "smcf/monitors.hpp"
#include "smcf/spectral.hpp"
#include "smcf/verify.hpp"

using namespace smcf;

namespace {
constexpr double kPi = std::numbers::pi;

// Composite Simpson rule on [0, 1]; an independent reference for 1D integrals.
template <class F>
double simpson(F f, int panels) {
  const double h = 1.0 / panels;
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

ScalarField ridge(GridSpec g) {
  return ScalarField::from_function(g, [](double x, double) { return 0.5 * std::sin(2 * kPi * x); });
}
}  // namespace

TEST_CASE("area and Dirichlet energy of a ridge against 1D quadrature") {
  const GridSpec g(128);
  SpectralWorkspace ws(g);
  const GeometryBundle b = geometry_bundle(ridge(g), Method::Spectral, ws);
  const double area = simpson([](double x) { return std::sqrt(1 + std::pow(kPi * std::cos(2 * kPi * x), 2)); }, 20000);
  CHECK(integrate(b.H()) == doctest::Approx(area).epsilon(1e-10));
  // Frozen from adaptive quadrature of the same integrand.
  CHECK(area == doctest::Approx(2.3048926613537).epsilon(1e-11));
  CHECK(l2_norm_sq(b.grad) == doctest::Approx(kPi * kPi / 2).epsilon(1e-13));
}

TEST_CASE("curvature of a ridge matches u''/(1+u'^2)^(3/2) with spectral convergence") {
  // The steep ridge has complex singularities of w at distance ~0.05 from
  // the real axis, so the error decays like exp(-2 pi n 0.05).
  std::vector<double> errs;
  for (int n : {64, 128, 256}) {
    const GridSpec g(n);
    SpectralWorkspace ws(g);
    const GeometryBundle b = geometry_bundle(ridge(g), Method::Spectral, ws);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = g.coord(i);
      const double d1 = kPi * std::cos(2 * kPi * x);
      const double d2 = -2 * kPi * kPi * std::sin(2 * kPi * x);
      worst = std::max(worst, std::abs(b.v()(i, 5) - d2 / std::pow(1 + d1 * d1, 1.5)));
    }
    errs.push_back(worst);
    // A ridge is developable.
    CHECK(linf_norm(gaussian_curvature(b)) < 1e-11);
  }
  CHECK(errs[1] < 1e-3 * errs[0]);
  CHECK(errs[2] < 1e-10);
}

TEST_CASE("pointwise identities on a random smooth graph") {
  const GridSpec g(64);
  SpectralWorkspace ws(g);
  const IdentityErrors e = geometry_identity_errors(make_initial_field("random_smooth:21,4", g), Method::Spectral, ws);
  CHECK(e.area_element < 1e-12);
  CHECK(e.projection_det < 1e-12);
  CHECK(e.drift_identity < 1e-8);
  CHECK(e.curvature < 1e-6);
}

TEST_CASE("anisotropic operator and the Ito correction") {
  const GridSpec g(64);
  SpectralWorkspace ws(g);
  const GeometryBundle b = geometry_bundle(make_initial_field("random_smooth:4,4", g), Method::Spectral, ws);
  const ScalarField lap = b.hess.xx + b.hess.yy;
  CHECK(linf_norm(anisotropic_operator(b) - (lap - normal_hessian_form(b))) < 1e-12);
  CHECK(linf_norm(strat_correction(b) - 0.5 * normal_hessian_form(b)) < 1e-15);
  // H div(grad u / H) = Delta u - w^T D^2u w, up to resolution error.
  CHECK(linf_norm(mcf_operator(b) - anisotropic_operator(b)) < 1e-9);
}

TEST_CASE("Gauss-Bonnet cancellation and the cofactor flux route") {
  const GridSpec g(64);
  SpectralWorkspace ws(g);
  const GeometryBundle b = geometry_bundle(make_initial_field("random_smooth:2,4", g), Method::Spectral, ws);
  CHECK(std::abs(gauss_bonnet_residual(b)) < 1e-12);
  const CofactorFluxReport r = cofactor_flux_check(b, ws);
  CHECK(r.linf < 1e-7);
  CHECK(std::abs(r.flux_integral) < 1e-12);
}

TEST_CASE("h map: closed-form divergence and the small-|z| branch") {
  // Central differences of h as an independent oracle for div h.
  const double d = 1e-5;
  for (auto [z1, z2] : {std::pair{0.3, -0.2}, std::pair{0.6, 0.5}, std::pair{-0.05, 0.01}}) {
    const double div = (h_map(z1 + d, z2)[0] - h_map(z1 - d, z2)[0] + h_map(z1, z2 + d)[1] - h_map(z1, z2 - d)[1]) / (2 * d);
    CHECK(div == doctest::Approx(h_map_divergence(z1, z2)).epsilon(1e-8));
    CHECK(h_map_divergence(z1, z2) == doctest::Approx(0.5 / std::sqrt(1 - z1 * z1 - z2 * z2)));
  }
  // h(z) ~ z/4 near the origin; both branches must agree across the switch.
  const auto tiny = h_map(1e-9, 0.0);
  CHECK(tiny[0] == doctest::Approx(0.25e-9).epsilon(1e-12));
  const auto six = h_map(0.6, 0.0);
  CHECK(six[0] == doctest::Approx(0.2 / 0.72 * 0.6).epsilon(1e-15));
  CHECK(h_map(0.0, 0.0)[0] == 0.0);
  const auto a = h_map(1e-4, 0.0);
  CHECK(a[0] == doctest::Approx((1 - std::sqrt(1 - 1e-8)) / (2e-8) * 1e-4).epsilon(1e-8));
}

TEST_CASE("energy record from a bundle") {
  const GridSpec g(32);
  SpectralWorkspace ws(g);
  const ScalarField u = ridge(g);
  const EnergyRecord r = record(u, 0.25, Method::Spectral, ws);
  CHECK(r.t == 0.25);
  CHECK(r.mass == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.u_max == doctest::Approx(0.5));
  CHECK(r.u_min == doctest::Approx(-0.5));
  CHECK(r.hess_linf == doctest::Approx(2 * kPi * kPi));
  CHECK(r.laplace_dissipation == doctest::Approx(std::pow(2 * kPi * kPi, 2) / 2));
  const GeometryBundle nodw = geometry_bundle(u, Method::Spectral, ws, false);
  CHECK_THROWS_AS(record_from_bundle(nodw, u, 0.0), std::invalid_argument);
}

TEST_CASE("flat graphs and single-point closed forms") {
  const GridSpec g(16);
  SpectralWorkspace ws(g);
  const GeometryBundle flat = geometry_bundle(ScalarField(g, 0.4), Method::Spectral, ws);
  CHECK(linf_norm(flat.H() - ScalarField(g, 1.0)) == 0.0);
  CHECK(linf_norm(flat.w().x) == 0.0);
  CHECK(linf_norm(flat.w().y) == 0.0);
  CHECK(linf_norm(flat.v()) == 0.0);
  CHECK(linf_norm(mcf_operator(flat)) == 0.0);
  CHECK(linf_norm(anisotropic_operator(flat)) == 0.0);
  CHECK(linf_norm(strat_correction(flat)) == 0.0);
  CHECK(linf_norm(gaussian_curvature(flat)) == 0.0);
  CHECK(gauss_bonnet_residual(flat) == 0.0);
  const EnergyRecord r = record(ScalarField(g, 0.4), 0.0, Method::Spectral, ws);
  CHECK(r.grad_energy == 0.0);
  CHECK(r.area == 1.0);
  CHECK(r.mc_dissipation == 0.0);
  CHECK(r.mass == doctest::Approx(0.4).epsilon(1e-15));

}

TEST_CASE("critical point of sin sin: Gaussian curvature 16 pi^4") {
  const GridSpec g(32);
  SpectralWorkspace ws(g);
  const auto u = ScalarField::from_function(g, [](double x, double y) { return std::sin(2 * kPi * x) * std::sin(2 * kPi * y); });
  const GeometryBundle b = geometry_bundle(u, Method::Spectral, ws);
  // (1/4, 1/4) is grid point (8, 8).
  CHECK(b.H()(8, 8) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gaussian_curvature(b)(8, 8) == doctest::Approx(16 * std::pow(kPi, 4)).epsilon(1e-10));
  CHECK(anisotropic_operator(b)(8, 8) == doctest::Approx((b.hess.xx + b.hess.yy)(8, 8)).epsilon(1e-12));
}

TEST_CASE("mean curvature operator linearizes to the Laplacian") {
  const GridSpec g(32);
  SpectralWorkspace ws(g);
  std::vector<double> rel;
  for (double a : {1e-2, 1e-3}) {
    const auto u = ScalarField::from_function(g, [&](double x, double) { return a * std::sin(2 * kPi * x); });
    const GeometryBundle b = geometry_bundle(u, Method::Spectral, ws);
    const ScalarField lap = b.hess.xx + b.hess.yy;
    rel.push_back(linf_norm(mcf_operator(b) - lap) / linf_norm(lap));
  }
  CHECK(rel[0] / rel[1] == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("Ito correction of a ridge: half w1^2 uxx") {
  const GridSpec g(64);
  SpectralWorkspace ws(g);
  const double a = 0.3;
  const auto u = ScalarField::from_function(g, [&](double x, double) { return a * std::sin(2 * kPi * x); });
  const GeometryBundle b = geometry_bundle(u, Method::Spectral, ws);
  double worst = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double x = g.coord(i);
    const double ux = 2 * kPi * a * std::cos(2 * kPi * x);
    const double uxx = -4 * kPi * kPi * a * std::sin(2 * kPi * x);
    const double w1 = ux / std::sqrt(1 + ux * ux);
    worst = std::max(worst, std::abs(strat_correction(b)(i, 3) - 0.5 * w1 * w1 * uxx));
    // The 1D anisotropic operator is uxx / H^2.
    worst = std::max(worst, std::abs(anisotropic_operator(b)(i, 3) - uxx / (1 + ux * ux)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("unit-amplitude ridge: Parseval energy and elliptic-integral area") {
  const GridSpec g(256);
  SpectralWorkspace ws(g);
  const auto u = ScalarField::from_function(g, [](double x, double) { return std::sin(2 * kPi * x); });
  const EnergyRecord r = record(u, 0.0, Method::Spectral, ws);
  CHECK(r.grad_energy == doctest::Approx(2 * kPi * kPi).epsilon(1e-13));
  const double area = simpson([](double s) { return std::sqrt(1 + 4 * kPi * kPi * std::pow(std::cos(2 * kPi * s), 2)); }, 200000);
  // Frozen from adaptive quadrature.
  CHECK(area == doctest::Approx(4.188275203698434).epsilon(1e-11));
  CHECK(r.area == doctest::Approx(area).epsilon(1e-10));
  // Cauchy-Schwarz on the unit torus.
  CHECK(r.area * r.area <= 1 + r.grad_energy + 1e-10);
  CHECK(r.area >= 1.0);
}

TEST_CASE("Gauss-Bonnet residual of the mixed-mode field under refinement") {
  const std::string field = "modes:[(1,1,0.15,0),(1,-1,0.15,0),(0,2,0.2,1.5707963267948966)]";
  // 0.3 sin(2 pi x) cos(2 pi y) + 0.2 cos(4 pi y), written as Fourier modes.
  const GridSpec g(64);
  SpectralWorkspace ws(g);
  const ScalarField u = make_initial_field(field, g);
  const auto ref = ScalarField::from_function(g, [](double x, double y) {
    return 0.3 * std::sin(2 * kPi * x) * std::cos(2 * kPi * y) + 0.2 * std::cos(4 * kPi * y);
  });
  REQUIRE(linf_norm(u - ref) < 1e-14);
  // Gradients are steep here (|grad u| above 2), so n = 32 is pre-asymptotic for
  // Central2 (local order 1.71) and Spectral needs n = 128 for 1e-8.
  const auto central = gauss_bonnet_residuals(field, {32, 64, 128, 256}, Method::Central2);
  for (int i = 0; i < 3; ++i) CHECK(central[i + 1] < central[i]);
  CHECK(min_observed_order({central[1], central[2], central[3]}) >= 1.8);
  const auto spectral = gauss_bonnet_residuals(field, {64, 128}, Method::Spectral);
  CHECK(spectral[0] < central[1]);
  CHECK(spectral[1] <= 1e-8);
}
