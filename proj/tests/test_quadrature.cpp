#include <doctest.h>

#include <cmath>

#include "dlt/quadrature.hpp"

using namespace dlt;

TEST_CASE("gaussian over a straight segment") {
  QuadratureSpec spec;
  const auto f = [](const cplx& z) { return std::exp(-z * z); };
  QuadratureStats stats;
  const cplx v = integrate_segment(f, -8.0, 8.0, spec, &stats);
  CHECK(std::abs(v - std::sqrt(pi)) < 1e-12);
  CHECK(stats.evals > 0);
}

TEST_CASE("polyline equals the straight path for an entire integrand") {
  QuadratureSpec spec;
  const auto f = [](const cplx& z) { return std::exp(-z * z) * std::cos(z); };
  const cplx direct = integrate_segment(f, -7.0, 7.0, spec, nullptr);
  const cplx bent = integrate_polyline(
      f, {cplx(-7.0, 0.0), cplx(-1.0, 0.7), cplx(2.0, -0.5), cplx(7.0, 0.0)},
      spec, nullptr);
  CHECK(std::abs(direct - bent) < 1e-12);
}

TEST_CASE("ray tails consume a decaying oscillation") {
  QuadratureSpec spec;
  // int_0^inf e^{-x} cos(3x) dx = 1/10
  const auto f = [](const cplx& z) { return std::exp(-z) * std::cos(3.0 * z); };
  const cplx v = integrate_ray(f, 0.0, 1.0, 1.0, spec, nullptr);
  CHECK(std::abs(v - 0.1) < 1e-11);
}

TEST_CASE("tilted ray kills a Fresnel factor") {
  QuadratureSpec spec;
  // int_0^{inf e^{-i pi/4}} e^{-i pi z^2} dz = e^{-i pi/4}/2
  const auto f = [](const cplx& z) { return std::exp(-iu * pi * z * z); };
  const cplx v =
      integrate_ray(f, 0.0, std::polar(1.0, -pi / 4.0), 1.0, spec, nullptr);
  CHECK(std::abs(v - std::polar(0.5, -pi / 4.0)) < 1e-12);
}

TEST_CASE("subdivision limit reports nonconvergence") {
  QuadratureSpec spec;
  spec.max_subdivisions = 8;
  spec.abs_tol = 1e-280;
  spec.rel_tol = 1e-280;
  const auto f = [](const cplx& z) {
    return std::sin(200.0 * z) / (z * z + 0.0001);
  };
  CHECK_THROWS_AS(integrate_segment(f, -3.0, 3.0, spec, nullptr),
                  ConvergenceError);
}

TEST_CASE("richardson extrapolation removes the linear term") {
  const auto model = [](double e) { return cplx(2.0 + 3.0 * e + e * e, 0.0); };
  const cplx r = richardson3(model(0.1), model(0.05), model(0.025));
  CHECK(std::abs(r - 2.0) < 1e-12);
}
