#include <doctest.h>

#include <cmath>

#include "dlt/coupling.hpp"

using namespace dlt;

TEST_CASE("derived constants at b = 1") {
  const CouplingParams p(1.0);
  CHECK(p.c_b() == cplx(0.0, 1.0));
  CHECK(std::abs(p.zeta_inv() - std::exp(-iu * pi / 6.0)) < 1e-15);
  CHECK(std::abs(p.q() - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(p.unitary_mode());
  CHECK_FALSE(p.product_mode());
}

TEST_CASE("zeta three-way consistency") {
  for (cplx b : {cplx(1.0, 0.0), cplx(0.8, 0.0), std::polar(1.0, pi / 6.0),
                 cplx(0.7, 0.4)}) {
    const CouplingParams p(b);
    const cplx cb2 = p.c_b() * p.c_b();
    CHECK(std::abs(p.zeta_inv() - std::exp(iu * pi * (1.0 + 2.0 * cb2) / 6.0)) <
          1e-14);
    CHECK(std::abs(p.zeta_o() - std::exp(iu * pi * (1.0 - 4.0 * cb2) / 12.0)) <
          1e-14);
    CHECK(std::abs(p.zeta_inv() - std::exp(iu * pi * cb2) * p.zeta_o() *
                                      p.zeta_o()) < 1e-14);
    CHECK(std::abs(p.zeta() - std::exp(iu * pi * cb2 / 3.0)) < 1e-14);
    CHECK(p.c_b().imag() > 0.0);
  }
}

TEST_CASE("normalization into the first quadrant") {
  const CouplingParams direct(std::polar(1.0, pi / 6.0));
  const CouplingParams via_inverse(std::polar(1.0, -pi / 6.0));
  const CouplingParams via_sign(-std::polar(1.0, pi / 6.0));
  CHECK(std::abs(direct.b() - via_inverse.b()) < 1e-15);
  CHECK(std::abs(direct.b() - via_sign.b()) < 1e-15);
  CHECK(direct.b().real() > 0.0);
  CHECK(direct.b().imag() >= 0.0);
}

TEST_CASE("mode flags") {
  CHECK(CouplingParams(std::polar(1.0, pi / 6.0)).unitary_mode());
  CHECK(CouplingParams(std::polar(1.0, pi / 6.0)).product_mode());
  CHECK(CouplingParams(cplx(0.7, 0.4)).product_mode());
  CHECK_FALSE(CouplingParams(cplx(0.7, 0.4)).unitary_mode());
  CHECK_THROWS_AS(CouplingParams(cplx(0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(CouplingParams(cplx(0.0, 0.0)), DomainError);
}

TEST_CASE("pole and zero lattice distances") {
  const CouplingParams p(1.0);
  // poles at -c_b - i(m + n) = -i(1 + m + n)
  CHECK(p.pole_distance(cplx(0.0, -1.0)) < 1e-12);
  CHECK(p.pole_distance(cplx(0.0, -3.0)) < 1e-12);
  CHECK(p.pole_distance(cplx(0.3, -1.0)) == doctest::Approx(0.3));
  CHECK(p.zero_distance(cplx(0.0, 1.0)) < 1e-12);
  CHECK(p.zero_distance(cplx(0.0, 4.0)) < 1e-12);
  CHECK(p.near_pole(cplx(1e-12, -1.0)));
  CHECK_FALSE(p.near_pole(cplx(0.5, 0.0)));

  const CouplingParams q(std::polar(1.0, pi / 6.0));
  CHECK(q.pole_distance(-q.c_b()) < 1e-12);
  CHECK(q.pole_distance(-q.c_b() - iu * q.b() - iu / q.b()) < 1e-12);
  CHECK(q.zero_distance(q.c_b() + 2.0 * iu * q.b()) < 1e-12);
}
