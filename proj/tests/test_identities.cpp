#include <doctest.h>

#include <cmath>
#include <random>

#include "dlt/identities.hpp"

using namespace dlt;
using namespace dlt::identities;
using qdilog::eval;

namespace {

const QuadratureSpec kOuter = [] {
  QuadratureSpec s;
  s.rel_tol = 1e-9;
  s.abs_tol = 1e-11;
  return s;
}();

}  // namespace

TEST_CASE("psi closed forms agree through the inversion relation") {
  std::mt19937_64 rng(101);
  for (cplx b : {cplx(1.0, 0.0), std::polar(1.0, pi / 6.0)}) {
    const CouplingParams p(b);
    for (int k = 0; k < 25; ++k) {
      const auto pt = sample_point(IdentityId::psi_consistency, p, rng);
      const double res = verify_identity(IdentityId::psi_consistency, p, pt,
                                         kOuter);
      CHECK(res < 1e-10);
    }
  }
}

TEST_CASE("psi closed form at u = v") {
  const CouplingParams p(1.0);
  const cplx cb = p.c_b();
  const cplx u(0.13, 0.21), w(0.3, -0.4);
  const QuadratureSpec qs = kOuter;
  const cplx direct = psi_closed(p, u, u, w, PsiVariant::res1, qs);
  const cplx expect = eval(p, cb, qs) * eval(p, -w - cb, qs) /
                      eval(p, -w + cb, qs) *
                      std::exp(-2.0 * pi * iu * w * (u - cb)) / p.zeta_o();
  CHECK(std::abs(direct - expect) / std::abs(expect) < 1e-12);
}

TEST_CASE("psi quadrature against the closed form") {
  const CouplingParams p(1.0);
  SUBCASE("strict-region point") {
    const cplx u(0.1, -0.2), v(-0.2, 0.2), w(0.25, -0.1);
    const cplx quad_val = psi_integral(p, u, v, w, kOuter);
    const cplx closed = psi_closed(p, u, v, w, PsiVariant::res1, kOuter);
    CHECK(std::abs(quad_val - closed) / std::abs(closed) < 1e-6);
  }
  SUBCASE("relaxed-region point needs tilted tails") {
    const cplx u(0.0, 0.1), v(0.0, -0.1), w(-0.2, 0.05);
    const cplx quad_val = psi_integral(p, u, v, w, kOuter);
    const cplx closed = psi_closed(p, u, v, w, PsiVariant::res1, kOuter);
    CHECK(std::abs(quad_val - closed) / std::abs(closed) < 1e-6);
  }
  SUBCASE("v -> -infinity surrogate reproduces the Fourier transform") {
    const cplx u(0.05, -0.2), v(-30.0, 0.0), w(0.1, -0.12);
    const cplx lhs = psi_integral(p, u, v, w, kOuter);
    const cplx rhs = std::exp(-2.0 * pi * iu * w * u) *
                     fourier_closed(p, w, +1, 0, kOuter);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-5);
  }
  SUBCASE("vanishing decay exponent is inadmissible") {
    CHECK_THROWS_AS(psi_integral(p, cplx(0.0, 0.1), cplx(0.0, -0.1), 0.0,
                                 kOuter),
                    AdmissibilityError);
  }
}

TEST_CASE("fourier transform closed forms and quadrature") {
  const CouplingParams p(1.0);
  SUBCASE("the two closed forms agree") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
      const auto pt = sample_point(IdentityId::fourier_plus, p, rng);
      const cplx w = pt.get("w");
      for (int sign : {+1, -1}) {
        const cplx a = fourier_closed(p, w, sign, 0, kOuter);
        const cplx b = fourier_closed(p, w, sign, 1, kOuter);
        CHECK(std::abs(a - b) / std::abs(b) < 1e-12);
      }
    }
  }
  SUBCASE("quadrature matches at w = -0.3 - 0.1i") {
    const cplx w(-0.3, -0.1);
    for (int sign : {+1, -1}) {
      const cplx q = fourier_quadrature(p, w, sign, kOuter);
      const cplx c = fourier_closed(p, w, sign, 0, kOuter);
      CHECK(std::abs(q - c) / std::abs(c) < 1e-6);
    }
  }
  SUBCASE("inverse transform returns phi^{+-1} at x = 0.2") {
    const cplx x(0.2, 0.0);
    const cplx phix = eval(p, x, kOuter);
    const cplx plus = fourier_inverse(p, x, +1, kOuter);
    CHECK(std::abs(plus - phix) / std::abs(phix) < 1e-5);
    const cplx minus = fourier_inverse(p, x, -1, kOuter);
    CHECK(std::abs(minus - 1.0 / phix) * std::abs(phix) < 1e-5);
  }
}

TEST_CASE("ihg basic hypergeometric integrals") {
  const CouplingParams p(1.0);
  std::mt19937_64 rng(11);
  SUBCASE("n = 1 is the Ramanujan integral") {
    for (int k = 0; k < 3; ++k) {
      const auto pt = sample_point(IdentityId::raman, p, rng);
      CHECK(verify_identity(IdentityId::raman, p, pt, kOuter) < 1e-6);
    }
  }
  SUBCASE("n = 2 Heine transformation") {
    const auto pt = sample_point(IdentityId::heine, p, rng);
    CHECK(verify_identity(IdentityId::heine, p, pt, kOuter) < 1e-5);
  }
  SUBCASE("n = 2 symmetry in the a-parameters") {
    const auto pt = sample_point(IdentityId::heine, p, rng);
    const cplx a = pt.get("a"), b = pt.get("b"), c = pt.get("c"),
               w = pt.get("w");
    const cplx ab = ihg(p, {a, b}, {c}, w, kOuter);
    const cplx ba = ihg(p, {b, a}, {c}, w, kOuter);
    CHECK(std::abs(ab - ba) / std::abs(ab) < 1e-8);
  }
  SUBCASE("bad shapes and windows are rejected by name") {
    CHECK_THROWS_AS(ihg(p, {cplx(0, 0.2)}, {cplx(0, 0.5)}, cplx(0, -0.2),
                        kOuter),
                    ConfigError);
    try {
      // Im(c_b - a) > 0 violated
      ihg_raw(p, {cplx(0.0, 1.5)}, {}, cplx(0.0, -0.2), kOuter, 1e-4);
      CHECK(false);
    } catch (const AdmissibilityError& e) {
      CHECK(std::string(e.inequality).find("c_b - a") != std::string::npos);
    }
  }
}

TEST_CASE("verify_identity residuals") {
  const CouplingParams p(1.0);
  std::mt19937_64 rng(13);
  SUBCASE("inversion at z = 0") {
    SamplePoint pt;
    pt.values = {{"z", cplx(0.0, 0.0)}};
    CHECK(verify_identity(IdentityId::inversion, p, pt, kOuter) < 1e-12);
  }
  SUBCASE("ramanbar") {
    const auto pt = sample_point(IdentityId::ramanbar, p, rng);
    CHECK(verify_identity(IdentityId::ramanbar, p, pt, kOuter) < 1e-6);
  }
  SUBCASE("saalschutz at a seeded admissible point") {
    const auto pt = sample_point(IdentityId::saalschutz, p, rng);
    CHECK(verify_identity(IdentityId::saalschutz, p, pt, kOuter) < 1e-5);
  }
  SUBCASE("saalschutz limit improves with the surrogate") {
    auto pt = sample_point(IdentityId::saalschutz_limit, p, rng);
    pt.set("c", cplx(-2.0, 0.0));
    const double res_near = verify_identity(IdentityId::saalschutz_limit, p,
                                            pt, kOuter);
    pt.set("c", cplx(-30.0, 0.0));
    const double res_far = verify_identity(IdentityId::saalschutz_limit, p,
                                           pt, kOuter);
    CHECK(res_far < 1e-4);
    CHECK(res_far < res_near);
  }
  SUBCASE("deterministic bit-for-bit") {
    const auto pt = sample_point(IdentityId::raman, p, rng);
    const double r1 = verify_identity(IdentityId::raman, p, pt, kOuter);
    const double r2 = verify_identity(IdentityId::raman, p, pt, kOuter);
    CHECK(r1 == r2);
  }
  SUBCASE("residual does not grow when rel_tol tightens") {
    const auto pt = sample_point(IdentityId::raman, p, rng);
    QuadratureSpec loose = kOuter;
    loose.rel_tol = 1e-6;
    QuadratureSpec tight = kOuter;
    tight.rel_tol = 1e-7;
    const double r_loose = verify_identity(IdentityId::raman, p, pt, loose);
    const double r_tight = verify_identity(IdentityId::raman, p, pt, tight);
    CHECK(r_tight < 3.0 * r_loose + 1e-12);
  }
  SUBCASE("admissibility errors carry the inequality") {
    SamplePoint pt;
    pt.values = {{"a", cplx(0.0, 0.3)}, {"w", cplx(0.0, 0.5)}};
    // Im w < Im c_b holds but the lower window bound fails for eps -> 0:
    // eps - Im a < Im w is fine, so force the upper bound instead
    pt.set("w", cplx(0.0, 1.5));
    CHECK_THROWS_AS(verify_identity(IdentityId::raman, p, pt, kOuter),
                    AdmissibilityError);
  }
}

TEST_CASE("alpha components") {
  const CouplingParams p(1.0);
  SUBCASE("s = 0 has the reduced form") {
    const double eps = 1e-4;
    const cplx x(0.4, 0.0);
    const cplx v = alpha_component(p, 0.0, x, eps, kOuter);
    const cplx expect = eval(p, -x - p.c_b() + iu * eps, kOuter) /
                        eval(p, x + p.c_b() - iu * eps, kOuter);
    CHECK(std::abs(v - expect) < 1e-12 * std::abs(expect));
  }
  SUBCASE("integrable decay in x") {
    // |alpha| decays like e^{-2 pi Im(c_b) |x|}; scan [-20, 20]
    const double s = 0.7;
    double prev = std::abs(alpha_component(p, s, cplx(3.0, 0.0), 1e-4,
                                           kOuter));
    for (double x : {6.0, 9.0, 12.0}) {
      const double here =
          std::abs(alpha_component(p, s, cplx(x, 0.0), 1e-4, kOuter));
      CHECK(here < prev);
      // tail bound consistent with the exponential rate
      CHECK(here < prev * std::exp(-2.0 * pi * 3.0 * 0.8));
      prev = here;
    }
  }
  SUBCASE("conjugation for real b") {
    // (phi(z))^* = 1/phi(z^*) applied to each factor gives
    // conj(<x|alpha_s>) = <-x|alpha_s> for real b, x, s
    const double s = 0.3, eps = 1e-5;
    for (double x : {-0.8, 0.2, 1.1}) {
      const cplx lhs = std::conj(alpha_component(p, s, cplx(x, 0.0), eps,
                                                 kOuter));
      const cplx rhs = alpha_component(p, s, cplx(-x, 0.0), eps, kOuter);
      CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-8);
    }
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(alpha_component(p, -0.1, 0.0, 1e-4, kOuter), DomainError);
    CHECK_THROWS_AS(alpha_component(p, 0.3, 0.0, -1e-4, kOuter), DomainError);
  }
}

TEST_CASE("q eigen transform") {
  const CouplingParams p(1.0);
  QuadratureSpec qs = kOuter;
  qs.rel_tol = 1e-8;
  SUBCASE("finite and nonzero") {
    const cplx v = q_eigen_transform(p, 0.4, cplx(0.1, 0.0), qs);
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
    CHECK(std::abs(v) > 1e-8);
  }
  SUBCASE("Cauchy-Riemann residual on a small grid") {
    const double s = 0.4, h = 1e-4;
    for (cplx z0 : {cplx(0.1, 0.0), cplx(-0.2, 0.1)}) {
      const cplx fx = (q_eigen_transform(p, s, z0 + h, qs) -
                       q_eigen_transform(p, s, z0 - h, qs)) /
                      (2.0 * h);
      const cplx fy = (q_eigen_transform(p, s, z0 + iu * h, qs) -
                       q_eigen_transform(p, s, z0 - iu * h, qs)) /
                      (2.0 * h);
      const double scale = std::abs(fx) + std::abs(fy) + 1e-300;
      CHECK(std::abs(fy - iu * fx) / scale < 1e-6);
    }
  }
  SUBCASE("window doubling stability") {
    QuadratureSpec narrow = qs;
    narrow.tail_cutoff = 3.0;
    QuadratureSpec wide = qs;
    wide.tail_cutoff = 6.0;
    const cplx a = q_eigen_transform_raw(p, 0.4, cplx(0.1, 0.0), narrow,
                                         1e-4);
    const cplx b = q_eigen_transform_raw(p, 0.4, cplx(0.1, 0.0), wide, 1e-4);
    CHECK(std::abs(a - b) / std::abs(b) < 1e-8);
  }
}

TEST_CASE("gaussian oracle for the shift-operator calculus") {
  // On psi(x) = e^{-pi x^2} the transform q_psi(z) = Int e^{2 pi i x z -
  // i pi x^2} psi(x) dx has the closed form (1+i)^{-1/2} e^{-pi z^2/(1+i)};
  // the momentum shift acting inside the transform must match the
  // multiplier form e^{i pi b^2} e^{-2 pi b z} q_psi(z - i b).
  QuadratureSpec qs;
  const cplx a(1.0, 1.0);
  auto q_closed = [&](cplx z) {
    return std::pow(a, -0.5) * std::exp(-pi * z * z / a);
  };
  auto transform = [&](auto psi, cplx z) {
    const ContourFn f = [&](const cplx& x) {
      return std::exp(2.0 * pi * iu * x * z - iu * pi * x * x) * psi(x);
    };
    cplx total = integrate_segment(f, cplx(-6.0, -0.1), cplx(6.0, -0.1), qs,
                                   nullptr);
    total += integrate_ray(f, cplx(6.0, -0.1), std::polar(1.0, -pi / 4.0),
                           1.0, qs, nullptr, 10.0);
    total -= integrate_ray(f, cplx(-6.0, -0.1),
                           std::polar(1.0, 3.0 * pi / 4.0), 1.0, qs, nullptr,
                           10.0);
    return total;
  };
  auto gauss = [](const cplx& x) { return std::exp(-pi * x * x); };
  const double b = 1.0;
  for (cplx z : {cplx(0.2, 0.0), cplx(-0.1, 0.3)}) {
    // the transform itself against the closed form
    CHECK(std::abs(transform(gauss, z) - q_closed(z)) < 1e-9);
    // e^{2 pi b q}: multiplication by e^{2 pi b x} inside = shift z -> z-ib
    auto mult = [&](const cplx& x) {
      return std::exp(2.0 * pi * b * x) * gauss(x);
    };
    CHECK(std::abs(transform(mult, z) - q_closed(z - iu * b)) < 1e-8);
    // e^{2 pi b p}: shift of the wave function = multiplier form
    auto shifted = [&](const cplx& x) { return gauss(x - iu * b); };
    const cplx lhs = transform(shifted, z);
    const cplx rhs = std::exp(iu * pi * b * b) *
                     std::exp(-2.0 * pi * b * z) * q_closed(z - iu * b);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("baxter equation at N = 1") {
  const CouplingParams p(1.0);
  QuadratureSpec qs = kOuter;
  qs.rel_tol = 1e-8;
  SUBCASE("reference point") {
    CHECK(check_baxter_n1(p, 0.3, cplx(0.2, 0.0), qs) < 1e-6);
  }
  SUBCASE("s = 0 has eigenvalue 2") {
    CHECK(check_baxter_n1(p, 0.0, cplx(0.2, 0.0), qs) < 1e-6);
    const cplx q0 = q_eigen_transform(p, 0.0, cplx(0.2, 0.0), qs);
    const cplx q_dn = q_eigen_transform(p, 0.0, cplx(0.2, -1.0), qs);
    const cplx q_up = q_eigen_transform(p, 0.0, cplx(0.2, 1.0), qs);
    const cplx lhs = std::exp(iu * pi) * std::exp(-2.0 * pi * 0.2) * q_dn +
                     q_dn + q_up;
    CHECK(std::abs(lhs - 2.0 * q0) / std::abs(2.0 * q0) < 1e-6);
  }
}

TEST_CASE("bailey lemma ingredients") {
  const CouplingParams p(1.0);
  QuadratureSpec qs = kOuter;
  SUBCASE("eigenvalue factor symmetries") {
    const cplx u(0.0, 0.2), v(0.1, 0.15);
    const double s = 0.3;
    const cplx uv = bailey_eigenvalue(p, u, v, s, qs);
    const cplx vu = bailey_eigenvalue(p, v, u, s, qs);
    CHECK(std::abs(uv - vu) / std::abs(uv) < 1e-10);
    const cplx neg = bailey_eigenvalue(p, u, v, -s, qs);
    CHECK(std::abs(uv - neg) / std::abs(uv) < 1e-10);
  }
  SUBCASE("kernel closed form against the defining integral") {
    // phi(p+u+v)/phi(p) has the kernel Psi(u+v, 0, t); its closed form is
    // checked against the quadrature where the defining window is open
    const cplx uv(0.0, -0.5);
    const cplx t(0.3, -0.2);
    const cplx direct = psi_integral(p, uv, 0.0, t, qs);
    const cplx closed = psi_closed(p, uv, 0.0, t, PsiVariant::res1, qs);
    CHECK(std::abs(direct - closed) / std::abs(closed) < 1e-6);
  }
  SUBCASE("matrix element is symmetric in u and v") {
    QuadratureSpec fast = qs;
    fast.rel_tol = 1e-7;
    const cplx u(0.0, 0.2), v(0.0, 0.25);
    const cplx ab = bailey_matrix_element(p, u, v, 0.3, 0.0, fast, 1e-4);
    const cplx ba = bailey_matrix_element(p, v, u, 0.3, 0.0, fast, 1e-4);
    CHECK(std::abs(ab - ba) / std::abs(ab) < 1e-8);
  }
}

TEST_CASE("residual report lines are machine readable") {
  ResidualRecord rec;
  rec.id = IdentityId::raman;
  rec.point.values = {{"a", cplx(0.1, 0.2)}};
  rec.point.certificate = "test";
  rec.residual = 1e-7;
  const std::string line = to_json_line(rec);
  CHECK(line.find("\"id\":\"raman\"") != std::string::npos);
  CHECK(line.find("\"residual\"") != std::string::npos);
  CHECK(line.find("\n") == std::string::npos);
}
