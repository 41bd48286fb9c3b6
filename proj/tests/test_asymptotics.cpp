#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weylkit/asymptotics.hpp"
#include "weylkit/error.hpp"
#include "weylkit/shapes.hpp"

using namespace weylkit;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("solve inverts a single Weyl term") {
  for (int dim = 1; dim <= 4; ++dim) {
    const double c0 = 0.3 + dim;
    const CountingSeries cs(dim, {{HalfIndex::whole(0), 0.5 * dim, c0, TermKind::Convergent}}, {});
    for (std::uint64_t n : {1u, 7u, 1000u}) {
      const double expected = std::pow(static_cast<double>(n) / c0, 2.0 / dim);
      CHECK(eigenvalue_solve(cs, n) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("solve returns the largest root of a non-monotone series") {
  // 0.1 l - 2 l^{1/2} + 12 has its minimum 2 at l = 100, so N = 3 has two roots.
  const CountingSeries cs(2,
                          {{HalfIndex::whole(0), 1.0, 0.1, TermKind::Convergent},
                           {HalfIndex::from_twice(1), 0.5, -2.0, TermKind::Convergent},
                           {HalfIndex::whole(1), 0.0, 12.0, TermKind::Convergent}},
                          {});
  const double l3 = eigenvalue_solve(cs, 3);
  const double s_big = (2.0 + std::sqrt(4.0 - 0.4 * 9.0)) / 0.2;
  CHECK(l3 == doctest::Approx(s_big * s_big).epsilon(1e-12));
}

TEST_CASE("unit square n = 4 lands between the 4th and 5th levels") {
  const BoxShape sq{{1.0, 1.0}};
  const CountingSeries cs = transform_coefficients(box_heat_coefficients(sq, HalfIndex::whole(1)));
  const Spectrum s = box_spectrum(sq, 500.0);
  const double lambda = eigenvalue_solve(cs, 4);
  CHECK(lambda > s.nth_eigenvalue(4));
  CHECK(lambda < s.nth_eigenvalue(5));
}

TEST_CASE("expansion coefficients of the Dirichlet 3-ball") {
  const auto hk = ball_low_order_coefficients(3, 1.0, BoundaryCondition::Dirichlet);
  const SpectrumAsymptotics sa = expansion_coefficients(hk);
  CHECK(sa.alpha[0] == doctest::Approx(1.5 * std::cbrt(6.0 * kPi * kPi)).epsilon(1e-13));
  CHECK(sa.alpha[1] == doctest::Approx(0.375 * std::pow(6.0 * kPi * kPi, 2.0 / 3.0)).epsilon(1e-13));
  CHECK(sa.alpha[2] == doctest::Approx(27.0 * kPi * kPi / 64.0 - 2.0).epsilon(1e-13));

  const SpectrumAsymptotics table = tabulated_ball_expansion(3, 1.0, BoundaryCondition::Dirichlet);
  for (int m = 0; m < 3; ++m) CHECK(table.alpha[m] == doctest::Approx(sa.alpha[m]).epsilon(1e-13));
}

TEST_CASE("expansion coefficients of the 5-ball") {
  const SpectrumAsymptotics sa =
      expansion_coefficients(ball_low_order_coefficients(5, 1.0, BoundaryCondition::Dirichlet));
  CHECK(sa.alpha[0] == doctest::Approx(0.5 * std::pow(450.0 * std::sqrt(2.0) * kPi, 0.4)).epsilon(1e-13));
  CHECK(sa.alpha[1] == doctest::Approx(15.0 * kPi / 32.0 * std::pow(3600.0 * kPi, 0.2)).epsilon(1e-13));
  CHECK(sa.alpha[2] == doctest::Approx(1125.0 * kPi * kPi / 1024.0 - 20.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("4-ball constant term") {
  const SpectrumAsymptotics sa =
      expansion_coefficients(ball_low_order_coefficients(4, 1.0, BoundaryCondition::Dirichlet));
  CHECK(sa.alpha[0] == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(sa.alpha[1] == doctest::Approx(16.0 * std::sqrt(2.0) / 3.0).epsilon(1e-13));
  // Geometric B_1 = (D-1)/(3R) * area gives +28/9; the tabulated value is -26/9.
  CHECK(sa.alpha[2] == doctest::Approx(28.0 / 9.0).epsilon(1e-13));
  CHECK(tabulated_ball_expansion(4, 1.0, BoundaryCondition::Dirichlet).alpha[2] ==
        doctest::Approx(-26.0 / 9.0));
}

TEST_CASE("Weyl inversion and sign rule") {
  for (int dim = 1; dim <= 6; ++dim) {
    const auto hk = ball_low_order_coefficients(dim, 1.3, BoundaryCondition::Dirichlet);
    const SpectrumAsymptotics sa = expansion_coefficients(hk);
    const double c0 = transform_coefficients(hk).power_terms()[0].coefficient;
    CHECK(sa.alpha[0] == doctest::Approx(std::pow(c0, -2.0 / dim)).epsilon(1e-12));

    const auto flipped = ball_low_order_coefficients(dim, 1.3, BoundaryCondition::NeumannOrRobin);
    const SpectrumAsymptotics sf = expansion_coefficients(flipped);
    CHECK(sf.alpha[0] == sa.alpha[0]);
    CHECK(sf.alpha[1] == doctest::Approx(-sa.alpha[1]).epsilon(1e-15));
  }
  const auto neumann = tabulated_ball_expansion(3, 1.0, BoundaryCondition::NeumannOrRobin);
  const auto dirichlet = tabulated_ball_expansion(3, 1.0, BoundaryCondition::Dirichlet);
  CHECK(neumann.alpha[1] == -dirichlet.alpha[1]);
}

TEST_CASE("expansion needs B_1") {
  CHECK_THROWS_AS(expansion_coefficients(HeatKernelCoefficients(3, {1.0, -1.0})),
                  InsufficientCoefficientsError);
}

TEST_CASE("evaluate_expansion") {
  CHECK(evaluate_expansion({2, {1.0, 0.0, 0.0}}, 7) == doctest::Approx(7.0));
  const SpectrumAsymptotics r1 = tabulated_ball_expansion(3, 1.0, BoundaryCondition::Dirichlet);
  const SpectrumAsymptotics r2 = tabulated_ball_expansion(3, 2.0, BoundaryCondition::Dirichlet);
  for (std::uint64_t n : {1u, 50u, 900u})
    CHECK(evaluate_expansion(r2, n) == doctest::Approx(evaluate_expansion(r1, n) / 4.0).epsilon(1e-14));
}

TEST_CASE("expansion and solver agree at large n") {
  const Ball3DShape ball{1.0};
  const CountingSeries cs = ball3d_counting_series(ball);
  const SpectrumAsymptotics sa = expansion_coefficients(ball3d_heat_coefficients(ball));
  double prev = 1e300;
  for (std::uint64_t n : {100u, 400u, 1600u, 6400u, 25600u}) {
    const double solved = eigenvalue_solve(cs, n);
    const double expanded = evaluate_expansion(sa, n);
    const double scaled = std::abs(solved - expanded) / solved * std::cbrt(static_cast<double>(n));
    CHECK(scaled < prev);
    prev = scaled;
    // N(expanded) stays within half a state of n once the expansion applies.
    CHECK(std::abs(evaluate_counting_series(cs, expanded).value - static_cast<double>(n)) <= 0.5);
  }
}
