#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aoicov/aoi.hpp"
#include "aoicov/channel.hpp"
#include "aoicov/config.hpp"
#include "aoicov/coverage.hpp"
#include "aoicov/error.hpp"
#include "aoicov/units.hpp"

using namespace aoicov;

TEST_CASE("correlation examples") {
  const CorrelationParams cp;
  CHECK(correlation(0, 0, cp) == 1.0);
  const double l = 10.0;
  const double tau = (std::log(2.0) - cp.u * l) / cp.v;
  CHECK(correlation(l, tau, cp) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(correlation(3, 0, cp) == doctest::Approx(std::exp(-0.0528)).epsilon(1e-14));
  CHECK(correlation(3, 0, cp) == doctest::Approx(0.9486).epsilon(1e-4));
  CHECK_THROWS_AS(correlation(-1, 0, cp), DomainError);
  CHECK_THROWS_AS(correlation(0, -1, cp), DomainError);
}

TEST_CASE("estimation error") {
  const CorrelationParams cp;
  CHECK(estimation_error(0, 0, cp) == 0.0);
  CHECK(estimation_error(max_radius(cp), 0, cp) == doctest::Approx(cp.theta_th).epsilon(1e-13));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.0, 200.0);
  for (int i = 0; i < 1000; ++i) {
    const double l = d(rng), tau = 10 * d(rng);
    const double rho = correlation(l, tau, cp);
    CHECK(estimation_error(l, tau, cp) == doctest::Approx(1 - rho * rho).epsilon(1e-12));
  }
}

TEST_CASE("maximum radius and area") {
  CorrelationParams cp;
  CHECK(max_radius(cp) == doctest::Approx(-std::log(0.9) / 0.0352).epsilon(1e-14));
  CHECK(max_radius(cp) == doctest::Approx(2.993).epsilon(1e-3));
  CHECK(max_coverage(cp) == doctest::Approx(std::numbers::pi * max_radius(cp) * max_radius(cp)));
  CHECK(max_coverage(cp) == doctest::Approx(28.15).epsilon(1e-3));
  cp.theta_th = 1e-12;
  CHECK(max_radius(cp) < 1e-9);
}

TEST_CASE("radius at age") {
  const CorrelationParams cp;
  const double r = max_radius(cp);
  const double zero_at = cp.u / cp.v * r;
  CHECK(radius_at_age(0, cp) == r);
  CHECK(radius_at_age(zero_at, cp) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(radius_at_age(zero_at, cp)) < 1e-12);
  CHECK(radius_at_age(zero_at / 2, cp) == doctest::Approx(r / 2).epsilon(1e-12));
  CHECK(radius_at_age(10 * zero_at, cp) == 0.0);
  double prev = r;
  for (double a = 0; a < 2 * zero_at; a += 0.1) {
    CHECK(radius_at_age(a, cp) <= prev);
    prev = radius_at_age(a, cp);
  }
}

TEST_CASE("eta threshold") {
  CorrelationParams cp;
  const double expected = cp.u / cp.v * max_radius(cp) * (1 - std::sqrt(cp.eta));
  CHECK(eta_threshold(cp) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(eta_threshold(cp) == doctest::Approx(9.92).epsilon(3e-3));
  cp.eta = 1.0;
  CHECK(eta_threshold(cp) == 0.0);
  CHECK(eta_coverage_probability(cp, 0.9, {1, 1, 10}) == 0.0);
  cp.eta = 1e-14;
  CHECK(eta_threshold(cp) == doctest::Approx(cp.u / cp.v * max_radius(cp)).epsilon(1e-6));
}

TEST_CASE("coverage and violation sum to one") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u01(0.01, 0.99);
  std::uniform_int_distribution<int> un(1, 30);
  for (int i = 0; i < 500; ++i) {
    CorrelationParams cp;
    cp.u = 0.05 * u01(rng);
    cp.v = 0.005 * u01(rng);
    cp.theta_th = u01(rng);
    cp.eta = u01(rng);
    const Timing t{1.0, u01(rng), un(rng)};
    const double p = u01(rng);
    const double pv = violation_probability({eta_threshold(cp), p, t});
    CHECK(eta_coverage_probability(cp, p, t) + pv == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("coverage monotone in power and eta") {
  const ExperimentSpec spec = default_spec();
  double prev = -1.0;
  for (double dbm = -20; dbm <= 30; dbm += 0.25) {
    const double p = stp_at(spec.system, Environment::General, dbm_to_mw(dbm));
    const double c = eta_coverage_probability(spec.correlation, p, spec.system.timing);
    CHECK(c >= prev - 1e-15);
    prev = c;
  }
  CorrelationParams cp = spec.correlation;
  prev = 2.0;
  for (double eta = 0.05; eta <= 1.0; eta += 0.05) {
    cp.eta = std::min(eta, 1.0);
    const double c = eta_coverage_probability(cp, 0.6, spec.system.timing);
    CHECK(c <= prev + 1e-15);
    prev = c;
  }
}

TEST_CASE("correlation parameter validation") {
  auto bad = [](auto mutate) {
    CorrelationParams cp;
    mutate(cp);
    CHECK_THROWS_AS(validate(cp), ValidationError);
  };
  bad([](CorrelationParams& c) { c.u = 0; });
  bad([](CorrelationParams& c) { c.v = -1; });
  bad([](CorrelationParams& c) { c.theta_th = 1; });
  bad([](CorrelationParams& c) { c.eta = 0; });
  bad([](CorrelationParams& c) { c.eta = 1.1; });
  bad([](CorrelationParams& c) { c.eps_target = 1; });
  CHECK_NOTHROW(validate(CorrelationParams{}));
}
