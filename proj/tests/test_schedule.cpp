#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "zofw/schedule.hpp"

using namespace zofw;

TEST_CASE("star theorem preset at T=1000, d=100") {
  const Schedule s =
      make_schedule(SchedulePreset::AccSzofwStarTheorem, 1000, 100, 1);
  CHECK(s.eta(0) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(s.coo_radius == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(s.decay_exponent == doctest::Approx(2.0 / 3.0));
  CHECK(s.gamma_multiplier == 1.0);
}

TEST_CASE("theorem preset batch sizes follow ceil(sqrt(n))") {
  const Schedule s = make_schedule(SchedulePreset::AccSzofwTheorem, 100, 4, 49);
  CHECK(s.batch == 7);
  CHECK(s.epoch_length == 7);
  CHECK(s.correction_batch == 7);
  CHECK(s.anchor_batch == 100);
  CHECK(s.eta0 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(s.coo_radius == doctest::Approx(0.05).epsilon(1e-12));  // d^-1/2 T^-1/2
  CHECK(s.uni_radius == doctest::Approx(0.025).epsilon(1e-12));  // d^-1 T^-1/2
}

TEST_CASE("power-of-one arithmetic on a hand-built schedule") {
  // T = d = n = 1 makes every power formula collapse to 1; the factory
  // rejects that horizon (gamma(0) = 1.5), so check the raw formulas.
  Schedule s;
  s.horizon = 1;
  s.eta0 = std::pow(1.0, -0.5);
  s.coo_radius = std::pow(1.0, -0.5) * std::pow(1.0, -0.5);
  CHECK(s.eta(0) == 1.0);
  CHECK(s.coo_radius == 1.0);
  CHECK(s.gamma(0) == doctest::Approx(1.5));  // why the factory rejects it
}

TEST_CASE("robust classification experiment preset values") {
  const Schedule plain = make_schedule(
      SchedulePreset::ExperimentRobustClassification, 1000000, 123, 32561);
  CHECK(plain.correction_batch == 100);
  CHECK(plain.epoch_length == 100);
  CHECK(plain.anchor_batch == 10000);
  CHECK(plain.gamma_multiplier == 1.0);
  CHECK(plain.eta0 == doctest::Approx(0.001).epsilon(1e-12));

  const Schedule star =
      make_schedule(SchedulePreset::ExperimentRobustClassification, 1000000,
                    123, 32561, /*star_variant=*/true);
  CHECK(star.gamma_multiplier == 6.0);
  CHECK(star.eta0 == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(star.coo_radius ==
        doctest::Approx(std::pow(123.0, -0.5) * 1e-4).epsilon(1e-12));
  CHECK(star.uni_radius == doctest::Approx(1e-4 / 123.0).epsilon(1e-12));
}

TEST_CASE("perturbation experiment preset values") {
  const Schedule s = make_schedule(SchedulePreset::ExperimentUap, 1000, 784, 300);
  CHECK(s.correction_batch == 20);
  CHECK(s.epoch_length == 20);
  CHECK(s.anchor_batch == 300);
  CHECK(s.batch == 20);
  CHECK(s.eta0 == doctest::Approx(std::pow(1000.0, -0.5)));
  CHECK(s.uni_radius == doctest::Approx(std::pow(1000.0, -0.5) / 784.0));
}

TEST_CASE("make_schedule rejects zero arguments") {
  CHECK_THROWS_AS(make_schedule(SchedulePreset::AccSzofwTheorem, 0, 5, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(SchedulePreset::AccSzofwTheorem, 10, 0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(SchedulePreset::AccSzofwTheorem, 10, 5, 0),
                  std::invalid_argument);
}

TEST_CASE("gamma range check gates the horizon") {
  // Theorem presets: gamma(0) = 1.5 T^-1/2 < 1 first holds at T = 3.
  CHECK_THROWS_AS(make_schedule(SchedulePreset::AccSzofwTheorem, 1, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_schedule(SchedulePreset::AccSzofwTheorem, 2, 1, 1),
                  std::invalid_argument);
  CHECK_NOTHROW(make_schedule(SchedulePreset::AccSzofwTheorem, 3, 1, 1));
  // Star experiment multiplier 6: gamma(0) = 9 T^-2/3 < 1 first at T = 28.
  CHECK_THROWS_AS(
      make_schedule(SchedulePreset::ExperimentUap, 27, 10, 10, true),
      std::invalid_argument);
  CHECK_NOTHROW(make_schedule(SchedulePreset::ExperimentUap, 28, 10, 10, true));
}

TEST_CASE("schedule_at values and range checks") {
  const Schedule s = make_schedule(SchedulePreset::AccSzofwTheorem, 100, 4, 16);

  const ScheduleEntry e0 = schedule_at(s, 0);
  CHECK(e0.alpha == 1.0);
  CHECK(e0.theta == doctest::Approx(0.5));
  CHECK(e0.rho == 1.0);  // convention at t = 0

  const ScheduleEntry e5 = schedule_at(s, 5);
  CHECK(e5.alpha == doctest::Approx(1.0 / 6.0));
  CHECK(e5.theta == doctest::Approx(1.0 / 42.0));

  const Schedule star =
      make_schedule(SchedulePreset::AccSzofwStarTheorem, 1000, 100, 1);
  CHECK(schedule_at(star, 8).rho == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(schedule_at(s, -1), std::out_of_range);
  CHECK_THROWS_AS(schedule_at(s, 100), std::out_of_range);
}

TEST_CASE("schedule_at is pure and the sequences decrease") {
  const Schedule s =
      make_schedule(SchedulePreset::ExperimentUap, 500, 12, 200, true);
  for (std::int64_t t : {0, 1, 2, 10, 100, 499}) {
    const ScheduleEntry a = schedule_at(s, t);
    const ScheduleEntry b = schedule_at(s, t);
    CHECK(a.alpha == b.alpha);
    CHECK(a.gamma == b.gamma);
    CHECK(a.rho == b.rho);
    CHECK(a.gamma > 0.0);
    CHECK(a.gamma < 1.0);
  }
  double prev_alpha = 2.0, prev_theta = 2.0;
  for (std::int64_t t = 0; t < 500; ++t) {
    CHECK(s.alpha(t) < prev_alpha);
    CHECK(s.theta(t) < prev_theta);
    prev_alpha = s.alpha(t);
    prev_theta = s.theta(t);
  }
}

TEST_CASE("decaying eta variant follows eta0 (t+1)^-a") {
  Schedule s = make_schedule(SchedulePreset::AccSzofwStarTheorem, 1000, 4, 1);
  s.eta_decays = true;
  CHECK(s.eta(0) == s.eta0);
  CHECK(s.eta(7) == doctest::Approx(s.eta0 * std::pow(8.0, -2.0 / 3.0)));
}
