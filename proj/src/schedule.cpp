#include "zofw/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zofw {

double Schedule::eta(std::int64_t t) const {
  if (!eta_decays) return eta0;
  return eta0 * std::pow(static_cast<double>(t + 1), -decay_exponent);
}

double Schedule::rho(std::int64_t t) const {
  if (t <= 0) return 1.0;
  return std::pow(static_cast<double>(t), -decay_exponent);
}

namespace {

std::int64_t ceil_sqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (r > 1 && (r - 1) * (r - 1) >= n) --r;
  while (r * r < n) ++r;
  return r;
}

}  // namespace

Schedule make_schedule(SchedulePreset preset, std::int64_t T, std::int64_t d,
                       std::int64_t n, bool star_variant) {
  if (T < 1) throw std::invalid_argument("make_schedule: T must be >= 1");
  if (d < 1) throw std::invalid_argument("make_schedule: d must be >= 1");
  if (n < 1) throw std::invalid_argument("make_schedule: n must be >= 1");

  const double dT = static_cast<double>(T);
  const double dd = static_cast<double>(d);
  const double inv_sqrt_T = std::pow(dT, -0.5);
  const double T_m23 = std::pow(dT, -2.0 / 3.0);

  Schedule s;
  s.horizon = T;

  const bool star =
      star_variant || preset == SchedulePreset::AccSzofwStarTheorem;
  if (star) {
    s.eta0 = T_m23;
    s.coo_radius = std::pow(dd, -0.5) * T_m23;
    s.uni_radius = T_m23 / dd;
    s.decay_exponent = 2.0 / 3.0;
  } else {
    s.eta0 = inv_sqrt_T;
    s.coo_radius = std::pow(dd, -0.5) * inv_sqrt_T;
    s.uni_radius = inv_sqrt_T / dd;
  }

  switch (preset) {
    case SchedulePreset::AccSzofwTheorem: {
      const std::int64_t root_n = ceil_sqrt(n);
      s.epoch_length = root_n;
      s.batch = root_n;
      s.correction_batch = root_n;
      s.anchor_batch = T;
      break;
    }
    case SchedulePreset::AccSzofwStarTheorem:
      break;  // single sample per iteration, batches stay at 1
    case SchedulePreset::ExperimentUap:
      s.epoch_length = 20;
      s.correction_batch = 20;
      s.batch = 20;
      s.anchor_batch = 300;
      if (star) s.gamma_multiplier = 6.0;
      break;
    case SchedulePreset::ExperimentRobustClassification:
      s.epoch_length = 100;
      s.correction_batch = 100;
      s.batch = 100;
      s.anchor_batch = 10000;
      if (star) s.gamma_multiplier = 6.0;
      break;
  }

  validate_schedule(s);
  return s;
}

void validate_schedule(const Schedule& s) {
  if (s.horizon < 1) throw std::invalid_argument("schedule: T must be >= 1");
  if (s.epoch_length < 1 || s.batch < 1 || s.anchor_batch < 1 ||
      s.correction_batch < 1) {
    throw std::invalid_argument("schedule: batch sizes and q must be >= 1");
  }
  if (!(s.eta0 > 0.0)) throw std::invalid_argument("schedule: eta0 must be > 0");
  if (!(s.coo_radius > 0.0) || !(s.uni_radius > 0.0)) {
    throw std::invalid_argument("schedule: smoothing radii must be > 0");
  }
  if (!(s.decay_exponent > 0.0) || s.decay_exponent > 1.0) {
    throw std::invalid_argument("schedule: decay exponent must be in (0, 1]");
  }
  if (!(s.gamma_multiplier > 0.0)) {
    throw std::invalid_argument("schedule: gamma multiplier must be > 0");
  }
  // gamma(t) decreases in t (theta decreases, eta non-increasing), so t = 0
  // bounds the whole horizon.
  const double g0 = s.gamma(0);
  if (!(g0 > 0.0) || !(g0 < 1.0)) {
    throw std::invalid_argument(
        "schedule: gamma(0) = " + std::to_string(g0) +
        " outside (0, 1); pick a larger horizon or smaller multiplier");
  }
}

ScheduleEntry schedule_at(const Schedule& s, std::int64_t t) {
  if (t < 0 || t >= s.horizon) {
    throw std::out_of_range("schedule_at: t = " + std::to_string(t) +
                            " outside [0, " + std::to_string(s.horizon) + ")");
  }
  return ScheduleEntry{s.alpha(t), s.theta(t), s.gamma(t), s.eta(t), s.rho(t)};
}

}  // namespace zofw
