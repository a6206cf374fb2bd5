#ifndef ZOFW_SCHEDULE_HPP
#define ZOFW_SCHEDULE_HPP

#include <cstdint>

namespace zofw {

/// Named parameterisations:
///  - AccSzofwTheorem:      eta_t = T^-1/2, mu = d^-1/2 T^-1/2,
///                          beta = d^-1 T^-1/2, b = q = ceil(sqrt(n)),
///                          anchor batch T.
///  - AccSzofwStarTheorem:  eta_t = T^-2/3, a = 2/3, mu = d^-1/2 T^-2/3,
///                          beta = d^-1 T^-2/3.
///  - ExperimentUap:        q = b2 = 20, b1 = 300, b = 20.
///  - ExperimentRobustClassification: q = b2 = 100, b1 = 10000, b = 100.
/// Experiment presets use eta_t = T^-1/2 and gamma multiplier 1; requested
/// with star_variant they switch to eta_t = T^-2/3, a = 2/3 and gamma
/// multiplier 6.
enum class SchedulePreset {
  AccSzofwTheorem,
  AccSzofwStarTheorem,
  ExperimentUap,
  ExperimentRobustClassification,
};

/// Step-size / weight / batch sequences keyed by iteration t and horizon T.
/// All sequences are evaluated lazily by formula, so a T = 1e6 schedule
/// costs no memory. The sequences themselves:
///   alpha(t) = 1/(t+1)
///   theta(t) = 1/((t+1)(t+2))
///   gamma(t) = gamma_multiplier * (1 + theta(t)) * eta(t)
///   eta(t)   = eta0, or eta0 * (t+1)^-a when eta_decays is set
///   rho(t)   = t^-a for t >= 1, rho(0) = 1 so the recursive estimator
///              degenerates to the plain estimate on its first step
struct Schedule {
  std::int64_t horizon = 0;          // T
  std::int64_t epoch_length = 1;     // anchor period q
  std::int64_t batch = 1;            // finite-sum correction batch b
  std::int64_t anchor_batch = 1;     // stochastic anchor batch b1
  std::int64_t correction_batch = 1; // stochastic correction batch b2
  double decay_exponent = 2.0 / 3.0; // a in (0, 1]
  double eta0 = 0.0;
  double coo_radius = 0.0;           // mu
  double uni_radius = 0.0;           // beta
  double gamma_multiplier = 1.0;     // 1 under analysis presets, up to 6 in experiment presets
  bool eta_decays = false;

  double alpha(std::int64_t t) const { return 1.0 / static_cast<double>(t + 1); }
  double theta(std::int64_t t) const {
    return 1.0 / (static_cast<double>(t + 1) * static_cast<double>(t + 2));
  }
  double eta(std::int64_t t) const;
  double gamma(std::int64_t t) const {
    return gamma_multiplier * (1.0 + theta(t)) * eta(t);
  }
  double rho(std::int64_t t) const;
};

struct ScheduleEntry {
  double alpha;
  double theta;
  double gamma;
  double eta;
  double rho;
};

/// Builds the preset schedule and validates it: rejects zero T/d/n and any
/// combination whose gamma(0) leaves (0, 1) (gamma is decreasing in t, so
/// t = 0 is the binding check). The gamma check is what restricts the
/// theorem presets to T >= 3 and the star experiment presets to T >= 28.
Schedule make_schedule(SchedulePreset preset, std::int64_t T, std::int64_t d,
                       std::int64_t n, bool star_variant = false);

/// Throws std::invalid_argument unless the schedule's fixed parameters are
/// positive and gamma stays inside (0, 1) over the whole horizon.
void validate_schedule(const Schedule& s);

/// The five per-iteration scalars at t. Throws std::out_of_range unless
/// 0 <= t < T.
ScheduleEntry schedule_at(const Schedule& s, std::int64_t t);

}  // namespace zofw

#endif  // ZOFW_SCHEDULE_HPP
