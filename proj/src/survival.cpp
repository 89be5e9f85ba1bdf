#include "sizer/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sizer {

bool is_censored_mode(EstimatorMode mode) {
  return mode == EstimatorMode::CensoredDensity || mode == EstimatorMode::CensoredHazard;
}

bool is_hazard_mode(EstimatorMode mode) {
  return mode == EstimatorMode::Hazard || mode == EstimatorMode::CensoredHazard;
}

const char* mode_name(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::Density: return "density";
    case EstimatorMode::Hazard: return "hazard";
    case EstimatorMode::CensoredDensity: return "censored-density";
    case EstimatorMode::CensoredHazard: return "censored-hazard";
  }
  return "?";
}

SurvivalSample::SurvivalSample(std::vector<double> times_, std::vector<std::uint8_t> events_)
    : times(std::move(times_)), events(std::move(events_)) {
  if (times.size() != events.size())
    throw std::invalid_argument("survival sample: times and events lengths differ");
  n = times.size();
  if (n < 2) throw std::invalid_argument("survival sample: need at least 2 observations");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(times[i]) || times[i] <= 0.0)
      throw std::invalid_argument("survival sample: time at index " + std::to_string(i) +
                                  " is not finite and positive");
    if (events[i] > 1)
      throw std::invalid_argument("survival sample: event flag at index " + std::to_string(i) +
                                  " is not 0/1");
  }
  n_events = static_cast<std::size_t>(std::count(events.begin(), events.end(), std::uint8_t{1}));
  if (n_events == 0)
    throw std::invalid_argument("survival sample: no events (all observations censored)");
}

std::vector<std::size_t> sorted_indices(const SurvivalSample& sample) {
  std::vector<std::size_t> order(sample.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sample.times[a] != sample.times[b]) return sample.times[a] < sample.times[b];
    return sample.events[a] > sample.events[b];  // events first at ties
  });
  return order;
}

double StepSurvival::operator()(double x) const {
  auto it = std::upper_bound(jump_times.begin(), jump_times.end(), x);
  if (it == jump_times.begin()) return initial_value;
  return values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

double StepSurvival::left_limit(double x) const {
  auto it = std::lower_bound(jump_times.begin(), jump_times.end(), x);
  if (it == jump_times.begin()) return initial_value;
  return values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

namespace {

// Appends (t, v), replacing the previous entry when t repeats (ties collapse
// to the value after the whole tie group).
void push_jump(StepSurvival& s, double t, double v) {
  if (!s.jump_times.empty() && s.jump_times.back() == t) {
    s.values.back() = v;
  } else {
    s.jump_times.push_back(t);
    s.values.push_back(v);
  }
}

}  // namespace

StepSurvival km_survival(const SurvivalSample& sample, SurvivalTarget target) {
  const auto order = sorted_indices(sample);
  const double n = static_cast<double>(sample.n);

  // Product over active indices of (n-i)/(n-i+1), where "active" means the
  // exponent delta (Event) or 1-delta (Censoring) is 1. Maximal runs of
  // consecutive active indices telescope to a single division (n-b)/(n-a+1),
  // so all-uncensored event curves evaluate to (n-i)/n exactly.
  StepSurvival out;
  double base = 1.0;       // product over completed runs
  double run_start = 0.0;  // 1-based start of the open run, 0 = none
  double value = 1.0;

  for (std::size_t k = 0; k < sample.n; ++k) {
    const double i = static_cast<double>(k + 1);
    const bool active = (sample.events[order[k]] == 1) == (target == SurvivalTarget::Event);
    if (active) {
      if (run_start == 0.0) run_start = i;
      value = base * ((n - i) / (n - run_start + 1.0));
    } else if (run_start != 0.0) {
      base = value;
      run_start = 0.0;
    }
    push_jump(out, sample.times[order[k]], value);
  }

  if (target == SurvivalTarget::Event && value > 0.0) {
    // The event curve is defined as 0 strictly past X_(n); when the largest
    // observation is censored the product stays positive there, so the drop
    // lands on the next representable point.
    push_jump(out, std::nextafter(out.jump_times.back(), std::numeric_limits<double>::infinity()),
              0.0);
  }
  return out;
}

StepSurvival empirical_survival(const SurvivalSample& sample) {
  std::vector<double> sorted(sample.times);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sample.n);

  StepSurvival out;
  for (std::size_t k = 0; k < sample.n; ++k) {
    const bool last_of_tie = (k + 1 == sample.n) || sorted[k + 1] != sorted[k];
    if (last_of_tie) push_jump(out, sorted[k], (n - static_cast<double>(k + 1)) / n);
  }
  return out;
}

ObservationWeights observation_weights(const SurvivalSample& sample, EstimatorMode mode,
                                       DenominatorConvention convention) {
  if (!is_censored_mode(mode) && sample.n_events != sample.n)
    throw std::invalid_argument(std::string(mode_name(mode)) +
                                " mode requires fully uncensored data");

  ObservationWeights out;
  out.weights.assign(sample.n, 0.0);
  if (mode == EstimatorMode::Density) {
    out.weights.assign(sample.n, 1.0);
    return out;
  }

  // Denominator D per mode: 1-F_n (Hazard), Gbar_n (CensoredDensity),
  // or Lbar_n = Fbar_n * Gbar_n (CensoredHazard).
  StepSurvival first = mode == EstimatorMode::Hazard ? empirical_survival(sample)
                                                     : km_survival(sample, SurvivalTarget::Event);
  StepSurvival censoring;
  if (is_censored_mode(mode)) censoring = km_survival(sample, SurvivalTarget::Censoring);

  auto denominator = [&](double x) {
    double d = 1.0;
    if (mode != EstimatorMode::CensoredDensity)
      d *= convention == DenominatorConvention::LeftLimit ? first.left_limit(x) : first(x);
    if (is_censored_mode(mode))
      d *= convention == DenominatorConvention::LeftLimit ? censoring.left_limit(x) : censoring(x);
    return d;
  };

  bool any_positive = false;
  for (std::size_t i = 0; i < sample.n; ++i) {
    if (sample.events[i] == 0) continue;
    const double d = denominator(sample.times[i]);
    if (d <= 0.0) {
      ++out.dropped;
      continue;
    }
    out.weights[i] = 1.0 / d;
    any_positive = true;
  }
  if (!any_positive)
    throw std::runtime_error("observation weights: every term dropped (all denominators zero)");
  return out;
}

}  // namespace sizer
