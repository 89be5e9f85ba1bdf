#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sizer {

/// Which estimator the downstream smoother targets. The uncensored modes
/// (Density, Hazard) reject samples that contain censored observations.
enum class EstimatorMode { Density, Hazard, CensoredDensity, CensoredHazard };

/// How survival-function denominators are evaluated at the data points.
/// LeftLimit uses D(x-) and is finite everywhere; PaperExact uses D(x) and
/// drops terms whose denominator is exactly zero.
enum class DenominatorConvention { LeftLimit, PaperExact };

/// Which product-limit curve km_survival builds: the event (lifetime)
/// survival curve or the censoring survival curve.
enum class SurvivalTarget { Event, Censoring };

bool is_censored_mode(EstimatorMode mode);
bool is_hazard_mode(EstimatorMode mode);
const char* mode_name(EstimatorMode mode);

/// Right-censored observations (X_i, delta_i). delta=1 marks an event,
/// delta=0 a censoring. Immutable after construction.
struct SurvivalSample {
  std::vector<double> times;
  std::vector<std::uint8_t> events;
  std::size_t n = 0;
  std::size_t n_events = 0;

  SurvivalSample(std::vector<double> times_, std::vector<std::uint8_t> events_);
};

/// Indices of the sample sorted by time; events precede censorings at tied
/// times, original order preserved otherwise (stable).
std::vector<std::size_t> sorted_indices(const SurvivalSample& sample);

/// Right-continuous, non-increasing step function starting at 1.
/// values[k] holds the function value on [jump_times[k], jump_times[k+1]).
struct StepSurvival {
  std::vector<double> jump_times;
  std::vector<double> values;
  double initial_value = 1.0;

  double operator()(double x) const;
  double left_limit(double x) const;
};

/// Product-limit (Kaplan-Meier) survival curve. target=Event estimates the
/// lifetime survival and is forced to 0 past the largest observation;
/// target=Censoring estimates the censoring survival.
StepSurvival km_survival(const SurvivalSample& sample, SurvivalTarget target);

/// 1 - F_n, the survival form of the empirical cdf.
StepSurvival empirical_survival(const SurvivalSample& sample);

/// Per-observation weights w_i = delta_i / D(X_i), in input order.
/// `dropped` counts observations discarded for a zero denominator
/// (PaperExact convention only).
struct ObservationWeights {
  std::vector<double> weights;
  std::size_t dropped = 0;
};

ObservationWeights observation_weights(const SurvivalSample& sample, EstimatorMode mode,
                                       DenominatorConvention convention);

}  // namespace sizer
