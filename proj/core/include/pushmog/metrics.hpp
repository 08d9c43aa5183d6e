#pragma once

#include <optional>

#include "pushmog/harness.hpp"

namespace pushmog {

// Objects transported per trip. Throws UndefinedMetric for a run without trips.
double compute_opt(const RunResult& result);

// Modeled wall time of a run: pushes, grasps and bin round trips.
double modeled_seconds(int pushes, int trips, const TimeModel& time);

// Picks per hour under the time model. Throws UndefinedMetric when the run
// has no modeled time.
double estimate_pph(const RunResult& result, const TimeModel& time);

struct PickRates {
    double picks_per_hour = 0.0;
    double trips_per_pick = 0.0;
};

PickRates pick_rates(const RunResult& result, const TimeModel& time);

// Extra seconds per pick the slower policy spends: 3600/pph_slow - 3600/pph_fast.
double pick_time_deficit(double slow_pph, double fast_pph);

// Average bin round-trip time implied by a policy's rates.
double transport_time(const PickRates& rates);

// Extra seconds per transport at which both policies pick equally fast;
// nullopt when the trip rates are equal (no break-even).
std::optional<double> break_even_increment(double deficit_per_pick, double trip_savings_per_pick);

struct BreakEven {
    double deficit_per_pick = 0.0;       // seconds
    double trip_savings_per_pick = 0.0;  // trips
    std::optional<double> additional_transport;  // seconds per transport
    double baseline_transport = 0.0;             // seconds per transport
    std::optional<double> parity_transport;      // baseline + additional
};

// `candidate` is the multi-object policy (fewer trips, slower picks).
BreakEven break_even(const PickRates& candidate, const PickRates& baseline);

BreakEven break_even_transport_time(const RunResult& candidate, const RunResult& baseline,
                                    const TimeModel& time);

}  // namespace pushmog
