#include "pushmog/metrics.hpp"

#include "pushmog/error.hpp"

namespace pushmog {

double compute_opt(const RunResult& result) {
    if (result.trips.empty()) {
        throw UndefinedMetric("objects per trip is undefined for a run without trips");
    }
    int objects = 0;
    for (const auto& t : result.trips) {
        objects += t.objects_transported;
    }
    return static_cast<double>(objects) / static_cast<double>(result.trips.size());
}

double modeled_seconds(int pushes, int trips, const TimeModel& time) {
    return pushes * time.t_push + trips * (time.t_grasp + time.t_transport);
}

double estimate_pph(const RunResult& result, const TimeModel& time) {
    const double seconds = modeled_seconds(result.total_pushes, static_cast<int>(result.trips.size()), time);
    if (!(seconds > 0.0)) {
        throw UndefinedMetric("picks per hour is undefined for a run with no modeled time");
    }
    return 3600.0 * result.objects_transported / seconds;
}

PickRates pick_rates(const RunResult& result, const TimeModel& time) {
    if (result.objects_transported == 0) {
        throw UndefinedMetric("pick rates are undefined for a run that moved nothing");
    }
    return {estimate_pph(result, time),
            static_cast<double>(result.trips.size()) / result.objects_transported};
}

double pick_time_deficit(double slow_pph, double fast_pph) {
    if (!(slow_pph > 0.0) || !(fast_pph > 0.0)) {
        throw UndefinedMetric("pick rates must be positive");
    }
    return 3600.0 / slow_pph - 3600.0 / fast_pph;
}

double transport_time(const PickRates& rates) {
    const double transports_per_hour = rates.picks_per_hour * rates.trips_per_pick;
    if (!(transports_per_hour > 0.0)) {
        throw UndefinedMetric("transport time is undefined without transports");
    }
    return 3600.0 / transports_per_hour;
}

std::optional<double> break_even_increment(double deficit_per_pick, double trip_savings_per_pick) {
    if (trip_savings_per_pick == 0.0) {
        return std::nullopt;
    }
    return deficit_per_pick / trip_savings_per_pick;
}

BreakEven break_even(const PickRates& candidate, const PickRates& baseline) {
    BreakEven b;
    b.deficit_per_pick = pick_time_deficit(candidate.picks_per_hour, baseline.picks_per_hour);
    b.trip_savings_per_pick = baseline.trips_per_pick - candidate.trips_per_pick;
    b.additional_transport = break_even_increment(b.deficit_per_pick, b.trip_savings_per_pick);
    b.baseline_transport = transport_time(baseline);
    if (b.additional_transport) {
        b.parity_transport = b.baseline_transport + *b.additional_transport;
    }
    return b;
}

BreakEven break_even_transport_time(const RunResult& candidate, const RunResult& baseline,
                                    const TimeModel& time) {
    return break_even(pick_rates(candidate, time), pick_rates(baseline, time));
}

}  // namespace pushmog
