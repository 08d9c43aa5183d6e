#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pushmog/harness.hpp"

namespace pushmog {

inline constexpr std::string_view kTraceSchema = "push_mog_trace/1";

// Run trace document: metrics, trips, every push plan with its outcome,
// every grasp, plus the initial and final scenes so the trace can be replayed.
std::string trace_to_json(const RunResult& result);

struct TraceDocument {
    PolicyKind policy = PolicyKind::push_mog;
    std::uint64_t seed = 0;
    Scene initial_scene;
    Scene final_scene;
    std::vector<Event> events;
};

// Throws ValidationError on malformed documents.
TraceDocument load_trace(std::string_view text);

}  // namespace pushmog
