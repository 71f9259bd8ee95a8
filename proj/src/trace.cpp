#include "pmbo/trace.hpp"

#include <algorithm>

namespace pmbo {

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::Budget: return "budget";
        case StopReason::Converged: return "converged";
    }
    return "unknown";
}

void RunTrace::append(Point x, double f, SampleOrigin origin) {
    const double best = records.empty() ? f : std::min(records.back().best_so_far, f);
    records.push_back({static_cast<int>(records.size()), std::move(x), f, best, origin});
}

}  // namespace pmbo
