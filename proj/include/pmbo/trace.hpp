#pragma once

#include <optional>
#include <vector>

#include "pmbo/point.hpp"
#include "pmbo/surrogate.hpp"

namespace pmbo {

struct TraceRecord {
    int eval_index = 0;
    Point x;  // unit-cube coordinates
    double f = 0.0;
    double best_so_far = 0.0;
    SampleOrigin origin = SampleOrigin::Seed;
};

enum class StopReason { Budget, Converged };

const char* stop_reason_name(StopReason r);

/// Per-evaluation log of one optimizer run; best_so_far is non-increasing.
struct RunTrace {
    std::vector<TraceRecord> records;
    StopReason reason = StopReason::Budget;
    std::optional<PolynomialSurrogate> final_surrogate;

    std::size_t evaluations() const { return records.size(); }
    double final_best() const { return records.back().best_so_far; }

    /// Appends an evaluation, carrying the running best forward.
    void append(Point x, double f, SampleOrigin origin);
};

}  // namespace pmbo
