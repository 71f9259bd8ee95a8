#include "pmbo/objectives.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pmbo {

Objective::Objective(std::string name, std::vector<std::pair<double, double>> native_box,
                     std::function<double(const Point&)> evaluator,
                     std::optional<KnownOptimum> known_optimum)
    : name_(std::move(name)),
      native_box_(std::move(native_box)),
      evaluator_(std::move(evaluator)),
      known_optimum_(std::move(known_optimum)) {
    if (native_box_.empty()) throw std::invalid_argument("Objective: empty native box");
    for (const auto& [lo, hi] : native_box_) {
        if (!(lo < hi)) throw std::invalid_argument("Objective: need lo < hi per dimension");
    }
    if (known_optimum_) {
        const double reported = evaluator_(known_optimum_->x);
        if (!(std::abs(reported - known_optimum_->f) <= 1e-6))
            throw std::logic_error("Objective: known optimum failed verification for " + name_);
    }
}

Point Objective::to_native(const Point& unit) const {
    if (unit.size() != native_box_.size())
        throw std::invalid_argument("to_native: dimension mismatch");
    Point native(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const auto& [lo, hi] = native_box_[i];
        native[i] = lo + (unit[i] + 1.0) * (hi - lo) / 2.0;
    }
    return native;
}

Point Objective::to_unit(const Point& native) const {
    if (native.size() != native_box_.size())
        throw std::invalid_argument("to_unit: dimension mismatch");
    Point unit(native.size());
    for (std::size_t i = 0; i < native.size(); ++i) {
        const auto& [lo, hi] = native_box_[i];
        unit[i] = 2.0 * (native[i] - lo) / (hi - lo) - 1.0;
    }
    return unit;
}

double Objective::evaluate_native(const Point& native) const {
    if (native.size() != native_box_.size())
        throw std::invalid_argument("evaluate_native: dimension mismatch");
    return evaluator_(native);
}

double himmelblau(const Point& x) {
    if (x.size() != 2) throw std::invalid_argument("himmelblau: expects 2 coordinates");
    const double a = x[0] * x[0] + x[1] - 11.0;
    const double b = x[0] + x[1] * x[1] - 7.0;
    return a * a + b * b;
}

double hartmann3(const Point& x) {
    if (x.size() != 3) throw std::invalid_argument("hartmann3: expects 3 coordinates");
    static constexpr std::array<double, 4> alpha = {1.0, 1.2, 3.0, 3.2};
    static constexpr std::array<std::array<double, 3>, 4> a = {{
        {3.0, 10.0, 30.0},
        {0.1, 10.0, 35.0},
        {3.0, 10.0, 30.0},
        {0.1, 10.0, 35.0},
    }};
    static constexpr std::array<std::array<double, 3>, 4> p = {{
        {0.3689, 0.1170, 0.2673},
        {0.4699, 0.4387, 0.7470},
        {0.1091, 0.8732, 0.5547},
        {0.0381, 0.5743, 0.8828},
    }};
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            const double d = x[j] - p[i][j];
            inner += a[i][j] * d * d;
        }
        sum += alpha[i] * std::exp(-inner);
    }
    return -sum;
}

double rosenbrock(const Point& x) {
    if (x.size() < 2) throw std::invalid_argument("rosenbrock: needs at least 2 coordinates");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

namespace {

Objective make_rosenbrock(int dimension) {
    if (dimension < 2) throw std::invalid_argument("rosenbrock objective: dimension must be >= 2");
    std::vector<std::pair<double, double>> box(static_cast<std::size_t>(dimension),
                                               {-2.048, 2.048});
    return Objective("rosenbrock" + std::to_string(dimension), std::move(box), rosenbrock,
                     KnownOptimum{Point(static_cast<std::size_t>(dimension), 1.0), 0.0});
}

}  // namespace

Objective make_objective(const std::string& name) {
    if (name == "himmelblau2")
        return Objective("himmelblau2", {{-5.0, 5.0}, {-5.0, 5.0}}, himmelblau,
                         KnownOptimum{{3.0, 2.0}, 0.0});
    if (name == "hartmann3")
        return Objective("hartmann3", {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, hartmann3,
                         KnownOptimum{{0.114589, 0.555649, 0.852547}, -3.862780});
    if (name == "rosenbrock6") return make_rosenbrock(6);
    if (name.rfind("rosenbrockN:", 0) == 0) {
        const std::string suffix = name.substr(12);
        std::size_t consumed = 0;
        int dimension = 0;
        try {
            dimension = std::stoi(suffix, &consumed);
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown objective: " + name);
        }
        if (consumed != suffix.size())
            throw std::invalid_argument("unknown objective: " + name);
        return make_rosenbrock(dimension);
    }
    throw std::invalid_argument("unknown objective: " + name);
}

}  // namespace pmbo
