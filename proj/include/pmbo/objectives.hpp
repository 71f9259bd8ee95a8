#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmbo/point.hpp"

namespace pmbo {

struct KnownOptimum {
    Point x;   // native coordinates
    double f = 0.0;
};

/// An analytic benchmark objective on a native box, exposed to the
/// optimizers through an affine rescaling onto the unit cube [-1,1]^m.
class Objective {
public:
    Objective(std::string name, std::vector<std::pair<double, double>> native_box,
              std::function<double(const Point&)> evaluator,
              std::optional<KnownOptimum> known_optimum = std::nullopt);

    const std::string& name() const { return name_; }
    int dimension() const { return static_cast<int>(native_box_.size()); }
    const std::vector<std::pair<double, double>>& native_box() const { return native_box_; }
    const std::optional<KnownOptimum>& known_optimum() const { return known_optimum_; }

    Point to_native(const Point& unit) const;
    Point to_unit(const Point& native) const;

    double evaluate_native(const Point& native) const;
    double evaluate_unit(const Point& unit) const { return evaluate_native(to_native(unit)); }

private:
    std::string name_;
    std::vector<std::pair<double, double>> native_box_;
    std::function<double(const Point&)> evaluator_;
    std::optional<KnownOptimum> known_optimum_;
};

/// f(x,y) = (x^2 + y - 11)^2 + (x + y^2 - 7)^2, four global minima at 0.
double himmelblau(const Point& x);

/// 4-term exponential Hartmann function on [0,1]^3, global minimum near
/// -3.86278.
double hartmann3(const Point& x);

/// sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2 for m >= 2.
double rosenbrock(const Point& x);

/// Objectives addressable by name: himmelblau2, hartmann3, rosenbrock6,
/// rosenbrockN:<m>. Known optima are re-verified on construction.
Objective make_objective(const std::string& name);

}  // namespace pmbo
