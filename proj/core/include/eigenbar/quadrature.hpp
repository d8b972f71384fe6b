#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eigenbar {

/// Adaptive Simpson quadrature with absolute tolerance `tol` over [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-9,
                        int max_depth = 48);

/// A non-negative weight u on the real line (or on a bounded domain for tables).
class WeightFunction {
public:
    static WeightFunction one();
    // u(t) = c0 + c1 t + c2 t^2 + ...
    static WeightFunction polynomial(std::vector<double> coefficients);
    // Piecewise-linear through (t, u) nodes with strictly increasing t.
    static WeightFunction table(std::vector<std::pair<double, double>> nodes);
    static WeightFunction custom(std::function<double(double)> evaluator,
                                 std::optional<std::function<double(double)>> antiderivative = std::nullopt,
                                 std::string name = "custom");

    double operator()(double t) const;
    // Closed form when an antiderivative is known, adaptive Simpson otherwise.
    double integral(double a, double b) const;
    // Max of u on [a, b]: exact for constants and tables, endpoints plus 4097 samples otherwise.
    double max_on(double a, double b) const;
    // Throws InvalidArgument when u is negative somewhere on [a, b] (sampled) or the
    // interval leaves the domain.
    void check_nonnegative(double a, double b) const;

    const std::string& name() const { return name_; }
    void set_tolerance(double tol) { tol_ = tol; }

private:
    WeightFunction() = default;
    void check_domain(double a, double b) const;

    std::function<double(double)> eval_;
    std::optional<std::function<double(double)>> antiderivative_;
    std::vector<std::pair<double, double>> nodes_;  // tables only
    bool constant_ = false;
    double lo_ = -std::numeric_limits<double>::infinity();
    double hi_ = std::numeric_limits<double>::infinity();
    double tol_ = 1e-9;
    std::string name_;
};

/// Parses `one`, `poly:c0,c1,...` or `table:<file.csv>` (CSV with header `t,u`).
WeightFunction parse_weight_spec(const std::string& spec);
WeightFunction read_weight_table(const std::filesystem::path& path);

}  // namespace eigenbar
