#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "eigenbar/persistence.hpp"
#include "eigenbar/quadrature.hpp"

namespace eigenbar {

/// Number of connected components of the PL level set {f = t}.
/// Throws RegularValueViolation when t equals a vertex value.
std::size_t banach_indicatrix(const ScalarField& field, double t);

/// beta(t, f) as a step function: constant on each open gap between consecutive
/// distinct vertex values, zero outside [min f, max f].
struct IndicatrixProfile {
    std::vector<double> breakpoints;  // distinct vertex values, ascending
    std::vector<std::size_t> counts;  // counts[i] on (breakpoints[i], breakpoints[i+1])

    // Throws RegularValueViolation at a breakpoint.
    std::size_t at(double t) const;
};

IndicatrixProfile indicatrix_profile(const ScalarField& field);

/// Integral of u(t) beta(t, f) dt over the real line.
double weighted_indicatrix_integral(const IndicatrixProfile& profile, const WeightFunction& u);
double weighted_indicatrix_integral(const ScalarField& field, const WeightFunction& u);

struct IndicatrixViolation {
    double t = 0.0;
    std::size_t lhs = 0;
    std::size_t beta = 0;
};

struct IndicatrixCheck {
    std::size_t samples = 0;
    std::size_t equalities = 0;  // samples with lhs == beta
    std::vector<IndicatrixViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Left-hand side of the level-set inequality at t: indicator of (min f, max f]
/// (closed) or (min f, 0] (boundary) plus the number of finite degree-0 and degree-1
/// bars containing t.
std::size_t indicatrix_lhs(const Barcode& barcode, double t);

/// Compares indicatrix_lhs with beta(t, f) at each sample.
IndicatrixCheck check_indicatrix_inequality(const ScalarField& field, const Barcode& barcode,
                                            const std::vector<double>& samples);

/// `count` uniform values in (min f, max f) that avoid every vertex value.
std::vector<double> sample_regular_values(const ScalarField& field, std::size_t count, std::uint64_t seed);

}  // namespace eigenbar
