#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "eigenbar/persistence.hpp"
#include "eigenbar/quadrature.hpp"

namespace eigenbar {

struct FunctionalReport {
    double value = 0.0;
    // Integral of u over (min, max] on closed surfaces, over (min, 0] with boundary.
    double range_term = 0.0;
    // One entry per finite bar, in barcode order; bar_index points into Barcode::bars.
    std::vector<double> bar_terms;
    std::vector<int> bar_indices;
    // 2(|B'|+1) max u closed, (2|B'|+1) max u with boundary; max over [min, max].
    double lipschitz_constant = 0.0;
    std::size_t finite_bars = 0;
};

/// Weighted total bar length: range term plus the u-integral of every finite bar.
/// Endpoints of the range are the smallest and largest bar endpoints.
FunctionalReport phi_u(const Barcode& barcode, const WeightFunction& u);

/// Range term plus the k largest bar integrals; ties ordered by (birth, death).
double phi_u_k(const Barcode& barcode, const WeightFunction& u, std::size_t k);

// Lipschitz constant of phi_u_k: (2k+2) max u closed, (2k+1) max u with boundary.
double truncated_lipschitz_constant(std::size_t k, bool boundary, double max_u);

/// Sum over distinct endpoint values of the number of bars of length >= delta that
/// end or start there. Infinite bars count as arbitrarily long with one endpoint.
std::size_t n_delta(const Barcode& barcode, double delta);

struct SortWitness {
    std::vector<double> lengths;  // descending, all >= eps
    std::size_t scanned = 0;      // N: bars inspected in the filtering pass
    std::size_t kept = 0;         // K
    std::size_t comparisons = 0;  // comparator calls made by the sort
};

/// One pass keeps finite bars of length >= eps, then only those are merge-sorted.
SortWitness sort_significant_bars(const Barcode& barcode, double eps);

/// Lower bound for the C0-distance from f to the eigenfunction span, given kappa.
/// Negative values carry no information.
double approx_lower_bound(const Barcode& barcode, double lambda, double kappa);

/// Circle version in terms of total variation and critical-point count.
double approx_lower_bound_circle(double total_variation, std::size_t critical_points, double lambda);

/// Smallest lambda for which N finite bars of length >= L + 2 eps can be eps-approximated.
double eigenvalue_lower_bound(std::size_t bars, double length, double kappa);

struct NonMorseResult {
    double value = 0.0;
    std::size_t k = 0;  // truncation level at which the schedule stopped
    std::size_t finite_bars = 0;
};

/// Phi_u of a field that may have ties: perturb, then grow k until the increment of
/// phi_u_k drops below tol or every bar is included.
NonMorseResult phi_nonmorse(const ScalarField& field, const WeightFunction& u, std::uint64_t seed = 0,
                            double tol = 1e-9);

}  // namespace eigenbar
