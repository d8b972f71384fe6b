#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eigenbar/korovkin.hpp"
#include "eigenbar/persistence.hpp"

namespace eigenbar {

/// Order-m modulus of an n x n periodic grid field on the flat torus: the largest
/// |sum_j (-1)^(m-j) C(m,j) f(x + j t)| over grid points x and lattice shifts t with
/// |t| <= delta. A lower bound for the continuous modulus.
/// Throws InvalidArgument if the grid spacing exceeds delta / 4 (delta > 0).
double modulus(std::span<const double> grid, int n, double delta, int order);
double modulus(const ScalarField& field, double delta, int order);

/// L2 norm of a grid field on the torus by the rectangle rule.
double grid_l2_norm(std::span<const double> grid, int n);

struct AverageBarTerm {
    std::size_t k = 0;  // 0 for the full functional
    double lhs = 0.0;
    double rhs = 0.0;
    double delta = 0.0;
    bool resolved = true;  // false when delta is below the grid's resolution limit
    bool satisfied = false;
};

struct AverageBarCheck {
    double norm = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
    std::size_t finite_bars = 0;
    // Average bar length against C1 ||f|| + 8 omega_1(f, C0 / sqrt(|B'|)); absent
    // (k = 0, resolved = false) when there are no finite bars.
    AverageBarTerm full;
    std::vector<AverageBarTerm> truncated;  // Phi_{1,k}/(k+1) against C1 ||f|| + 8 omega_1(f, C0/sqrt(k))
};

AverageBarCheck average_bar_length_check(const ScalarField& field, const Barcode& barcode, double c1,
                                         const KorovkinKernel& kernel,
                                         const std::vector<std::size_t>& k_schedule = {1, 2, 4, 8});

}  // namespace eigenbar
