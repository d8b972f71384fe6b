#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <tuple>

#include "eigenbar/persistence.hpp"

namespace eigenbar {

/// Barcode with integer multiplicities on canonical (degree, infinite, birth, death)
/// keys; degrees are unbounded so n-fold products fit.
class GradedBarcode {
public:
    using Key = std::tuple<int, bool, double, double>;  // death is 0 for infinite bars

    void add(const Bar& bar, std::uint64_t multiplicity = 1);
    const std::map<Key, std::uint64_t>& entries() const { return entries_; }

    static Bar bar_of(const Key& key);
    static GradedBarcode from_barcode(const Barcode& barcode);
    // Expands multiplicities; boundary flag false.
    Barcode to_barcode() const;

    std::uint64_t infinite_count() const;
    std::uint64_t finite_count() const;
    std::uint64_t count(int degree, bool infinite) const;
    int top_degree() const;

    bool operator==(const GradedBarcode&) const = default;

private:
    std::map<Key, std::uint64_t> entries_;
};

/// Barcode of f(x) + h(y) on a product from the barcodes of f and h.
GradedBarcode barcode_product(const GradedBarcode& a, const GradedBarcode& b);

/// Barcode of sin(l x) on the circle.
GradedBarcode circle_sine_barcode(int l);

/// n-fold product of circle_sine_barcode(l): sin(l x_1) + ... + sin(l x_n) on T^n.
GradedBarcode torus_sum_barcode(int n, int l);

/// Closed form 2n + (2l)^n - 2^n of Phi_1 for the function above.
double torus_phi1(int n, int l);

struct TorusCensus {
    std::uint64_t infinite = 0;  // 2^n
    std::uint64_t finite = 0;    // ((2l)^n - 2^n) / 2
};
TorusCensus torus_census(int n, int l);

/// Phi_1 of the normalised sum above as a function of lambda = l^2:
/// sqrt(2) / (n (2 pi)^(n/2)) * (2^n l^n + 2n - 2^n).
double rescaled_phi1(int n, int l);
double rescaled_phi1_leading(int n);   // A_n
double rescaled_phi1_constant(int n);  // B_n

}  // namespace eigenbar
