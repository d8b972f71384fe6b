#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eigenbar/persistence.hpp"

namespace eigenbar {

/// A partial bijection between the bars of two barcodes. Indices refer to
/// `Barcode::bars`; unmatched finite bars are listed as deleted (matched to a
/// zero-length interval).
struct Matching {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> deleted_a;
    std::vector<int> deleted_b;
    // Largest endpoint displacement or half-length of a deleted bar.
    double epsilon = 0.0;
};

// max(|birth difference|, |death difference|); infinite bars only pair with infinite bars.
double pair_cost(const Bar& a, const Bar& b);

/// An eps-matching between `a` and `b`, ignoring degrees, or nullopt if none exists.
std::optional<Matching> epsilon_matching(const Barcode& a, const Barcode& b, double eps);

/// Exact bottleneck distance; +inf when the infinite-bar counts differ.
double bottleneck_distance(const Barcode& a, const Barcode& b);

struct BottleneckResult {
    double distance = 0.0;
    std::optional<Matching> matching;  // empty when the distance is infinite
};

BottleneckResult bottleneck_with_matching(const Barcode& a, const Barcode& b);

}  // namespace eigenbar
