#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eigenbar/campaign.hpp"
#include "eigenbar/persistence.hpp"

namespace eigenbar {

/// Inputs for export_plot_data; each kind reads the fields it needs.
struct ExportInput {
    const Barcode* barcode = nullptr;
    const CampaignReport* report = nullptr;
    std::vector<double> deltas{0.05, 0.1, 0.2, 0.4};
    int bins = 20;
};

/// Kinds: "diagram" (degree,birth,death), "histogram" (bin_lo,bin_hi,count over
/// finite bar lengths), "ratio" (lambda,ratio sorted by lambda), "ndelta"
/// (delta,count). Throws InvalidArgument for unknown kinds or missing inputs.
void export_plot_data(const std::string& kind, const ExportInput& input, std::ostream& out);

std::vector<std::string> export_kinds();

}  // namespace eigenbar
