#include "eigenbar/export.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "eigenbar/barcode_io.hpp"
#include "eigenbar/errors.hpp"
#include "eigenbar/functionals.hpp"

namespace eigenbar {

namespace {

const Barcode& need_barcode(const ExportInput& in, const std::string& kind) {
    if (!in.barcode) throw InvalidArgument("export kind '" + kind + "' needs a barcode");
    return *in.barcode;
}

void histogram(const Barcode& b, int bins, std::ostream& out) {
    if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
    std::vector<double> lengths;
    for (const auto& bar : b.bars)
        if (!bar.infinite) lengths.push_back(bar.length());
    out << "bin_lo,bin_hi,count\n";
    if (lengths.empty()) return;
    const double top = *std::max_element(lengths.begin(), lengths.end());
    const double width = top / bins;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double l : lengths) {
        auto i = width > 0.0 ? static_cast<std::size_t>(l / width) : 0;
        counts[std::min(i, counts.size() - 1)]++;
    }
    for (int i = 0; i < bins; ++i) out << i * width << ',' << (i + 1) * width << ',' << counts[i] << '\n';
}

}  // namespace

std::vector<std::string> export_kinds() { return {"diagram", "histogram", "ratio", "ndelta"}; }

void export_plot_data(const std::string& kind, const ExportInput& in, std::ostream& out) {
    out << std::setprecision(17);
    if (kind == "diagram") {
        write_diagram_csv(out, need_barcode(in, kind));
    } else if (kind == "histogram") {
        histogram(need_barcode(in, kind), in.bins, out);
    } else if (kind == "ndelta") {
        const auto& b = need_barcode(in, kind);
        out << "delta,count\n";
        auto deltas = in.deltas;
        std::sort(deltas.begin(), deltas.end());
        for (double d : deltas) out << d << ',' << n_delta(b, d) << '\n';
    } else if (kind == "ratio") {
        if (!in.report) throw InvalidArgument("export kind 'ratio' needs a campaign report");
        std::vector<std::pair<double, double>> rows;
        for (const auto& r : in.report->records) rows.emplace_back(r.lambda, r.ratio);
        std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out << "lambda,ratio\n";
        for (const auto& [l, r] : rows) out << l << ',' << r << '\n';
    } else {
        throw InvalidArgument("unknown export kind '" + kind + "'");
    }
}

}  // namespace eigenbar
