#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "eigenbar/campaign.hpp"
#include "eigenbar/errors.hpp"
#include "eigenbar/export.hpp"
#include "eigenbar/golden.hpp"

using namespace eigenbar;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

CampaignConfig small_config() {
    CampaignConfig c;
    c.lambdas = {2.0, 8.0};
    c.samples = 3;
    c.resolution = 64;
    c.t_samples = 10;
    c.seed = 17;
    c.threads = 2;
    return c;
}

CampaignConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_campaign_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
    const auto c = parse(
        "# a comment\n"
        "lambdas = 2, 8, 18\n"
        "samples=4\n"
        "resolution = 96\n"
        "weight = poly:1,0,1\n"
        "kappa = 0.5\n"
        "eigenfunctions = false\n"
        "deltas = 0.1,0.3\n"
        "seed = 9\n");
    CHECK(c.lambdas == std::vector<double>{2, 8, 18});
    CHECK(c.samples == 4);
    CHECK(c.resolution == 96);
    CHECK(c.weight == "poly:1,0,1");
    REQUIRE(c.kappa);
    CHECK(*c.kappa == 0.5);
    CHECK_FALSE(c.eigenfunctions);
    CHECK(c.deltas == std::vector<double>{0.1, 0.3});
    CHECK(c.seed == 9);
    CHECK_NOTHROW(c.validate());

    CampaignConfig base;
    base.samples = 7;
    std::istringstream partial("seed = 3\n");
    CHECK(parse_campaign_config(partial, base).samples == 7);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse("colour = red\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("samples = -2\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("lambdas = 2, x\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("no equals sign\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("eigenfunctions = maybe\n"), InvalidArgument);
    CHECK_THROWS_AS(read_campaign_config("/nonexistent/eigenbar.cfg"), InvalidArgument);

    auto bad = small_config();
    bad.lambdas = {8.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = small_config();
    bad.samples = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = small_config();
    bad.resolution = 32;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = small_config();
    bad.lambdas = {100.0};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS(run_verification_campaign(bad), InvalidArgument);
    bad = small_config();
    bad.kappa = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = small_config();
    bad.weight = "nope";
    CHECK_THROWS_AS(run_verification_campaign(bad), InvalidArgument);
}

TEST_CASE("campaign records and summary") {
    const auto r = run_verification_campaign(small_config());
    CHECK(r.passed());
    CHECK(r.violations == 0);
    // 3 samples per lambda, plus f_1 (lambda 2) and f_2 (lambda 8).
    REQUIRE(r.records.size() == 8);
    double kappa = 0.0;
    for (const auto& rec : r.records) {
        kappa = std::max(kappa, rec.ratio);
        CHECK(rec.level_violations == 0);
        CHECK(rec.integrated_ok);
        CHECK(rec.phi_u <= rec.indicatrix * (1 + 1e-12));
        CHECK(rec.ratio == Approx(rec.phi_u / ((rec.lambda + 1) * rec.weight_norm)));
        CHECK(rec.n_delta.size() == 4);
        CHECK(rec.critical_points == 2 * rec.finite_bars + 4);
        if (rec.eigenfunction > 0) {
            const int n = rec.eigenfunction;
            CHECK(rec.lambda == 2.0 * n * n);
            CHECK(rec.weight_norm == Approx(2 * pi).epsilon(1e-12));
            CHECK(rec.ratio * 2 * pi == Approx(4.0 * n * n / (pi * (2.0 * n * n + 1))).epsilon(1e-2));
        }
    }
    CHECK(r.kappa_hat == kappa);
    CHECK(r.max_ratio_by_lambda.size() == 2);
}

TEST_CASE("campaign is deterministic and thread-count independent") {
    auto c = small_config();
    const auto a = run_verification_campaign(c).to_json();
    CHECK(run_verification_campaign(c).to_json() == a);
    c.threads = 1;
    CHECK(run_verification_campaign(c).to_json() == a);
}

TEST_CASE("kappa-hat is monotone under adding samples") {
    auto c = small_config();
    c.eigenfunctions = false;
    const auto small = run_verification_campaign(c);
    c.samples = 6;
    const auto big = run_verification_campaign(c);
    CHECK(big.kappa_hat >= small.kappa_hat);
    // The first three samples per lambda are shared.
    for (const auto& s : small.records) {
        const auto it = std::find_if(big.records.begin(), big.records.end(), [&](const SampleRecord& b) {
            return b.lambda == s.lambda && b.index == s.index;
        });
        REQUIRE(it != big.records.end());
        CHECK(it->phi_u == s.phi_u);
    }
}

TEST_CASE("kappa column and output files") {
    auto c = small_config();
    c.kappa = 0.2;
    c.output = (std::filesystem::temp_directory_path() / "eigenbar_campaign_test").string();
    std::filesystem::remove_all(c.output);
    const auto r = run_verification_campaign(c);
    for (const auto& rec : r.records) CHECK(rec.approx_bound.has_value());
    CHECK(std::filesystem::exists(std::filesystem::path(c.output) / "report.json"));
    CHECK(std::filesystem::exists(std::filesystem::path(c.output) / "records.csv"));
    std::filesystem::remove_all(c.output);
}

TEST_CASE("export kinds") {
    const auto b = torus_eigenfunction_barcode(1);
    ExportInput in;
    in.barcode = &b;
    std::ostringstream diagram;
    export_plot_data("diagram", in, diagram);
    const auto dtext = diagram.str();
    CHECK(std::count(dtext.begin(), dtext.end(), '\n') == static_cast<long>(b.bars.size()) + 1);

    std::ostringstream nd;
    export_plot_data("ndelta", in, nd);
    std::istringstream nd_lines(nd.str());
    std::string row;
    std::getline(nd_lines, row);
    CHECK(row == "delta,count");
    std::vector<std::pair<double, int>> nd_rows;
    while (std::getline(nd_lines, row))
        nd_rows.emplace_back(std::stod(row.substr(0, row.find(','))), std::stoi(row.substr(row.find(',') + 1)));
    REQUIRE(nd_rows.size() == 4);
    CHECK(nd_rows[1].first == 0.1);
    CHECK(nd_rows[1].second == 8);

    std::ostringstream hist;
    in.bins = 5;
    export_plot_data("histogram", in, hist);
    const auto htext = hist.str();
    CHECK(std::count(htext.begin(), htext.end(), '\n') == 6);

    const auto report = run_verification_campaign(small_config());
    ExportInput rin;
    rin.report = &report;
    std::ostringstream ratio;
    export_plot_data("ratio", rin, ratio);
    std::istringstream lines(ratio.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "lambda,ratio");
    double prev = 0.0;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        const double lambda = std::stod(line.substr(0, line.find(',')));
        CHECK(lambda >= prev);
        prev = lambda;
        ++rows;
    }
    CHECK(rows == report.records.size());

    std::ostringstream sink;
    CHECK_THROWS_AS(export_plot_data("pie", in, sink), InvalidArgument);
    CHECK_THROWS_AS(export_plot_data("ratio", in, sink), InvalidArgument);
    CHECK_THROWS_AS(export_plot_data("diagram", rin, sink), InvalidArgument);
    CHECK(export_kinds().size() == 4);
}

TEST_CASE("oscillating-example census") {
    const auto a = buhovsky_census(3, 10);
    CHECK(a.degree == 2);
    CHECK(a.bars == Approx(1000.0));
    CHECK(a.bar_length == Approx(0.01));
    CHECK(a.phi1_scale == Approx(10.0));
    CHECK(buhovsky_census(5, 2).phi1_scale == Approx(8.0));
    CHECK_THROWS_AS(buhovsky_census(2, 3), InvalidArgument);
    CHECK_THROWS_AS(buhovsky_census(3, 0), InvalidArgument);
}

TEST_CASE("golden suite passes") {
    const auto g = run_golden_suite();
    CHECK(g.passed());
    CHECK(g.entries.size() >= 8);
    for (const auto& e : g.entries) {
        INFO(e.name << ": " << e.detail);
        CHECK(e.passed);
    }
    CHECK(g.to_text().find("FAIL") == std::string::npos);
    CHECK(g.to_json().find("\"passed\"") != std::string::npos);
}
