#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eigenbar {

struct CampaignConfig {
    std::vector<double> lambdas{2.0, 8.0, 18.0, 32.0, 50.0};
    std::size_t samples = 20;      // random elements of F_lambda per lambda
    int resolution = 128;          // n for the n x n torus grid
    std::uint64_t seed = 0;
    std::string weight = "one";    // weight spec, see parse_weight_spec
    std::optional<double> kappa;   // enables the recorded lower-bound column
    std::string output;            // directory for CSV/JSON output, empty for none
    std::size_t threads = 0;       // 0: hardware concurrency
    std::size_t t_samples = 20;    // level-set spot checks per field
    bool eigenfunctions = true;    // add (1/pi) sin(nx) cos(ny) for every 2n^2 <= max lambda
    std::vector<double> deltas{0.05, 0.1, 0.2, 0.4};

    // Throws InvalidArgument on a malformed configuration.
    void validate() const;
};

/// Reads `key = value` lines (# comments allowed) on top of `base`.
/// Keys: lambdas, samples, resolution, seed, weight, kappa, output, threads,
/// t_samples, eigenfunctions, deltas.
CampaignConfig parse_campaign_config(std::istream& in, CampaignConfig base = {});
CampaignConfig read_campaign_config(const std::string& path, CampaignConfig base = {});

struct SampleRecord {
    double lambda = 0.0;
    std::size_t index = 0;
    int eigenfunction = 0;        // n for the eigenfunction family, 0 for random samples
    double phi_u = 0.0;
    double weight_norm = 0.0;     // ||u o f|| on the grid
    double ratio = 0.0;           // phi_u / ((lambda + 1) ||u o f||)
    double indicatrix = 0.0;      // int u(t) beta(t, f) dt
    std::size_t finite_bars = 0;
    std::size_t critical_points = 0;
    std::vector<std::pair<double, std::size_t>> n_delta;
    std::size_t level_checks = 0;
    std::size_t level_violations = 0;
    bool integrated_ok = true;    // phi_u <= indicatrix (up to 1e-12 relative slack)
    std::optional<double> approx_bound;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<SampleRecord> records;
    double kappa_hat = 0.0;                            // max ratio over all records
    std::map<double, double> max_ratio_by_lambda;      // random samples only
    std::size_t violations = 0;                        // hard failures

    bool passed() const { return violations == 0; }
    std::string to_json() const;
};

/// Runs every sample on a worker pool; records are reduced in index order so the
/// report depends on the configuration only.
CampaignReport run_verification_campaign(const CampaignConfig& config);

struct BuhovskyCensus {
    int n = 0;
    int k = 0;
    int degree = 0;          // n - 1
    double bars = 0.0;       // ~ k^n
    double bar_length = 0.0; // ~ 1/k^2
    double phi1_scale = 0.0; // ~ k^(n-2)
};

/// Analytic bar census of the oscillating example on T^n, n >= 3. No persistence computed.
BuhovskyCensus buhovsky_census(int n, int k);

}  // namespace eigenbar
