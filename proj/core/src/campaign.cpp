#include "eigenbar/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <thread>

#include "eigenbar/errors.hpp"
#include "eigenbar/functionals.hpp"
#include "eigenbar/indicatrix.hpp"
#include "eigenbar/trig_poly.hpp"
#include "json.hpp"

namespace eigenbar {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidArgument("config key '" + key + "': bad number '" + item + "'");
        }
    }
    return out;
}

unsigned long long parse_unsigned(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
        const auto v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::logic_error&) {
        throw InvalidArgument("config key '" + key + "': expected a non-negative integer, got '" + value + "'");
    }
}

struct Job {
    double lambda;
    std::size_t index;
    int eigen_n;
    std::uint64_t seed;
};

SampleRecord run_job(const Job& job, const CampaignConfig& cfg, const SurfacePtr& grid, const WeightFunction& u) {
    const TrigPoly f = job.eigen_n > 0 ? torus_eigenfunction(job.eigen_n) : random_trig_poly(job.lambda, job.seed);
    const ScalarField field = f.to_field(grid);
    const Barcode barcode = compute_barcode(field);

    SampleRecord rec;
    rec.lambda = job.lambda;
    rec.index = job.index;
    rec.eigenfunction = job.eigen_n;
    const auto phi = phi_u(barcode, u);
    rec.phi_u = phi.value;
    rec.finite_bars = phi.finite_bars;

    const double h = 2.0 * std::numbers::pi / cfg.resolution;
    double s = 0.0;
    for (double v : field.values()) s += u(v) * u(v);
    rec.weight_norm = std::sqrt(s) * h;
    rec.ratio = rec.phi_u / ((rec.lambda + 1.0) * rec.weight_norm);

    rec.indicatrix = weighted_indicatrix_integral(field, u);
    rec.integrated_ok = rec.phi_u <= rec.indicatrix * (1.0 + 1e-12) + 1e-12;

    const auto ts = sample_regular_values(field, cfg.t_samples, derive_seed(job.seed, 0x5107));
    const auto check = check_indicatrix_inequality(field, barcode, ts);
    rec.level_checks = check.samples;
    rec.level_violations = check.violations.size();

    rec.critical_points = static_cast<std::size_t>(classify_critical_points(perturb_to_simple(field, 0)).total);
    for (double d : cfg.deltas) rec.n_delta.emplace_back(d, n_delta(barcode, d));
    if (cfg.kappa) rec.approx_bound = approx_lower_bound(barcode, rec.lambda, *cfg.kappa);
    return rec;
}

}  // namespace

void CampaignConfig::validate() const {
    if (lambdas.empty()) throw InvalidArgument("lambda grid is empty");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] >= 1.0)) throw InvalidArgument("every lambda must be at least 1");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw InvalidArgument("lambda grid must be strictly ascending");
    }
    if (samples < 1) throw InvalidArgument("samples must be at least 1");
    if (resolution < 64) throw InvalidArgument("resolution must be at least 64");
    if (static_cast<double>(resolution) < 8.0 * std::sqrt(lambdas.back()))
        throw InvalidArgument("resolution " + std::to_string(resolution) +
                              " gives fewer than 8 grid points per wavelength at lambda " +
                              std::to_string(lambdas.back()));
    for (double d : deltas)
        if (!(d > 0.0)) throw InvalidArgument("deltas must be positive");
    parse_weight_spec(weight);
    if (kappa && !(*kappa > 0.0)) throw InvalidArgument("kappa must be positive");
}

CampaignConfig parse_campaign_config(std::istream& in, CampaignConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key == "lambdas") {
            cfg.lambdas = parse_list(key, value);
        } else if (key == "deltas") {
            cfg.deltas = parse_list(key, value);
        } else if (key == "samples") {
            cfg.samples = parse_unsigned(key, value);
        } else if (key == "resolution") {
            cfg.resolution = static_cast<int>(parse_unsigned(key, value));
        } else if (key == "seed") {
            cfg.seed = parse_unsigned(key, value);
        } else if (key == "threads") {
            cfg.threads = parse_unsigned(key, value);
        } else if (key == "t_samples") {
            cfg.t_samples = parse_unsigned(key, value);
        } else if (key == "weight") {
            cfg.weight = value;
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "kappa") {
            cfg.kappa = parse_list(key, value).at(0);
        } else if (key == "eigenfunctions") {
            if (value != "true" && value != "false") throw InvalidArgument("eigenfunctions must be true or false");
            cfg.eigenfunctions = value == "true";
        } else {
            throw InvalidArgument("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

CampaignConfig read_campaign_config(const std::string& path, CampaignConfig base) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config " + path);
    return parse_campaign_config(in, std::move(base));
}

CampaignReport run_verification_campaign(const CampaignConfig& config) {
    config.validate();
    const WeightFunction u = parse_weight_spec(config.weight);
    const SurfacePtr grid = build_flat_torus_grid(config.resolution);

    std::vector<Job> jobs;
    for (std::size_t li = 0; li < config.lambdas.size(); ++li)
        for (std::size_t s = 0; s < config.samples; ++s)
            jobs.push_back({config.lambdas[li], s, 0, derive_seed(config.seed, li, s)});
    if (config.eigenfunctions)
        for (int n = 1; 2.0 * n * n <= config.lambdas.back(); ++n)
            jobs.push_back({2.0 * n * n, 0, n, derive_seed(config.seed, 0xE16E, static_cast<std::uint64_t>(n))});

    std::vector<SampleRecord> records(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                records[i] = run_job(jobs[i], config, grid, u);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    CampaignReport report;
    report.config = config;
    report.records = std::move(records);
    for (const auto& r : report.records) {
        report.kappa_hat = std::max(report.kappa_hat, r.ratio);
        if (r.eigenfunction == 0) {
            auto [it, fresh] = report.max_ratio_by_lambda.emplace(r.lambda, r.ratio);
            if (!fresh) it->second = std::max(it->second, r.ratio);
        }
        report.violations += r.level_violations + (r.integrated_ok ? 0 : 1);
    }

    if (!config.output.empty()) {
        std::filesystem::create_directories(config.output);
        std::ofstream json_out(std::filesystem::path(config.output) / "report.json");
        json_out << report.to_json() << '\n';
        std::ofstream csv(std::filesystem::path(config.output) / "records.csv");
        csv << "lambda,index,eigenfunction,phi_u,weight_norm,ratio,indicatrix,finite_bars,critical_points,"
               "level_violations\n"
            << std::setprecision(17);
        for (const auto& r : report.records)
            csv << r.lambda << ',' << r.index << ',' << r.eigenfunction << ',' << r.phi_u << ',' << r.weight_norm << ','
                << r.ratio << ',' << r.indicatrix << ',' << r.finite_bars << ',' << r.critical_points << ','
                << r.level_violations << '\n';
    }
    return report;
}

std::string CampaignReport::to_json() const {
    using nlohmann::json;
    json doc;
    json cfg;
    cfg["lambdas"] = config.lambdas;
    cfg["samples"] = config.samples;
    cfg["resolution"] = config.resolution;
    cfg["seed"] = config.seed;
    cfg["weight"] = config.weight;
    cfg["kappa"] = config.kappa ? json(*config.kappa) : json(nullptr);
    cfg["t_samples"] = config.t_samples;
    cfg["eigenfunctions"] = config.eigenfunctions;
    cfg["deltas"] = config.deltas;
    doc["config"] = std::move(cfg);
    json recs = json::array();
    for (const auto& r : records) {
        json j;
        j["lambda"] = r.lambda;
        j["index"] = r.index;
        j["eigenfunction"] = r.eigenfunction;
        j["phi_u"] = r.phi_u;
        j["weight_norm"] = r.weight_norm;
        j["ratio"] = r.ratio;
        j["indicatrix"] = r.indicatrix;
        j["finite_bars"] = r.finite_bars;
        j["critical_points"] = r.critical_points;
        json nd = json::array();
        for (const auto& [d, c] : r.n_delta) nd.push_back({{"delta", d}, {"count", c}});
        j["n_delta"] = std::move(nd);
        j["level_checks"] = r.level_checks;
        j["level_violations"] = r.level_violations;
        j["integrated_ok"] = r.integrated_ok;
        j["approx_bound"] = r.approx_bound ? json(*r.approx_bound) : json(nullptr);
        recs.push_back(std::move(j));
    }
    doc["records"] = std::move(recs);
    doc["kappa_hat"] = kappa_hat;
    json curve = json::array();
    for (const auto& [l, r] : max_ratio_by_lambda) curve.push_back({{"lambda", l}, {"max_ratio", r}});
    doc["max_ratio_by_lambda"] = std::move(curve);
    doc["violations"] = violations;
    doc["passed"] = passed();
    return doc.dump(2);
}

BuhovskyCensus buhovsky_census(int n, int k) {
    if (n < 3) throw InvalidArgument("the census is for tori of dimension at least 3");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    BuhovskyCensus c;
    c.n = n;
    c.k = k;
    c.degree = n - 1;
    c.bars = std::pow(static_cast<double>(k), n);
    c.bar_length = 1.0 / (static_cast<double>(k) * k);
    c.phi1_scale = std::pow(static_cast<double>(k), n - 2);
    return c;
}

}  // namespace eigenbar
