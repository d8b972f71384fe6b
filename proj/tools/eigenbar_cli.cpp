#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eigenbar/barcode_io.hpp"
#include "eigenbar/bottleneck.hpp"
#include "eigenbar/campaign.hpp"
#include "eigenbar/errors.hpp"
#include "eigenbar/export.hpp"
#include "eigenbar/functionals.hpp"
#include "eigenbar/golden.hpp"
#include "eigenbar/indicatrix.hpp"
#include "eigenbar/korovkin.hpp"
#include "eigenbar/kunneth.hpp"
#include "eigenbar/mesh_io.hpp"
#include "eigenbar/modulus.hpp"
#include "eigenbar/trig_poly.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace eigenbar;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Thrown by subcommands whose checks did not hold; maps to exit code 1.
struct CheckFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldSource {
    std::string grid_field;
    std::string mesh;
    std::string values;
    int eigen = 0;
    double poly = 0.0;
    int resolution = 128;

    void attach(CLI::App* cmd) {
        auto* g = cmd->add_option("--field,--grid-field", grid_field,
                                  "torus grid CSV (i,j,value with '# n=N'), or vertex_id,value CSV with --mesh");
        auto* m = cmd->add_option("--mesh", mesh, "OFF mesh");
        cmd->add_option("--values", values, "per-vertex values CSV for --mesh")->needs(m);
        auto* e = cmd->add_option("--eigen", eigen, "(1/pi) sin(nx) cos(ny) on the torus grid")->check(CLI::PositiveNumber);
        auto* p = cmd->add_option("--poly", poly, "random unit-norm trig polynomial with |v|^2 <= LAMBDA")
                      ->check(CLI::PositiveNumber);
        cmd->add_option("--resolution", resolution, "torus grid side for --eigen/--poly")->check(CLI::Range(3, 1 << 14));
        g->excludes(e)->excludes(p);
        m->excludes(e)->excludes(p);
        e->excludes(p);
    }

    bool given() const { return !grid_field.empty() || !mesh.empty() || eigen > 0 || poly > 0.0; }
    bool on_torus_grid() const { return mesh.empty(); }

    // Trig polynomial behind --eigen/--poly, if that is the source.
    std::optional<TrigPoly> trig(std::uint64_t seed) const {
        if (eigen > 0) return torus_eigenfunction(eigen);
        if (poly > 0.0) return random_trig_poly(poly, seed);
        return std::nullopt;
    }

    ScalarField load(std::uint64_t seed) const {
        if (!mesh.empty()) {
            const std::string& vals = values.empty() ? grid_field : values;
            if (vals.empty()) throw InvalidArgument("--mesh needs --field (vertex_id,value CSV)");
            return read_field_csv(fs::path(vals), read_off(fs::path(mesh)));
        }
        if (!grid_field.empty()) return read_grid_field(fs::path(grid_field));
        if (auto f = trig(seed)) return f->to_field(build_flat_torus_grid(resolution));
        throw InvalidArgument("no field given: use --grid-field, --mesh/--values, --eigen or --poly");
    }
};

struct BarcodeSource {
    std::string path;
    FieldSource field;

    void attach(CLI::App* cmd) {
        cmd->add_option("--barcode", path, "barcode JSON");
        field.attach(cmd);
    }

    Barcode load(std::uint64_t seed) const {
        if (!path.empty()) {
            if (field.given()) throw InvalidArgument("give either --barcode or a field, not both");
            return read_barcode_json(fs::path(path));
        }
        return compute_barcode(field.load(seed));
    }
};

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw InvalidArgument("cannot write " + out_path);
    out << doc.dump(2) << '\n';
}

json report_json(const FunctionalReport& r) {
    return {{"value", r.value},
            {"range_term", r.range_term},
            {"finite_bars", r.finite_bars},
            {"lipschitz_constant", r.lipschitz_constant}};
}

// Minimal reader for the records written by CampaignReport::to_json, enough for export.
CampaignReport read_campaign_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open report " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument("malformed report " + path + ": " + e.what());
    }
    CampaignReport rep;
    for (const auto& r : doc.at("records")) {
        SampleRecord s;
        s.lambda = r.at("lambda").get<double>();
        s.index = r.at("index").get<std::size_t>();
        s.eigenfunction = r.at("eigenfunction").get<int>();
        s.phi_u = r.at("phi_u").get<double>();
        s.ratio = r.at("ratio").get<double>();
        rep.records.push_back(std::move(s));
    }
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenbar: barcodes of functions on surfaces and their spectral bounds"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for all randomness")->capture_default_str();
    std::string out_path;

    // barcode
    auto* c_barcode = app.add_subcommand("barcode", "persistence barcode of a field");
    FieldSource bc_field;
    bc_field.attach(c_barcode);
    std::string bc_format = "json";
    bool bc_perturb = false;
    c_barcode->add_option("--format", bc_format)->check(CLI::IsMember({"json", "csv"}));
    c_barcode->add_flag("--perturb", bc_perturb, "break ties with perturb_to_simple first");
    c_barcode->add_option("-o,--output", out_path);

    // distance
    auto* c_distance = app.add_subcommand("distance", "bottleneck distance between two barcode JSON files");
    std::string dist_a, dist_b;
    bool dist_matching = false;
    c_distance->add_option("a,--a", dist_a, "first barcode JSON")->required()->check(CLI::ExistingFile);
    c_distance->add_option("b,--b", dist_b, "second barcode JSON")->required()->check(CLI::ExistingFile);
    c_distance->add_flag("--matching", dist_matching, "also print an optimal matching");

    // phi
    auto* c_phi = app.add_subcommand("phi", "weighted total bar length Phi_u and its truncations");
    BarcodeSource phi_src;
    phi_src.attach(c_phi);
    std::string phi_weight = "one";
    std::vector<std::size_t> phi_k;
    c_phi->add_option("--weight", phi_weight, "one | poly:c0,c1,... | table:FILE")->capture_default_str();
    c_phi->add_option("--k", phi_k, "truncation sizes for Phi_{u,k}");

    // ndelta
    auto* c_ndelta = app.add_subcommand("ndelta", "number of delta-significant critical values");
    BarcodeSource nd_src;
    nd_src.attach(c_ndelta);
    std::vector<double> nd_deltas;
    c_ndelta->add_option("--delta", nd_deltas)->required()->check(CLI::PositiveNumber);

    // sortbars
    auto* c_sort = app.add_subcommand("sortbars", "sort bars of length >= eps and report the comparison count");
    BarcodeSource sort_src;
    sort_src.attach(c_sort);
    double sort_eps = 0.1;
    double sort_c = 4.0;
    c_sort->add_option("--eps", sort_eps)->capture_default_str()->check(CLI::PositiveNumber);
    c_sort->add_option("--c", sort_c, "constant in T <= N + c K log2 K")->capture_default_str();

    // indicatrix
    auto* c_ind = app.add_subcommand("indicatrix", "level-set component counts and their weighted integral");
    FieldSource ind_field;
    ind_field.attach(c_ind);
    std::vector<double> ind_t;
    std::string ind_weight = "one";
    c_ind->add_option("--t", ind_t, "regular values to evaluate");
    c_ind->add_option("--weight", ind_weight)->capture_default_str();

    // check-prop31
    auto* c_p31 = app.add_subcommand("check-prop31", "pointwise and integrated bar-count vs level-set check");
    FieldSource p31_field;
    p31_field.attach(c_p31);
    std::size_t p31_samples = 100;
    c_p31->add_option("--samples", p31_samples, "random regular values")->capture_default_str();

    // kunneth
    auto* c_kun = app.add_subcommand("kunneth", "closed-form barcode of sum of sin(l x_i) on the n-torus");
    int kun_n = 2, kun_l = 1, kun_k = 10;
    std::string kun_emit;
    bool kun_buhovsky = false;
    c_kun->add_option("--n", kun_n)->capture_default_str()->check(CLI::PositiveNumber);
    c_kun->add_option("--l", kun_l)->capture_default_str()->check(CLI::PositiveNumber);
    c_kun->add_option("--emit-barcode", kun_emit, "write the product barcode JSON here ('-' embeds it in the output)");
    c_kun->add_flag("--buhovsky", kun_buhovsky, "analytic bar census of the k-scaled example instead");
    c_kun->add_option("--k", kun_k, "scale for --buhovsky")->capture_default_str();

    // sample
    auto* c_sample = app.add_subcommand("sample", "random unit-norm eigenfunction combinations");
    double smp_lambda = 8.0;
    std::size_t smp_count = 1;
    int smp_res = 128;
    std::string smp_dir;
    c_sample->add_option("--lambda", smp_lambda)->capture_default_str()->check(CLI::PositiveNumber);
    c_sample->add_option("--count", smp_count)->capture_default_str();
    c_sample->add_option("--resolution", smp_res)->capture_default_str()->check(CLI::Range(3, 1 << 14));
    c_sample->add_option("--emit,--out-dir", smp_dir, "write sample_<i>.csv grid fields here");

    // korovkin
    auto* c_kor = app.add_subcommand("korovkin", "Korovkin mean of a torus field and its approximation error");
    FieldSource kor_field;
    kor_field.attach(c_kor);
    double kor_lambda = 16.0;
    int kor_check_res = 0;
    c_kor->add_option("--lambda", kor_lambda)->capture_default_str()->check(CLI::PositiveNumber);
    c_kor->add_option("--check-resolution", kor_check_res, "grid for the sup distance (default 2x field grid)");

    // modulus
    auto* c_mod = app.add_subcommand("modulus", "modulus of continuity / smoothness of a torus grid field");
    FieldSource mod_field;
    mod_field.attach(c_mod);
    std::vector<double> mod_delta;
    int mod_order = 1;
    c_mod->add_option("--delta", mod_delta)->required()->check(CLI::PositiveNumber);
    c_mod->add_option("--order", mod_order)->capture_default_str()->check(CLI::Range(1, 8));

    // campaign
    auto* c_camp = app.add_subcommand("campaign", "verification campaign over random F_lambda samples");
    std::string camp_config;
    std::vector<double> camp_lambdas, camp_deltas;
    std::optional<std::size_t> camp_samples, camp_threads, camp_t;
    std::optional<int> camp_res;
    std::optional<double> camp_kappa;
    std::optional<std::string> camp_weight, camp_output;
    bool camp_no_eigen = false;
    c_camp->add_option("--config", camp_config, "key = value file; flags override it")->check(CLI::ExistingFile);
    c_camp->add_option("--lambdas", camp_lambdas)->delimiter(',');
    c_camp->add_option("--samples", camp_samples);
    c_camp->add_option("--resolution", camp_res);
    c_camp->add_option("--weight", camp_weight);
    c_camp->add_option("--kappa", camp_kappa);
    c_camp->add_option("--output", camp_output, "directory for report.json and records.csv");
    c_camp->add_option("--threads", camp_threads);
    c_camp->add_option("--t-samples", camp_t);
    c_camp->add_option("--deltas", camp_deltas)->delimiter(',');
    c_camp->add_flag("--no-eigenfunctions", camp_no_eigen);
    auto* camp_seed = c_camp->add_option("--seed", seed, "overrides the config seed");

    // golden
    auto* c_golden = app.add_subcommand("golden", "reproduce the worked examples");
    bool golden_json = false;
    c_golden->add_flag("--json", golden_json);

    // export
    auto* c_export = app.add_subcommand("export", "plot-ready CSV");
    std::string exp_kind;
    std::string exp_report;
    BarcodeSource exp_src;
    std::vector<double> exp_deltas{0.05, 0.1, 0.2, 0.4};
    int exp_bins = 20;
    c_export->add_option("--kind", exp_kind)->required()->description("diagram | histogram | ratio | ndelta");
    c_export->add_option("--report", exp_report, "campaign report.json for --kind ratio");
    exp_src.attach(c_export);
    c_export->add_option("--deltas", exp_deltas)->delimiter(',');
    c_export->add_option("--bins", exp_bins)->capture_default_str();
    c_export->add_option("-o,--output", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    std::cout << std::setprecision(17);
    try {
        if (*c_barcode) {
            auto field = bc_field.load(seed);
            if (bc_perturb) field = perturb_to_simple(field, seed);
            const auto b = compute_barcode(field);
            if (bc_format == "csv") {
                std::ofstream file;
                if (!out_path.empty() && out_path != "-") {
                    file.open(out_path);
                    if (!file) throw InvalidArgument("cannot write " + out_path);
                }
                std::ostream& out = file.is_open() ? file : std::cout;
                out << std::setprecision(17);
                write_diagram_csv(out, b);
            } else if (out_path.empty() || out_path == "-") {
                std::cout << barcode_to_json(b, 2) << '\n';
            } else {
                write_barcode_json(fs::path(out_path), b);
            }
        } else if (*c_distance) {
            const auto a = read_barcode_json(fs::path(dist_a));
            const auto b = read_barcode_json(fs::path(dist_b));
            const auto res = bottleneck_with_matching(a, b);
            json doc{{"distance", res.distance}};
            if (dist_matching && res.matching) {
                doc["pairs"] = res.matching->pairs;
                doc["deleted_a"] = res.matching->deleted_a;
                doc["deleted_b"] = res.matching->deleted_b;
            }
            emit(doc, "");
        } else if (*c_phi) {
            const auto b = phi_src.load(seed);
            const auto u = parse_weight_spec(phi_weight);
            json doc = report_json(phi_u(b, u));
            doc["weight"] = u.name();
            for (auto k : phi_k) doc["truncated"].push_back({{"k", k}, {"value", phi_u_k(b, u, k)}});
            emit(doc, "");
        } else if (*c_ndelta) {
            const auto b = nd_src.load(seed);
            json doc = json::array();
            for (double d : nd_deltas) doc.push_back({{"delta", d}, {"count", n_delta(b, d)}});
            emit(doc, "");
        } else if (*c_sort) {
            const auto b = sort_src.load(seed);
            const auto w = sort_significant_bars(b, sort_eps);
            const double k = static_cast<double>(w.kept);
            const double limit = static_cast<double>(w.scanned) + (w.kept > 1 ? sort_c * k * std::log2(k) : 0.0);
            const std::size_t t = w.scanned + w.comparisons;
            emit({{"N", w.scanned}, {"K", w.kept}, {"comparisons", w.comparisons}, {"T", t}, {"limit", limit},
                  {"within_limit", static_cast<double>(t) <= limit}},
                 "");
            if (static_cast<double>(t) > limit) throw CheckFailed("comparison count above N + c K log2 K");
        } else if (*c_ind) {
            const auto field = ind_field.load(seed);
            const auto u = parse_weight_spec(ind_weight);
            json doc;
            for (double t : ind_t) doc["levels"].push_back({{"t", t}, {"components", banach_indicatrix(field, t)}});
            doc["weighted_integral"] = weighted_indicatrix_integral(field, u);
            doc["weight"] = u.name();
            emit(doc, "");
        } else if (*c_p31) {
            const auto field = p31_field.load(seed);
            const auto b = compute_barcode(field);
            const auto check = check_indicatrix_inequality(field, b, sample_regular_values(field, p31_samples, seed));
            const double phi = phi_u(b, WeightFunction::one()).value;
            const double integral = weighted_indicatrix_integral(field, WeightFunction::one());
            const bool integrated_ok = phi <= integral * (1.0 + 1e-12) + 1e-12;
            json doc{{"samples", check.samples},
                     {"equalities", check.equalities},
                     {"phi_1", phi},
                     {"indicatrix_integral", integral},
                     {"integrated_ok", integrated_ok}};
            doc["violations"] = json::array();
            for (const auto& v : check.violations)
                doc["violations"].push_back({{"t", v.t}, {"bars", v.lhs}, {"components", v.beta}});
            emit(doc, "");
            if (!check.ok() || !integrated_ok) throw CheckFailed("bar count exceeded level-set component count");
        } else if (*c_kun) {
            if (kun_buhovsky) {
                const auto c = buhovsky_census(kun_n, kun_k);
                emit({{"n", c.n}, {"k", c.k}, {"degree", c.degree}, {"bars", c.bars}, {"bar_length", c.bar_length},
                      {"phi1_scale", c.phi1_scale}},
                     "");
            } else {
                const auto g = torus_sum_barcode(kun_n, kun_l);
                const auto census = torus_census(kun_n, kun_l);
                json doc{{"n", kun_n},
                         {"l", kun_l},
                         {"phi1", torus_phi1(kun_n, kun_l)},
                         {"infinite_bars", census.infinite},
                         {"finite_bars", census.finite},
                         {"rescaled_phi1", rescaled_phi1(kun_n, kun_l)}};
                if (kun_emit == "-")
                    doc["barcode"] = json::parse(barcode_to_json(g.to_barcode()));
                else if (!kun_emit.empty())
                    write_barcode_json(fs::path(kun_emit), g.to_barcode());
                emit(doc, "");
            }
        } else if (*c_sample) {
            const auto samples = sample_f_lambda(smp_lambda, smp_count, seed);
            if (!smp_dir.empty()) fs::create_directories(smp_dir);
            const auto grid = build_flat_torus_grid(smp_res);
            json doc = json::array();
            for (std::size_t i = 0; i < samples.size(); ++i) {
                const auto& s = samples[i];
                json row{{"index", i},
                         {"lambda", s.lambda},
                         {"norm", s.norm},
                         {"laplacian_norm", s.laplacian_norm},
                         {"terms", s.f.coefficients().size()}};
                if (!smp_dir.empty()) {
                    const auto path = fs::path(smp_dir) / ("sample_" + std::to_string(i) + ".csv");
                    std::ofstream out(path);
                    out << std::setprecision(17);
                    write_grid_field(out, s.f.to_field(grid));
                    row["file"] = path.string();
                }
                doc.push_back(std::move(row));
            }
            emit(doc, "");
        } else if (*c_kor) {
            const auto& kernel = shared_korovkin_kernel();
            const auto trig = kor_field.trig(seed);
            const auto field = kor_field.load(seed);
            const int n = grid_side(field);
            const TrigPoly h = trig ? korovkin_mean(*trig, kor_lambda, kernel)
                                    : korovkin_mean(field.values(), n, kor_lambda, kernel);
            const int fine = kor_check_res > 0 ? kor_check_res : 2 * n;
            const auto hs = h.sample_grid(fine);
            std::vector<double> fs_values = trig ? trig->sample_grid(fine) : std::vector<double>{};
            double dist = 0.0;
            if (trig) {
                for (std::size_t i = 0; i < hs.size(); ++i) dist = std::max(dist, std::abs(hs[i] - fs_values[i]));
            } else {
                // Without a closed form, compare at the field's own vertices.
                const auto hv = h.sample_grid(n);
                for (std::size_t i = 0; i < hv.size(); ++i) dist = std::max(dist, std::abs(hv[i] - field.value(i)));
            }
            const double delta = kernel.c0() / std::sqrt(kor_lambda);
            const double omega2 = modulus(field, delta, 2);
            const double f_norm = trig ? l2_norm(*trig) : grid_l2_norm(field.values(), n);
            json doc{{"lambda", kor_lambda},
                     {"j01", kernel.j01()},
                     {"c0", kernel.c0()},
                     {"f_norm", f_norm},
                     {"h_norm", l2_norm(h)},
                     {"sup_distance", dist},
                     {"delta", delta},
                     {"omega2", omega2},
                     {"bound", 2.0 * omega2},
                     {"within_bound", dist <= 2.0 * omega2}};
            emit(doc, "");
        } else if (*c_mod) {
            const auto field = mod_field.load(seed);
            json doc = json::array();
            for (double d : mod_delta) doc.push_back({{"delta", d}, {"order", mod_order}, {"omega", modulus(field, d, mod_order)}});
            emit(doc, "");
        } else if (*c_camp) {
            CampaignConfig cfg;
            if (!camp_config.empty()) cfg = read_campaign_config(camp_config, cfg);
            if (!camp_lambdas.empty()) cfg.lambdas = camp_lambdas;
            if (!camp_deltas.empty()) cfg.deltas = camp_deltas;
            if (camp_samples) cfg.samples = *camp_samples;
            if (camp_threads) cfg.threads = *camp_threads;
            if (camp_t) cfg.t_samples = *camp_t;
            if (camp_res) cfg.resolution = *camp_res;
            if (camp_weight) cfg.weight = *camp_weight;
            if (camp_kappa) cfg.kappa = *camp_kappa;
            if (camp_output) cfg.output = *camp_output;
            if (camp_no_eigen) cfg.eigenfunctions = false;
            if (camp_seed->count() > 0 || app.get_option("--seed")->count() > 0) cfg.seed = seed;
            const auto rep = run_verification_campaign(cfg);
            std::cout << "samples " << rep.records.size() << ", kappa_hat " << rep.kappa_hat << ", violations "
                      << rep.violations << '\n';
            for (const auto& [l, r] : rep.max_ratio_by_lambda) std::cout << "  lambda " << l << ": max ratio " << r << '\n';
            if (!cfg.output.empty()) std::cout << "wrote " << (fs::path(cfg.output) / "report.json").string() << '\n';
            if (!rep.passed()) throw CheckFailed("campaign recorded violations");
        } else if (*c_golden) {
            const auto rep = run_golden_suite();
            std::cout << (golden_json ? rep.to_json() + "\n" : rep.to_text());
            if (!rep.passed()) throw CheckFailed("golden suite failed");
        } else if (*c_export) {
            ExportInput input;
            input.deltas = exp_deltas;
            input.bins = exp_bins;
            std::optional<Barcode> barcode;
            std::optional<CampaignReport> report;
            if (!exp_report.empty()) {
                report = read_campaign_report(exp_report);
                input.report = &*report;
            }
            if (!exp_src.path.empty() || exp_src.field.given()) {
                barcode = exp_src.load(seed);
                input.barcode = &*barcode;
            }
            std::ofstream file;
            if (!out_path.empty() && out_path != "-") {
                file.open(out_path);
                if (!file) throw InvalidArgument("cannot write " + out_path);
            }
            export_plot_data(exp_kind, input, file.is_open() ? static_cast<std::ostream&>(file) : std::cout);
        }
    } catch (const CheckFailed& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitFail;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Unsupported& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitPass;
}
