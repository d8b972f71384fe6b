#include "eigenbar/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb, double m,
                    double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(f, b, a, tol, max_depth);
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

WeightFunction WeightFunction::one() {
    WeightFunction w;
    w.eval_ = [](double) { return 1.0; };
    w.antiderivative_ = [](double t) { return t; };
    w.constant_ = true;
    w.name_ = "one";
    return w;
}

WeightFunction WeightFunction::polynomial(std::vector<double> c) {
    if (c.empty()) throw InvalidArgument("polynomial weight needs at least one coefficient");
    for (double x : c)
        if (!std::isfinite(x)) throw InvalidArgument("polynomial coefficients must be finite");
    WeightFunction w;
    std::vector<double> anti(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) anti[i + 1] = c[i] / static_cast<double>(i + 1);
    const auto horner = [](const std::vector<double>& p, double t) {
        double acc = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    w.eval_ = [c, horner](double t) { return horner(c, t); };
    w.antiderivative_ = [anti, horner](double t) { return horner(anti, t); };
    w.constant_ = std::all_of(c.begin() + 1, c.end(), [](double x) { return x == 0.0; });
    std::ostringstream name;
    name << "poly:";
    for (std::size_t i = 0; i < c.size(); ++i) name << (i ? "," : "") << c[i];
    w.name_ = name.str();
    return w;
}

WeightFunction WeightFunction::table(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2) throw InvalidArgument("weight table needs at least two nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i].first) || !std::isfinite(nodes[i].second))
            throw InvalidArgument("weight table entries must be finite");
        if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
            throw InvalidArgument("weight table abscissae must increase strictly");
    }
    WeightFunction w;
    w.nodes_ = nodes;
    w.lo_ = nodes.front().first;
    w.hi_ = nodes.back().first;
    // Cumulative trapezoid integrals at the nodes.
    std::vector<double> cum(nodes.size(), 0.0);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * (nodes[i].first - nodes[i - 1].first) * (nodes[i].second + nodes[i - 1].second);
    const auto locate = [nodes](double t) {
        auto it = std::upper_bound(nodes.begin(), nodes.end(), t,
                                   [](double x, const std::pair<double, double>& n) { return x < n.first; });
        std::size_t i = static_cast<std::size_t>(it - nodes.begin());
        return std::clamp<std::size_t>(i, 1, nodes.size() - 1) - 1;
    };
    w.eval_ = [nodes, locate](double t) {
        const std::size_t i = locate(t);
        const auto [t0, u0] = nodes[i];
        const auto [t1, u1] = nodes[i + 1];
        return u0 + (u1 - u0) * (t - t0) / (t1 - t0);
    };
    w.antiderivative_ = [nodes, cum, locate](double t) {
        const std::size_t i = locate(t);
        const auto [t0, u0] = nodes[i];
        const auto [t1, u1] = nodes[i + 1];
        const double ut = u0 + (u1 - u0) * (t - t0) / (t1 - t0);
        return cum[i] + 0.5 * (t - t0) * (u0 + ut);
    };
    w.name_ = "table";
    return w;
}

WeightFunction WeightFunction::custom(std::function<double(double)> evaluator,
                                      std::optional<std::function<double(double)>> antiderivative, std::string name) {
    if (!evaluator) throw InvalidArgument("custom weight needs an evaluator");
    WeightFunction w;
    w.eval_ = std::move(evaluator);
    w.antiderivative_ = std::move(antiderivative);
    w.name_ = std::move(name);
    return w;
}

double WeightFunction::operator()(double t) const { return eval_(t); }

void WeightFunction::check_domain(double a, double b) const {
    if (std::min(a, b) < lo_ || std::max(a, b) > hi_)
        throw InvalidArgument("weight table does not cover [" + std::to_string(std::min(a, b)) + ", " +
                              std::to_string(std::max(a, b)) + "]");
}

double WeightFunction::integral(double a, double b) const {
    check_domain(a, b);
    if (antiderivative_) return (*antiderivative_)(b) - (*antiderivative_)(a);
    return adaptive_simpson(eval_, a, b, tol_);
}

double WeightFunction::max_on(double a, double b) const {
    if (a > b) std::swap(a, b);
    check_domain(a, b);
    double best = std::max(eval_(a), eval_(b));
    if (constant_) return best;
    if (!nodes_.empty()) {
        for (const auto& [t, u] : nodes_)
            if (t > a && t < b) best = std::max(best, u);
        return best;
    }
    constexpr int kSamples = 4096;
    for (int i = 1; i < kSamples; ++i) best = std::max(best, eval_(a + (b - a) * i / kSamples));
    return best;
}

void WeightFunction::check_nonnegative(double a, double b) const {
    if (a > b) std::swap(a, b);
    check_domain(a, b);
    const auto bad = [&](double t) {
        const double v = eval_(t);
        return !(v >= 0.0);
    };
    if (bad(a) || bad(b)) throw InvalidArgument("weight " + name_ + " is negative on the domain");
    if (!nodes_.empty()) {
        for (const auto& [t, u] : nodes_)
            if (t > a && t < b && !(u >= 0.0)) throw InvalidArgument("weight table is negative on the domain");
        return;
    }
    constexpr int kSamples = 4096;
    for (int i = 1; i < kSamples; ++i)
        if (bad(a + (b - a) * i / kSamples)) throw InvalidArgument("weight " + name_ + " is negative on the domain");
}

WeightFunction read_weight_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open weight table " + path.string());
    std::string line;
    std::vector<std::pair<double, double>> nodes;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            if (line != "t,u") throw InvalidArgument("weight table header must be 't,u'");
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InvalidArgument("weight table rows need two columns");
        try {
            nodes.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
        } catch (const std::logic_error&) {
            throw InvalidArgument("malformed weight table row: " + line);
        }
    }
    return WeightFunction::table(std::move(nodes));
}

WeightFunction parse_weight_spec(const std::string& spec) {
    if (spec == "one") return WeightFunction::one();
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> c;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                c.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw InvalidArgument("bad polynomial coefficient '" + item + "'");
            }
        }
        return WeightFunction::polynomial(std::move(c));
    }
    if (spec.rfind("table:", 0) == 0) return read_weight_table(spec.substr(6));
    throw InvalidArgument("unknown weight spec '" + spec + "' (expected one, poly:..., table:...)");
}

}  // namespace eigenbar
