#include "eigenbar/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool in_upper_half(const TrigPoly::Freq& v) { return v.second > 0 || (v.second == 0 && v.first > 0); }

std::vector<std::complex<double>> roots_of_unity(int n) {
    std::vector<std::complex<double>> r(n);
    for (int k = 0; k < n; ++k) r[k] = std::polar(1.0, kTwoPi * k / n);
    return r;
}

int mod(long a, int n) {
    const long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

void TrigPoly::set(Freq v, std::complex<double> c) {
    if (v.first == 0 && v.second == 0) {
        if (c.imag() != 0.0) throw InvalidArgument("constant coefficient must be real");
        coeffs_[v] = c;
        return;
    }
    coeffs_[v] = c;
    coeffs_[{-v.first, -v.second}] = std::conj(c);
}

std::complex<double> TrigPoly::coefficient(Freq v) const {
    const auto it = coeffs_.find(v);
    return it == coeffs_.end() ? std::complex<double>{} : it->second;
}

int TrigPoly::max_radius_sq() const {
    int r = 0;
    for (const auto& [v, c] : coeffs_) r = std::max(r, v.first * v.first + v.second * v.second);
    return r;
}

double TrigPoly::evaluate(double x, double y) const {
    double sum = 0.0;
    for (const auto& [v, c] : coeffs_) {
        const double phase = v.first * x + v.second * y;
        sum += c.real() * std::cos(phase) - c.imag() * std::sin(phase);
    }
    return sum;
}

std::vector<double> TrigPoly::sample_grid(int n) const {
    if (n < 1) throw InvalidArgument("grid size must be positive");
    const auto roots = roots_of_unity(n);
    std::vector<std::pair<Freq, std::complex<double>>> half;
    double constant = 0.0;
    for (const auto& [v, c] : coeffs_) {
        if (v.first == 0 && v.second == 0)
            constant = c.real();
        else if (in_upper_half(v))
            half.emplace_back(v, c);
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, constant);
    for (const auto& [v, c] : half) {
        for (int j = 0; j < n; ++j) {
            const long row = static_cast<long>(v.second) * j;
            for (int i = 0; i < n; ++i) {
                const auto& z = roots[mod(static_cast<long>(v.first) * i + row, n)];
                out[static_cast<std::size_t>(j) * n + i] += 2.0 * (c.real() * z.real() - c.imag() * z.imag());
            }
        }
    }
    return out;
}

ScalarField TrigPoly::to_field(const SurfacePtr& torus_grid) const {
    const auto nv = torus_grid->vertex_count();
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nv))));
    if (static_cast<std::size_t>(n) * n != nv || torus_grid->has_boundary())
        throw Unsupported("trigonometric polynomials are sampled on flat torus grids only");
    return ScalarField(torus_grid, sample_grid(n));
}

TrigPoly TrigPoly::scaled(double factor) const {
    TrigPoly out = *this;
    for (auto& [v, c] : out.coeffs_) c *= factor;
    return out;
}

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
    TrigPoly out = *this;
    for (const auto& [v, c] : other.coeffs_) out.coeffs_[v] += c;
    return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& other) const { return *this + other.scaled(-1.0); }

void TrigPoly::check_symmetry(double tol) const {
    for (const auto& [v, c] : coeffs_) {
        const auto partner = coefficient({-v.first, -v.second});
        if (std::abs(partner - std::conj(c)) > tol * std::max(1.0, std::abs(c)))
            throw InternalError("trigonometric polynomial lost conjugate symmetry");
    }
}

double l2_norm(const TrigPoly& f) {
    double s = 0.0;
    for (const auto& [v, c] : f.coefficients()) s += std::norm(c);
    return kTwoPi * std::sqrt(s);
}

double laplacian_l2_norm(const TrigPoly& f) {
    double s = 0.0;
    for (const auto& [v, c] : f.coefficients()) {
        const double r2 = static_cast<double>(v.first * v.first + v.second * v.second);
        s += r2 * r2 * std::norm(c);
    }
    return kTwoPi * std::sqrt(s);
}

TrigPoly torus_eigenfunction(int n) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    // sin(nx) cos(ny) = (sin(n(x+y)) + sin(n(x-y))) / 2
    const std::complex<double> c{0.0, -1.0 / (4.0 * std::numbers::pi)};
    TrigPoly f;
    f.set({n, n}, c);
    f.set({n, -n}, c);
    return f;
}

std::vector<TrigPoly::Freq> lattice_disk(double radius_sq) {
    std::vector<TrigPoly::Freq> out;
    const int r = static_cast<int>(std::floor(std::sqrt(std::max(radius_sq, 0.0)))) + 1;
    for (int b = -r; b <= r; ++b)
        for (int a = -r; a <= r; ++a)
            if (a * a + b * b <= radius_sq) out.emplace_back(a, b);
    return out;
}

TrigPoly random_trig_poly(double radius_sq, std::uint64_t seed) {
    const auto freqs = lattice_disk(radius_sq);
    if (freqs.empty()) throw InvalidArgument("empty frequency set");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    TrigPoly f;
    for (const auto& v : freqs) {
        if (v.first == 0 && v.second == 0)
            f.set(v, normal(rng));
        else if (in_upper_half(v)) {
            const double re = normal(rng);
            const double im = normal(rng);
            f.set(v, {re, im});
        }
    }
    const double norm = l2_norm(f);
    if (!(norm > 0.0)) throw InternalError("random polynomial vanished");
    return f.scaled(1.0 / norm);
}

std::vector<SpectralSample> sample_f_lambda(double lambda, std::size_t count, std::uint64_t seed) {
    if (!(lambda >= 1.0)) throw InvalidArgument("lambda must be at least 1");
    std::vector<SpectralSample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SpectralSample s;
        s.f = random_trig_poly(lambda, derive_seed(seed, i));
        s.lambda = lambda;
        s.norm = l2_norm(s.f);
        s.laplacian_norm = laplacian_l2_norm(s.f);
        out.push_back(std::move(s));
    }
    return out;
}

TrigPoly dft_coefficients(std::span<const double> grid, int n, double radius_sq) {
    if (n < 1 || grid.size() != static_cast<std::size_t>(n) * n) throw InvalidArgument("grid size mismatch");
    const auto roots = roots_of_unity(n);
    TrigPoly f;
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (const auto& v : lattice_disk(radius_sq)) {
        if (!(v.first == 0 && v.second == 0) && !in_upper_half(v)) continue;
        std::complex<double> acc{};
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                acc += grid[static_cast<std::size_t>(j) * n + i] *
                       std::conj(roots[mod(static_cast<long>(v.first) * i + static_cast<long>(v.second) * j, n)]);
        acc *= scale;
        if (v.first == 0 && v.second == 0) acc = acc.real();
        f.set(v, acc);
    }
    return f;
}

CirclePoly::CirclePoly(std::vector<std::complex<double>> coefficients) : c_(std::move(coefficients)) {
    if (c_.empty()) throw InvalidArgument("circle polynomial needs a constant term");
    c_[0] = c_[0].real();
}

double CirclePoly::evaluate(double x) const {
    double s = c_[0].real();
    for (std::size_t k = 1; k < c_.size(); ++k) {
        const double p = static_cast<double>(k) * x;
        s += 2.0 * (c_[k].real() * std::cos(p) - c_[k].imag() * std::sin(p));
    }
    return s;
}

double CirclePoly::derivative(double x) const {
    double s = 0.0;
    for (std::size_t k = 1; k < c_.size(); ++k) {
        const double kk = static_cast<double>(k);
        const double p = kk * x;
        s += 2.0 * kk * (-c_[k].real() * std::sin(p) - c_[k].imag() * std::cos(p));
    }
    return s;
}

double CirclePoly::l2_norm() const {
    double s = std::norm(c_[0]);
    for (std::size_t k = 1; k < c_.size(); ++k) s += 2.0 * std::norm(c_[k]);
    return std::sqrt(kTwoPi * s);
}

double CirclePoly::total_variation() const {
    const int nodes = 128 * (degree() + 1);
    std::vector<double> extrema;
    double prev_x = 0.0;
    double prev_d = derivative(0.0);
    for (int i = 1; i <= nodes; ++i) {
        const double x = kTwoPi * i / nodes;
        const double d = derivative(x);
        if ((prev_d > 0.0 && d <= 0.0) || (prev_d < 0.0 && d >= 0.0)) {
            double lo = prev_x;
            double hi = x;
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double dm = derivative(mid);
                if ((dm > 0.0) == (prev_d > 0.0) && dm != 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            extrema.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_d = d;
    }
    if (extrema.size() < 2) return 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < extrema.size(); ++i)
        var += std::abs(evaluate(extrema[(i + 1) % extrema.size()]) - evaluate(extrema[i]));
    return var;
}

CircleField CirclePoly::sample(std::size_t nodes) const {
    std::vector<double> v(nodes);
    for (std::size_t i = 0; i < nodes; ++i) v[i] = evaluate(kTwoPi * static_cast<double>(i) / static_cast<double>(nodes));
    return CircleField(std::move(v));
}

CirclePoly random_circle_poly(double lambda, std::uint64_t seed) {
    if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be non-negative");
    const int K = static_cast<int>(std::floor(std::sqrt(lambda) + 1e-12));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<std::complex<double>> c(K + 1);
    c[0] = normal(rng);
    for (int k = 1; k <= K; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        c[k] = {re, im};
    }
    CirclePoly p(c);
    const double norm = p.l2_norm();
    for (auto& x : c) x /= norm;
    return CirclePoly(std::move(c));
}

}  // namespace eigenbar
