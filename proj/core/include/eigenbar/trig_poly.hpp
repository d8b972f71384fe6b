#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "eigenbar/surface.hpp"

namespace eigenbar {

/// Deterministic child seed (splitmix64 mixing) for sample `b` of group `a`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

/// Real trigonometric polynomial on R^2 / (2 pi Z)^2 stored by its Fourier coefficients
/// c_v, with c_{-v} = conj(c_v) maintained on every write.
class TrigPoly {
public:
    using Freq = std::pair<int, int>;

    // Sets c_v and its conjugate partner. c_0 must be real.
    void set(Freq v, std::complex<double> c);
    std::complex<double> coefficient(Freq v) const;
    const std::map<Freq, std::complex<double>>& coefficients() const { return coeffs_; }
    int max_radius_sq() const;
    bool empty() const { return coeffs_.empty(); }

    double evaluate(double x, double y) const;
    // Values at (2 pi i / n, 2 pi j / n), index j * n + i.
    std::vector<double> sample_grid(int n) const;
    ScalarField to_field(const SurfacePtr& torus_grid) const;

    TrigPoly scaled(double factor) const;
    TrigPoly operator+(const TrigPoly& other) const;
    TrigPoly operator-(const TrigPoly& other) const;

    // Throws InternalError if conjugate symmetry is broken.
    void check_symmetry(double tol = 1e-14) const;

private:
    std::map<Freq, std::complex<double>> coeffs_;
};

double l2_norm(const TrigPoly& f);
double laplacian_l2_norm(const TrigPoly& f);

/// (1/pi) sin(n x) cos(n y): unit norm, eigenvalue 2 n^2.
TrigPoly torus_eigenfunction(int n);

/// Lattice vectors with |v|^2 <= radius_sq.
std::vector<TrigPoly::Freq> lattice_disk(double radius_sq);

struct SpectralSample {
    TrigPoly f;
    double lambda = 0.0;
    double norm = 0.0;
    double laplacian_norm = 0.0;
};

/// Gaussian coefficients on |v|^2 <= radius_sq (conjugate symmetric), normalised to unit norm.
TrigPoly random_trig_poly(double radius_sq, std::uint64_t seed);

/// `count` random unit-norm combinations of eigenfunctions with eigenvalue <= lambda.
std::vector<SpectralSample> sample_f_lambda(double lambda, std::size_t count, std::uint64_t seed);

/// Discrete Fourier coefficients of an n x n grid field for |v|^2 <= radius_sq.
/// Frequencies beyond the Nyquist range alias.
TrigPoly dft_coefficients(std::span<const double> grid, int n, double radius_sq);

/// Real trigonometric polynomial on R / 2 pi Z: c[k] for k = 0..K, c_{-k} = conj(c_k).
class CirclePoly {
public:
    explicit CirclePoly(std::vector<std::complex<double>> coefficients);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<std::complex<double>>& coefficients() const { return c_; }
    double evaluate(double x) const;
    double derivative(double x) const;
    double l2_norm() const;
    // Total variation over one period, extrema located by bisection on f'.
    double total_variation() const;
    CircleField sample(std::size_t nodes) const;

private:
    std::vector<std::complex<double>> c_;
};

/// Unit-norm random circle polynomial with frequencies k^2 <= lambda.
CirclePoly random_circle_poly(double lambda, std::uint64_t seed);

}  // namespace eigenbar
