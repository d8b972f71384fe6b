#pragma once

#include <span>
#include <vector>

#include "eigenbar/trig_poly.hpp"

namespace eigenbar {

/// Radial kernels of the Korovkin mean. U is the first Dirichlet eigenfunction of the
/// disk of radius 1/2 with unit L2 norm, V its extension by zero, W = V * V tabulated
/// on [0, 1] and interpolated by cubic Catmull-Rom segments.
class KorovkinKernel {
public:
    KorovkinKernel() = default;  // uninitialised; korovkin_mean refuses it

    static KorovkinKernel create(int resolution = 4096);

    bool initialized() const { return !table_.empty(); }
    int resolution() const { return static_cast<int>(table_.size()); }
    double j01() const { return j01_; }
    // Scale of the mean: 2 j01, the square root of the first Dirichlet eigenvalue.
    double c0() const { return 2.0 * j01_; }
    double u(double r) const;
    double w(double rho) const;
    // W(rho) straight from the quadrature, without the table.
    double w_direct(double rho) const;
    const std::vector<double>& table() const { return table_; }

private:
    double j01_ = 0.0;
    double u_scale_ = 0.0;
    std::vector<double> table_;
};

/// Kernel with the default resolution, built once on first use.
const KorovkinKernel& shared_korovkin_kernel();

/// h with c_v(h) = c_v(f) W(v / sqrt(lambda)) for |v| <= sqrt(lambda).
TrigPoly korovkin_mean(const TrigPoly& f, double lambda, const KorovkinKernel& kernel);
/// Same for an n x n grid field through its discrete Fourier coefficients.
TrigPoly korovkin_mean(std::span<const double> grid, int n, double lambda, const KorovkinKernel& kernel);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace eigenbar
