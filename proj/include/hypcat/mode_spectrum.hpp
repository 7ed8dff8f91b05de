#pragma once

#include "hypcat/free_boundary.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hypcat {

// Mode-k radial eigenvalue problem on [-s0, s0]:
//   -(B f')' + q f = mu B f,   q(s) = B (2 + k^2/B^2 - |II|^2),
// with Robin closure f'(+-s0) = +-coth(r) f(+-s0) (outward derivative equals
// coth(r) f at both ends). Leading coefficient and weight both equal B.
struct SLProblem {
    CatenoidParams params;
    int k = 0;
    double s0 = 0.0;
    double robin_coef = 0.0;  // coth r(a)

    double leading(double s) const;    // p(s) = B(s)
    double weight(double s) const;     // w(s) = B(s)
    double potential(double s) const;  // q(s)
};

// Assembles the problem, solving the free boundary for s0 and r.
SLProblem build_problem(const CatenoidParams& params, int k, const Tolerance& tol = {});

enum class Parity { even, odd };

// Endpoint data of the parity shot from s = 0 with Cauchy data (1,0) for
// even, (0,1) for odd: values at s0 and the count of zeros in (0, s0).
// The Robin mismatch is rho = fp_s0 - robin_coef * f_s0.
struct ShotResult {
    double f_s0 = 0.0;
    double fp_s0 = 0.0;
    int n_zeros_half = 0;
};

ShotResult shoot_parity(const SLProblem& problem, Parity parity, double mu,
                        const Tolerance& tol = {});

struct SLEigenpair {
    double mu = 0.0;
    int n_zeros = 0;  // interior zeros on (-s0, s0), full interval
    Parity parity = Parity::even;
    std::vector<std::pair<double, double>> samples;  // (s, f(s)), max-norm 1
    double robin_residual = 0.0;                     // f'(s0) - coth(r) f(s0)
};

// Every eigenvalue mu < mu_max, both parities merged and sorted. Brackets
// come from jumps of the interior zero count (a nondecreasing step function
// of mu); the search floor is certified by a zero-count-free, positive-
// mismatch probe below min(q/w). Throws IncompleteSpectrum if an isolated
// jump cannot be matched with a mismatch sign change.
std::vector<SLEigenpair> eigenvalues_below(const SLProblem& problem, double mu_max,
                                           const Tolerance& tol = {});

// Independent oracle: symmetric second-order finite differences on a uniform
// n_grid-point grid over [-s0, s0], Robin boundary closed so the discrete
// operator stays symmetric; returns the lowest m_eigs eigenvalues.
std::vector<double> fd_spectrum(const SLProblem& problem, int n_grid, int m_eigs);

// Integrates both parity solutions jointly at the given mu and tracks the
// product B * (f_e f_o' - f_o f_e'), which is conserved along s; returns the
// largest observed departure from its s=0 value, and that value.
struct WronskianDiag {
    double max_drift = 0.0;
    double w_value = 0.0;
};
WronskianDiag wronskian_diag(const SLProblem& problem, double mu, const Tolerance& tol = {});

// A scalar field sampled on a tensor grid: ns uniform s-nodes spanning
// [-s0, s0] (endpoints included) by ntheta uniform angles on [0, 2pi)
// (periodic, no duplicate column). values is row-major in (i_s, i_theta).
struct SurfaceGrid {
    double s0 = 0.0;
    int ns = 0;
    int ntheta = 0;
    std::vector<double> values;

    double s_at(int i) const;
    double theta_at(int j) const;
    double& at(int i, int j);
    double at(int i, int j) const;
};

SurfaceGrid make_surface_grid(double s0, int ns, int ntheta);

// Second-variation quadratic form
//   S(u,u) = int (|grad u|^2 - (|II|^2 - 2) u^2) dA - coth(r) oint u^2 dL,
// with dA = B ds dtheta and both boundary circles carrying dL = B(s0) dtheta.
// Derivatives by second-order differences (one-sided at the s-ends,
// periodic in theta); integrals by trapezoid in s, uniform rule in theta.
double quadratic_form(const CatenoidParams& params, const SurfaceGrid& u,
                      const Tolerance& tol = {});

// Squared L2 norm int u^2 dA on the same grid and rules.
double surface_norm2(const CatenoidParams& params, const SurfaceGrid& u,
                     const Tolerance& tol = {});

// One row per (a, k): count of radial eigenvalues below -1e-6, dimension of
// the radial kernel (|mu| < 1e-6), and the two lowest eigenvalues. Angular
// multiplicity (1 for k=0, 2 for k>=1) is applied by consumers when
// totaling. complete=false marks rows whose eigenvalue search failed.
struct ModeIndexRow {
    double a = 0.0;
    int k = 0;
    int n_negative_radial = 0;
    int kernel_dim_radial = 0;
    double mu0 = 0.0;
    double mu1 = 0.0;
    bool complete = false;
};

std::vector<ModeIndexRow> mode_index_table(const std::vector<double>& a_grid, int k_max,
                                           const Tolerance& tol = {});

} // namespace hypcat
