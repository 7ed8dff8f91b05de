#pragma once

#include "hypcat/free_boundary.hpp"

#include <string>
#include <vector>

namespace hypcat {

// Constants governing both ends of the parameter range. Large a:
// s0(a) = ln a + s0_shift + o(1) and r(a) = (3/2) ln a + d_inf + o(1).
// Degenerate end (eps = a - 1/2 -> 0): s0 = rho_star sqrt(eps) (1+o(1))
// and r = c_star sqrt(eps) (1+o(1)).
struct AsymptoticConstants {
    double I_inf = 0.0;       // int_0^inf cosh(2t)^{-3/2} dt = Gamma(3/4)^2 / sqrt(2 pi)
    double d_inf = 0.0;       // ln(2 sqrt(2 pi) / Gamma(3/4)^2)
    double s0_shift = 0.0;    // ln(sqrt(2) / I_inf)
    double sigma_star = 0.0;  // unique positive root of sigma = coth(sigma)
    double rho_star = 0.0;    // sinh(sigma_star)
    double c_star = 0.0;      // sigma_star cosh(sigma_star) = rho_star + 1/rho_star
};

// Gamma closed forms plus one bracketed root solve; tol controls the root.
AsymptoticConstants constants(const Tolerance& tol = {});

// Dual-route check on I_inf: adaptive quadrature of cosh(2t)^{-3/2} on
// [0, 30] (the discarded tail is below 2^{3/2} e^{-90} / 3 < 1e-38) against
// the closed form. gap = quadrature_value - closed_form.
struct IInfCheck {
    double quadrature_value = 0.0;
    double closed_form = 0.0;
    double gap = 0.0;
};
IInfCheck verify_I_inf(const Tolerance& tol = {});

// One convergence measurement: value should approach target; gap is the
// signed difference and gap_scaled rescales it by the claimed remainder
// rate (gap * a on the large-a side, gap / sqrt(eps) on the degenerate
// side). quantity names what the row tracks ("r" or "s0").
struct ConvergenceRow {
    double a = 0.0;
    std::string quantity;
    double value = 0.0;
    double target = 0.0;
    double gap = 0.0;
    double gap_scaled = 0.0;
};

// Two rows per grid point: r(a) - (3/2) ln a against d_inf, and
// s0(a) - ln a against s0_shift. Grid must lie in [1e2, 1e6].
std::vector<ConvergenceRow> large_a_table(const std::vector<double>& a_grid,
                                          const Tolerance& tol = {});

// Two rows per grid point at a = 1/2 + eps: r/sqrt(eps) against c_star and
// s0/sqrt(eps) against rho_star. Grid must lie in [1e-8, 1e-2].
std::vector<ConvergenceRow> degenerate_table(const std::vector<double>& eps_grid,
                                             const Tolerance& tol = {});

// Least-squares slope of y against 1/a through the origin, with y the
// remainder r - (3/2) ln a - d_inf. fit_residual is the root-mean-square
// misfit in y units. No closed-form target exists for d1_hat; it is an
// empirical estimate only.
struct D1Fit {
    double d1_hat = 0.0;
    double fit_residual = 0.0;
};

// Regression core on caller-supplied radii (also used to validate the fit
// on synthetic data). Needs >= 4 points; throws IllConditionedFit when the
// grid spans less than one decade.
D1Fit fit_d1(const std::vector<double>& a_grid, const std::vector<double>& r_values);

// Full-pipeline estimate: computes r(a) on the grid (restricted to
// [1e3, 1e6]) and fits.
D1Fit estimate_d1(const std::vector<double>& a_grid, const Tolerance& tol = {});

} // namespace hypcat
