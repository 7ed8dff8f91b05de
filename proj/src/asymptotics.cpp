#include "hypcat/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace hypcat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_grid(const std::vector<double>& grid, double lo, double hi, const char* what) {
    if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
    for (double g : grid)
        if (!(g >= lo * (1.0 - 1e-12)) || !(g <= hi * (1.0 + 1e-12)))
            throw DomainError(std::string(what) + " grid point " + std::to_string(g) +
                              " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

} // namespace

AsymptoticConstants constants(const Tolerance& tol) {
    AsymptoticConstants c;
    const double lg34 = gamma_ln(0.75);
    c.I_inf = std::exp(2.0 * lg34 - 0.5 * std::log(kTwoPi));
    c.d_inf = std::log(2.0) + 0.5 * std::log(kTwoPi) - 2.0 * lg34;
    c.s0_shift = 0.5 * std::log(2.0) - std::log(c.I_inf);

    // sigma - coth(sigma) is strictly increasing and changes sign on [1, 1.5]
    Tolerance root_tol = tol;
    root_tol.abs_tol = std::min(tol.abs_tol, 1e-15);
    root_tol.rel_tol = std::min(tol.rel_tol, 1e-15);
    const auto fixed_point = [](double sigma) { return sigma - 1.0 / std::tanh(sigma); };
    c.sigma_star = find_root(fixed_point, make_bracket(fixed_point, 1.0, 1.5), root_tol);
    c.rho_star = std::sinh(c.sigma_star);
    c.c_star = c.sigma_star * std::cosh(c.sigma_star);
    return c;
}

IInfCheck verify_I_inf(const Tolerance& tol) {
    IInfCheck chk;
    chk.quadrature_value =
        integrate([](double t) { return std::pow(std::cosh(2.0 * t), -1.5); }, 0.0, 30.0, tol);
    chk.closed_form = std::exp(2.0 * gamma_ln(0.75) - 0.5 * std::log(kTwoPi));
    chk.gap = chk.quadrature_value - chk.closed_form;
    return chk;
}

std::vector<ConvergenceRow> large_a_table(const std::vector<double>& a_grid,
                                          const Tolerance& tol) {
    check_grid(a_grid, 1e2, 1e6, "large-a");
    const AsymptoticConstants c = constants(tol);
    std::vector<ConvergenceRow> rows;
    rows.reserve(2 * a_grid.size());
    for (double a : a_grid) {
        const FreeBoundarySolution sol = radius(make_params(a), tol);
        ConvergenceRow r_row;
        r_row.a = a;
        r_row.quantity = "r";
        r_row.value = sol.r - 1.5 * std::log(a);
        r_row.target = c.d_inf;
        r_row.gap = r_row.value - r_row.target;
        r_row.gap_scaled = r_row.gap * a;
        rows.push_back(r_row);

        ConvergenceRow s_row;
        s_row.a = a;
        s_row.quantity = "s0";
        s_row.value = sol.s0 - std::log(a);
        s_row.target = c.s0_shift;
        s_row.gap = s_row.value - s_row.target;
        s_row.gap_scaled = s_row.gap * a;
        rows.push_back(s_row);
    }
    return rows;
}

std::vector<ConvergenceRow> degenerate_table(const std::vector<double>& eps_grid,
                                             const Tolerance& tol) {
    check_grid(eps_grid, 1e-8, 1e-2, "degenerate");
    const AsymptoticConstants c = constants(tol);
    std::vector<ConvergenceRow> rows;
    rows.reserve(2 * eps_grid.size());
    for (double eps : eps_grid) {
        const double a = 0.5 + eps;
        const double root_eps = std::sqrt(eps);
        const FreeBoundarySolution sol = radius(make_params(a), tol);
        ConvergenceRow r_row;
        r_row.a = a;
        r_row.quantity = "r";
        r_row.value = sol.r / root_eps;
        r_row.target = c.c_star;
        r_row.gap = r_row.value - r_row.target;
        r_row.gap_scaled = r_row.gap / root_eps;
        rows.push_back(r_row);

        ConvergenceRow s_row;
        s_row.a = a;
        s_row.quantity = "s0";
        s_row.value = sol.s0 / root_eps;
        s_row.target = c.rho_star;
        s_row.gap = s_row.value - s_row.target;
        s_row.gap_scaled = s_row.gap / root_eps;
        rows.push_back(s_row);
    }
    return rows;
}

D1Fit fit_d1(const std::vector<double>& a_grid, const std::vector<double>& r_values) {
    if (a_grid.size() != r_values.size())
        throw DomainError("fit needs one radius per grid point");
    if (a_grid.size() < 4)
        throw DomainError("fit needs at least 4 grid points, got " +
                          std::to_string(a_grid.size()));
    const auto [lo, hi] = std::minmax_element(a_grid.begin(), a_grid.end());
    if (*hi < 10.0 * *lo)
        throw IllConditionedFit("grid spans less than a decade: [" + std::to_string(*lo) +
                                ", " + std::to_string(*hi) + "]");

    const double d_inf = constants().d_inf;
    double sxx = 0.0, sxy = 0.0;
    std::vector<double> x(a_grid.size()), y(a_grid.size());
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        x[i] = 1.0 / a_grid[i];
        y[i] = r_values[i] - 1.5 * std::log(a_grid[i]) - d_inf;
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    D1Fit fit;
    fit.d1_hat = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double res = y[i] - fit.d1_hat * x[i];
        ss += res * res;
    }
    fit.fit_residual = std::sqrt(ss / double(x.size()));
    return fit;
}

D1Fit estimate_d1(const std::vector<double>& a_grid, const Tolerance& tol) {
    check_grid(a_grid, 1e3, 1e6, "d1 fit");
    std::vector<double> r_values(a_grid.size());
    for (std::size_t i = 0; i < a_grid.size(); ++i)
        r_values[i] = radius(make_params(a_grid[i]), tol).r;
    return fit_d1(a_grid, r_values);
}

} // namespace hypcat
