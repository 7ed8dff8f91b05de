#pragma once

#include <functional>
#include <vector>

#include "hypcat/errors.hpp"

namespace hypcat {

struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iter = 200;
    int max_subdiv = 2000;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;
};

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [lo, hi].
// Stops when the summed per-panel error estimate drops below
// max(abs_tol, rel_tol*|result|); throws NonConvergence if max_subdiv
// panel splits cannot get there.
double integrate(const Fn1& f, double lo, double hi, const Tolerance& tol = {});

// Validates endpoint values; tolerates an exact zero at either end.
Bracket make_bracket(const Fn1& f, double lo, double hi);

// Brent's method on a sign-changing bracket; terminates when the bracket
// width falls below max(abs_tol, rel_tol*|x|) + machine slack.
double find_root(const Fn1& f, const Bracket& bracket, const Tolerance& tol = {});

enum class Direction { up, down };

// Probes x_k = seed +/- step*(2^k - 1), step doubling each time, until f
// changes sign against f(seed); throws NoSignChange after max_iter doublings.
Bracket expand_bracket(const Fn1& f, double seed, Direction direction,
                       const Tolerance& tol = {});

// RHS convention: rhs(s, y, dy) fills dy[0..dim).
using OdeRhs = std::function<void(double s, const double* y, double* dy)>;

// Dormand-Prince 5(4) with PI-free step control; returns y(s_to).
std::vector<double> ode_solve(const OdeRhs& rhs, int dim, double s_from, double s_to,
                              std::vector<double> y0, const Tolerance& tol = {});

// Same stepper, invoking observer(s, y) at the initial point and after every
// accepted step. Used by shooting to count sign changes along the way.
using OdeObserver = std::function<void(double s, const double* y)>;
std::vector<double> ode_solve_observed(const OdeRhs& rhs, int dim, double s_from,
                                       double s_to, std::vector<double> y0,
                                       const Tolerance& tol, const OdeObserver& observer);

// Integrates through an ascending list of targets, landing on each exactly
// and invoking visit(target, y) there. Step size carries over between legs.
std::vector<double> ode_solve_at(const OdeRhs& rhs, int dim, double s_from,
                                 const std::vector<double>& targets,
                                 std::vector<double> y0, const Tolerance& tol,
                                 const OdeObserver& visit);

// ln Gamma(x) for x > 0 (Lanczos); relative error ~1e-15.
double gamma_ln(double x);

// Gamma(x) for x > 0; relative error <= 1e-13 on [1/8, 20].
double gamma_fn(double x);

} // namespace hypcat
