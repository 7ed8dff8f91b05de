#include "hypcat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hypcat {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1,1]. Positive abscissae;
// even indices are the embedded Gauss nodes.
constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double gauss;
};

PanelResult gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double k = fc * kKronrodW[7];
    double g = fc * kGaussW[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kKronrodX[i];
        const double fsum = f(c - dx) + f(c + dx);
        k += fsum * kKronrodW[i];
        if (i % 2 == 1) g += fsum * kGaussW[i / 2];
    }
    return {k * h, g * h};
}

struct Panel {
    double a, b, value, err;
};

} // namespace

double integrate(const Fn1& f, double lo, double hi, const Tolerance& tol) {
    if (!(lo <= hi))
        throw DomainError("integrate: lo=" + std::to_string(lo) + " exceeds hi=" +
                          std::to_string(hi));
    if (lo == hi) return 0.0;

    auto eval = [&](double a, double b) -> Panel {
        const PanelResult r = gk15(f, a, b);
        return {a, b, r.kronrod, std::abs(r.kronrod - r.gauss)};
    };
    std::vector<Panel> panels{eval(lo, hi)};
    for (int splits = 0;; ++splits) {
        double total = 0.0, total_err = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            total_err += p.err;
        }
        if (total_err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total)))
            return total;
        if (splits >= tol.max_subdiv)
            throw NonConvergence("integrate: error estimate " + std::to_string(total_err) +
                                 " above tolerance after " + std::to_string(tol.max_subdiv) +
                                 " subdivisions");
        auto worst = std::max_element(
            panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.err < y.err; });
        const double a = worst->a, b = worst->b;
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) return total; // panel at machine resolution
        *worst = eval(a, mid);
        panels.push_back(eval(mid, b));
    }
}

Bracket make_bracket(const Fn1& f, double lo, double hi) {
    if (!(lo < hi))
        throw InvalidBracket("make_bracket: lo must be below hi");
    Bracket br{lo, hi, f(lo), f(hi)};
    if (br.f_lo * br.f_hi > 0.0)
        throw InvalidBracket("make_bracket: no sign change on [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
    return br;
}

double find_root(const Fn1& f, const Bracket& bracket, const Tolerance& tol) {
    if (!(bracket.lo < bracket.hi) || bracket.f_lo * bracket.f_hi > 0.0)
        throw InvalidBracket("find_root: bracket endpoints do not straddle a root");
    if (bracket.f_lo == 0.0) return bracket.lo;
    if (bracket.f_hi == 0.0) return bracket.hi;

    // Brent: inverse quadratic / secant steps with a bisection guarantee.
    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    double c = a, fc = fa;
    double d = b - a, e = d;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) +
                            0.5 * std::max(tol.abs_tol, tol.rel_tol * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) { // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else { // inverse quadratic
                const double qq = fa / fc;
                const double rr = fb / fc;
                p = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw NonConvergence("find_root: no convergence in " + std::to_string(tol.max_iter) +
                         " iterations");
}

Bracket expand_bracket(const Fn1& f, double seed, Direction direction, const Tolerance& tol) {
    const double f_seed = f(seed);
    const double sign = (direction == Direction::up) ? 1.0 : -1.0;
    double step = 0.25 * std::max(1.0, std::abs(seed));
    double x_prev = seed, f_prev = f_seed;
    for (int iter = 0; iter < tol.max_iter; ++iter) {
        const double x = seed + sign * step;
        const double fx = f(x);
        if (fx == 0.0 || fx * f_seed < 0.0) {
            if (direction == Direction::up) return Bracket{x_prev, x, f_prev, fx};
            return Bracket{x, x_prev, fx, f_prev};
        }
        x_prev = x;
        f_prev = fx;
        step *= 2.0;
        if (!std::isfinite(seed + sign * step))
            throw NoSignChange("expand_bracket: ray exhausted without sign change");
    }
    throw NoSignChange("expand_bracket: no sign change within " +
                       std::to_string(tol.max_iter) + " doublings from seed " +
                       std::to_string(seed));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// 5th-order weights are row kA[6]; the embedded 4th-order error weights:
constexpr double kE[7] = {71.0 / 57600,  0.0,           -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

class Dopri5 {
  public:
    Dopri5(const OdeRhs& rhs, int dim, const Tolerance& tol)
        : rhs_(rhs), dim_(dim), atol_(tol.abs_tol), rtol_(tol.rel_tol) {
        for (auto& k : k_) k.resize(dim_);
        ytmp_.resize(dim_);
    }

    // Advances y from s to s_end (either direction); observer may be null.
    void run(double& s, std::vector<double>& y, double s_end, const OdeObserver* observer) {
        const double span = s_end - s;
        if (span == 0.0) return;
        const double dir = span > 0.0 ? 1.0 : -1.0;
        if (!have_h_) {
            h_ = span / 100.0;
            have_h_ = true;
        }
        if (h_ * dir <= 0.0) h_ = -h_;
        rhs_(s, y.data(), k_[0].data()); // FSAL seed
        while ((s_end - s) * dir > 0.0) {
            const double eps = std::numeric_limits<double>::epsilon();
            if (std::abs(h_) < 4.0 * eps * std::max(1.0, std::abs(s)))
                throw StepUnderflow("ode_solve: step underflow at s=" + std::to_string(s));
            double h = h_;
            bool clipped = false;
            if ((s + h - s_end) * dir > 0.0) {
                h = s_end - s;
                clipped = true;
            }
            // stages 2..7 (k_[0] is FSAL from the previous accepted step)
            for (int i = 1; i < 7; ++i) {
                for (int j = 0; j < dim_; ++j) {
                    double acc = y[j];
                    for (int l = 0; l < i; ++l) acc += h * kA[i][l] * k_[l][j];
                    ytmp_[j] = acc;
                }
                rhs_(s + kC[i] * h, ytmp_.data(), k_[i].data());
            }
            // 5th-order solution is stage-7 state; error from kE weights
            double err = 0.0;
            for (int j = 0; j < dim_; ++j) {
                double e = 0.0;
                for (int l = 0; l < 7; ++l) e += kE[l] * k_[l][j];
                e *= h;
                // ytmp_ currently holds the stage-7 state = 5th-order y_new
                const double sc = atol_ + rtol_ * std::max(std::abs(y[j]), std::abs(ytmp_[j]));
                const double q = e / sc;
                err += q * q;
            }
            err = std::sqrt(err / dim_);
            if (err <= 1.0) { // accept
                s += h;
                y = ytmp_;
                k_[0] = k_[6]; // FSAL
                if (observer) (*observer)(s, y.data());
                double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                fac = std::clamp(fac, 0.2, rejected_ ? 1.0 : 5.0);
                rejected_ = false;
                if (!clipped) h_ = h * fac; // clipped legs keep their momentum
            } else { // reject; k_[0] at (s, y) is still valid
                rejected_ = true;
                h_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            }
        }
    }

  private:
    const OdeRhs& rhs_;
    int dim_;
    double atol_, rtol_;
    double h_ = 0.0;
    bool have_h_ = false;
    bool rejected_ = false;
    std::vector<double> k_[7];
    std::vector<double> ytmp_;
};

} // namespace

std::vector<double> ode_solve(const OdeRhs& rhs, int dim, double s_from, double s_to,
                              std::vector<double> y0, const Tolerance& tol) {
    Dopri5 stepper(rhs, dim, tol);
    double s = s_from;
    stepper.run(s, y0, s_to, nullptr);
    return y0;
}

std::vector<double> ode_solve_observed(const OdeRhs& rhs, int dim, double s_from,
                                       double s_to, std::vector<double> y0,
                                       const Tolerance& tol, const OdeObserver& observer) {
    Dopri5 stepper(rhs, dim, tol);
    double s = s_from;
    observer(s, y0.data());
    stepper.run(s, y0, s_to, &observer);
    return y0;
}

std::vector<double> ode_solve_at(const OdeRhs& rhs, int dim, double s_from,
                                 const std::vector<double>& targets,
                                 std::vector<double> y0, const Tolerance& tol,
                                 const OdeObserver& visit) {
    Dopri5 stepper(rhs, dim, tol);
    double s = s_from;
    for (double t : targets) {
        stepper.run(s, y0, t, nullptr);
        s = t; // run() lands exactly on t up to the clip arithmetic
        visit(t, y0.data());
    }
    return y0;
}

double gamma_ln(double x) {
    if (!(x > 0.0))
        throw DomainError("gamma_ln: requires x > 0, got " + std::to_string(x));
    static const double cof[14] = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
        0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double y = x;
    double tmp = x + 5.24218750000000000; // 671/128
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / ++y;
    return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_fn(double x) {
    return std::exp(gamma_ln(x));
}

} // namespace hypcat
