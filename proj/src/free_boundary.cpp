#include "hypcat/free_boundary.hpp"

#include <cmath>

namespace hypcat {

namespace {

// phi(s) for arbitrarily large s: the rate K/(A^2 B) decays like e^{-3s},
// so everything past s = 300 contributes less than e^{-900} and the profile
// can be read off at the clamp point without touching overflow territory.
double phi_clamped(const CatenoidParams& params, double s, const Tolerance& tol) {
    return meridian_state(params, std::min(s, 300.0), tol).phi;
}

} // namespace

double fb_residual(const CatenoidParams& params, double s, const Tolerance& tol) {
    if (!(s > 0.0))
        throw DomainError("free-boundary residual needs s > 0, got s = " + std::to_string(s));
    const double lhs = std::tanh(phi_clamped(params, s, tol));
    double rhs;
    if (s <= 300.0) {
        const MeridianState st = meridian_state(params, s, tol);
        rhs = st.B * params.K / (params.a * std::sinh(2.0 * s));
    } else {
        // B K/(a sinh 2s) -> K sqrt(2/a) e^{-s} as s -> infinity.
        rhs = params.K * std::sqrt(2.0 / params.a) * std::exp(-s);
    }
    return lhs - rhs;
}

double solve_s0(const CatenoidParams& params, const Tolerance& tol) {
    const auto residual = [&](double s) { return fb_residual(params, s, tol); };
    const double seed = 0.1 * std::min(1.0, 1.0 / std::sqrt(params.a));

    Bracket br;
    const double f_seed = residual(seed);
    if (f_seed == 0.0) return seed;
    if (f_seed < 0.0) {
        // Root lies above the seed; geometric expansion reaches ln(a)-sized
        // roots in a handful of doublings.
        br = expand_bracket(residual, seed, Direction::up, tol);
    } else {
        // Root lies between 0 and the seed (degenerate end, s0 ~ sqrt(a-1/2));
        // halve toward 0 instead of probing below it.
        double hi = seed, f_hi = f_seed, lo = seed;
        int iter = 0;
        for (;;) {
            lo = 0.5 * lo;
            const double f_lo = residual(lo);
            if (f_lo == 0.0) return lo;
            if (f_lo < 0.0) {
                br = Bracket{lo, hi, f_lo, f_hi};
                break;
            }
            hi = lo;
            f_hi = f_lo;
            if (++iter >= tol.max_iter)
                throw NoSignChange("free-boundary residual stayed positive down to s = " +
                                   std::to_string(lo));
        }
    }

    // Bracket width contract: <= 1e-13 * (1 + s0), independent of the
    // quadrature tolerance the caller picked for phi.
    Tolerance root_tol = tol;
    root_tol.abs_tol = 1e-13;
    root_tol.rel_tol = 1e-13;
    return find_root(residual, br, root_tol);
}

FreeBoundarySolution radius(const CatenoidParams& params, const Tolerance& tol) {
    FreeBoundarySolution sol;
    sol.a = params.a;
    sol.s0 = solve_s0(params, tol);

    const MeridianState st = meridian_state(params, sol.s0, tol);
    sol.phi_s0 = st.phi;
    sol.residual_fb =
        std::tanh(st.phi) - st.B * params.K / (params.a * std::sinh(2.0 * sol.s0));
    sol.residual_nu0 = unit_normal(params, sol.s0, 0.0, tol).n0;

    const double x = st.A * std::cosh(st.phi);
    // arccosh(x) = log(x + sqrt(x^2-1)); past x = 1e8 the sqrt adds nothing
    // representable beyond log(2x) (relative correction ~ x^{-2}/4 < 1e-17).
    sol.r = (x > 1e8) ? std::log(2.0 * x) : std::acosh(x);
    return sol;
}

double radius_derivative(const CatenoidParams& params, const Tolerance& tol) {
    const double h = 1e-6 * params.a;
    const FreeBoundarySolution hi = radius(make_params(params.a + h), tol);
    const FreeBoundarySolution lo = radius(make_params(params.a - h), tol);
    return (hi.r - lo.r) / (2.0 * h);
}

} // namespace hypcat
