#include "hypcat/catenoid.hpp"

#include <cmath>

namespace hypcat {

namespace {

// Profile squares in cancellation-free form: cosh(2s) = 1 + 2 sinh^2(s), so
//   A^2 = (a + 1/2) + 2a sinh^2 s,   B^2 = (a - 1/2) + 2a sinh^2 s.
// Near the degenerate end a -> 1/2 the naive a*cosh(2s) - 1/2 loses all
// significance at the neck; these forms keep every term nonnegative.
double a_sq(const CatenoidParams& p, double s) {
    const double sh = std::sinh(s);
    return (p.a + 0.5) + 2.0 * p.a * sh * sh;
}

double b_sq(const CatenoidParams& p, double s) {
    const double sh = std::sinh(s);
    return (p.a - 0.5) + 2.0 * p.a * sh * sh;
}

// d(phi)/ds = K / (A^2 B).
double phi_rate(const CatenoidParams& p, double t) {
    return p.K / (a_sq(p, t) * std::sqrt(b_sq(p, t)));
}

// phi(s) = sign(s) * int_0^|s| K/(A^2 B) dt. Integrating from 0 outward and
// odd-extending keeps phi(-s) = -phi(s) exact.
double phi_profile(const CatenoidParams& p, double s, const Tolerance& tol) {
    if (s == 0.0) return 0.0;
    const double half = integrate([&](double t) { return phi_rate(p, t); }, 0.0,
                                  std::fabs(s), tol);
    return std::copysign(half, s);
}

void check_meridian_range(double s) {
    if (!(std::fabs(s) <= 300.0))
        throw DomainError("meridian coordinate out of range: |s| <= 300 required, got s = " +
                          std::to_string(s));
}

} // namespace

double profile_b_sq(const CatenoidParams& params, double s) {
    return b_sq(params, s);
}

CatenoidParams make_params(double a) {
    if (!(a > 0.5 + 1e-9))
        throw DomainError("catenoid parameter must satisfy a > 1/2 + 1e-9, got a = " +
                          std::to_string(a));
    // (a-1/2)(a+1/2) = a^2 - 1/4 without cancellation near a = 1/2.
    return {a, std::sqrt((a - 0.5) * (a + 0.5))};
}

MeridianState meridian_state(const CatenoidParams& params, double s, const Tolerance& tol) {
    check_meridian_range(s);
    MeridianState st;
    st.s = s;
    st.A = std::sqrt(a_sq(params, s));
    st.B = std::sqrt(b_sq(params, s));
    const double sh2 = params.a * std::sinh(2.0 * s);
    st.A_prime = sh2 / st.A;
    st.B_prime = sh2 / st.B;
    st.phi = phi_profile(params, s, tol);
    const double b2 = st.B * st.B;
    st.II_sq = 2.0 * params.K * params.K / (b2 * b2);
    return st;
}

AmbientPoint embed(const CatenoidParams& params, double s, double theta, const Tolerance& tol) {
    const MeridianState st = meridian_state(params, s, tol);
    return {st.A * std::cosh(st.phi), st.A * std::sinh(st.phi),
            st.B * std::cos(theta), st.B * std::sin(theta)};
}

NormalVector unit_normal(const CatenoidParams& params, double s, double theta,
                         const Tolerance& tol) {
    const MeridianState st = meridian_state(params, s, tol);
    const double ch = std::cosh(st.phi);
    const double sh = std::sinh(st.phi);
    // Along theta = 0:
    //   n0 = K cosh(phi)/A - a sinh(2s) sinh(phi)/(AB),
    //   n1 = K sinh(phi)/A - a sinh(2s) cosh(phi)/(AB),
    //   n2 = K/B,  n3 = 0;
    // then rotate (n2, n3) with the surface.
    const double q = params.a * std::sinh(2.0 * s) / (st.A * st.B);
    const double n0 = params.K * ch / st.A - q * sh;
    const double n1 = params.K * sh / st.A - q * ch;
    const double n2_axis = params.K / st.B;
    return {n0, n1, n2_axis * std::cos(theta), n2_axis * std::sin(theta)};
}

double fstar(const CatenoidParams& params, double s, const Tolerance& tol) {
    const MeridianState st = meridian_state(params, s, tol);
    return (params.K * std::sinh(st.phi) +
            params.a * st.B * std::sinh(2.0 * s) * std::cosh(st.phi)) /
           (st.A * st.B);
}

double killing_jacobi(const CatenoidParams& params, Killing generator, double s,
                      double theta, const Tolerance& tol) {
    const AmbientPoint x = embed(params, s, theta, tol);
    const NormalVector nu = unit_normal(params, s, theta, tol);
    // Components of the generator's vector field at x.
    double v0 = 0.0, v1 = 0.0, v2 = 0.0, v3 = 0.0;
    switch (generator) {
    case Killing::L12:
        v1 = -x.x2;
        v2 = x.x1;
        break;
    case Killing::L13:
        v1 = -x.x3;
        v3 = x.x1;
        break;
    case Killing::L23:
        v2 = -x.x3;
        v3 = x.x2;
        break;
    }
    return -v0 * nu.n0 + v1 * nu.n1 + v2 * nu.n2 + v3 * nu.n3;
}

double laplace_eigen_residual(const CatenoidParams& params, double s, const Tolerance& tol,
                              double h) {
    // x0(s) = A cosh(phi); the rotationally invariant Laplacian is
    // (1/B)(B x0')', discretized by the conservative compact stencil
    //   [B(s+h/2)(x0(s+h)-x0(s)) - B(s-h/2)(x0(s)-x0(s-h))] / h^2.
    // phi at the three sample points is assembled from one base quadrature
    // plus short-interval increments, so the base error is common to all
    // three values and cancels in the second difference.
    const double phi_m = phi_profile(params, s - h, tol);
    const Tolerance inc{1e-15, 1e-15, tol.max_iter, tol.max_subdiv};
    const auto rate = [&](double t) { return phi_rate(params, t); };
    const double phi_0 = phi_m + integrate(rate, s - h, s, inc);
    const double phi_p = phi_0 + integrate(rate, s, s + h, inc);

    const double x0_m = std::sqrt(a_sq(params, s - h)) * std::cosh(phi_m);
    const double x0_0 = std::sqrt(a_sq(params, s)) * std::cosh(phi_0);
    const double x0_p = std::sqrt(a_sq(params, s + h)) * std::cosh(phi_p);

    const double b_minus = std::sqrt(b_sq(params, s - 0.5 * h));
    const double b_plus = std::sqrt(b_sq(params, s + 0.5 * h));
    const double flux = (b_plus * (x0_p - x0_0) - b_minus * (x0_0 - x0_m)) / (h * h);
    return flux / std::sqrt(b_sq(params, s)) - 2.0 * x0_0;
}

} // namespace hypcat
