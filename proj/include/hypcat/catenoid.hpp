#pragma once

#include "hypcat/numerics.hpp"

namespace hypcat {

// One member of the spherical catenoid family: the parameter a > 1/2 and
// the conserved rotation constant K = sqrt(a^2 - 1/4).
struct CatenoidParams {
    double a = 0.0;
    double K = 0.0;
};

// Validates a > 1/2 + 1e-9 (the neck radius B(0) degenerates at a = 1/2);
// throws DomainError otherwise.
CatenoidParams make_params(double a);

// Pointwise profile data at meridian arc-length coordinate s:
//   A^2 = a cosh(2s) + 1/2,  B^2 = a cosh(2s) - 1/2,
//   phi(s) = sign(s) * int_0^|s| K/(A^2 B) dt   (odd by construction),
//   II_sq = |II|^2 = 2 K^2 / B^4.
struct MeridianState {
    double s = 0.0;
    double A = 0.0;
    double B = 0.0;
    double A_prime = 0.0;
    double B_prime = 0.0;
    double phi = 0.0;
    double II_sq = 0.0;
};

// Throws DomainError for |s| > 300, where cosh(2s) leaves double range;
// far-tail quantities are handled in log-domain by the boundary solver.
MeridianState meridian_state(const CatenoidParams& params, double s,
                             const Tolerance& tol = {});

// B(s)^2 alone, cancellation-free and quadrature-free; the radial operator
// coefficients are built from it in hot loops.
double profile_b_sq(const CatenoidParams& params, double s);

// A point of H^3, i.e. the upper sheet of <x,x>_L = -1 in Minkowski R^{3,1}
// with pairing <x,y>_L = -x0 y0 + x1 y1 + x2 y2 + x3 y3.
struct AmbientPoint {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

// The immersion (A cosh phi, A sinh phi, B cos theta, B sin theta).
AmbientPoint embed(const CatenoidParams& params, double s, double theta,
                   const Tolerance& tol = {});

// Unit normal to the surface inside H^3, in Minkowski components;
// spacelike: <nu,nu>_L = +1, and <nu,Phi>_L = <nu,T_s>_L = <nu,T_theta>_L = 0.
struct NormalVector {
    double n0 = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    double n3 = 0.0;
};

// Orientation is fixed by n2(s,0) = +K/B > 0; off the reference meridian the
// normal rotates with the surface: n0, n1 are theta-independent while
// (n2,n3)(s,theta) = (cos theta, sin theta) * n2(s,0).
NormalVector unit_normal(const CatenoidParams& params, double s, double theta,
                         const Tolerance& tol = {});

// The rotational Jacobi profile
//   f*(s) = (K sinh phi + a B sinh(2s) cosh phi) / (A B),
// odd in s, positive for s > 0, and equal to d/ds [A(s) cosh phi(s)].
double fstar(const CatenoidParams& params, double s, const Tolerance& tol = {});

// Rotational Killing fields of Minkowski space tangent to H^3:
// L12 = x1 d2 - x2 d1, L13 = x1 d3 - x3 d1, L23 = x2 d3 - x3 d2.
enum class Killing { L12, L13, L23 };

// <generator, nu>_L evaluated from the generator's vector field at the
// surface point (no shortcut through fstar). L23 generates the surface's own
// rotational symmetry, so its pairing vanishes identically; L12 and L13 give
// f* cos(theta) and f* sin(theta).
double killing_jacobi(const CatenoidParams& params, Killing generator, double s,
                      double theta, const Tolerance& tol = {});

// Residual of the coordinate eigenfunction identity Delta_g x0 = 2 x0 for the
// time coordinate x0(s) = A cosh phi, discretized as
//   (1/B) d/ds (B dx0/ds) - 2 x0
// with a compact centered stencil of width h. Expected O(h^2)-small.
double laplace_eigen_residual(const CatenoidParams& params, double s,
                              const Tolerance& tol = {}, double h = 1e-4);

} // namespace hypcat
