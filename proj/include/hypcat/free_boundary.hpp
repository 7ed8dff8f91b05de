#pragma once

#include "hypcat/catenoid.hpp"

namespace hypcat {

// Solved boundary data for one family member: the half-length s0 where the
// surface meets the geodesic sphere orthogonally, the sphere radius r, and
// the residuals of the two equivalent formulations of that condition.
struct FreeBoundarySolution {
    double a = 0.0;
    double s0 = 0.0;
    double r = 0.0;
    double phi_s0 = 0.0;
    double residual_fb = 0.0;   // tanh(phi(s0)) - B K/(a sinh 2 s0)
    double residual_nu0 = 0.0;  // time component of the unit normal at s0
};

// tanh(phi(s)) - B(s) K / (a sinh(2s)). Strictly increasing on s > 0:
// the left side grows with phi while the right side decays like e^{-s};
// the unique positive zero is s0(a). Throws DomainError for s <= 0.
// Beyond s = 300 the decaying side is evaluated as K sqrt(2/a) e^{-s}
// to stay inside double range.
double fb_residual(const CatenoidParams& params, double s, const Tolerance& tol = {});

// Unique positive root of fb_residual, located to bracket width
// <= 1e-13 * (1 + s0). The supplied tolerance governs the quadrature for
// phi; the root tolerance itself is fixed by that contract.
double solve_s0(const CatenoidParams& params, const Tolerance& tol = {});

// Full boundary solve: s0, the ball radius r = arccosh(A(s0) cosh phi(s0))
// (switching to r = log(2x) once x > 1e8), and both residual diagnostics.
FreeBoundarySolution radius(const CatenoidParams& params, const Tolerance& tol = {});

// dr/da by centered difference with relative step 1e-6 in a.
double radius_derivative(const CatenoidParams& params, const Tolerance& tol = {});

} // namespace hypcat
