#include "hypcat/mode_spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypcat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// First-order flux form of -(B f')' + q f = mu B f with state (f, B f'):
// avoids differentiating B and keeps the step error centered on the
// conserved quantities.
OdeRhs radial_rhs(const SLProblem& pr, double mu) {
    return [&pr, mu](double s, const double* y, double* dy) {
        const double B = pr.weight(s);
        dy[0] = y[1] / B;
        dy[1] = (pr.potential(s) - mu * B) * y[0];
    };
}

std::vector<double> cauchy_data(const SLProblem& pr, Parity parity) {
    if (parity == Parity::even) return {1.0, 0.0};
    return {0.0, pr.weight(0.0)};  // f'(0) = 1 in flux form
}

// Uniform half-interval sample nodes [0, s0].
std::vector<double> half_nodes(double s0, int n) {
    std::vector<double> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = s0 * i / (n - 1);
    return nodes;
}

int count_sign_changes(const std::vector<double>& f) {
    int changes = 0, prev = 0;
    for (double v : f) {
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (prev != 0 && sign != prev) ++changes;
        prev = sign;
    }
    return changes;
}

struct SampledShot {
    double f_s0 = 0.0;
    double fp_s0 = 0.0;
    std::vector<double> f;  // node values on [0, s0]
};

SampledShot shoot_sampled(const SLProblem& pr, Parity parity, double mu,
                          const Tolerance& tol, const std::vector<double>& nodes) {
    SampledShot shot;
    shot.f.reserve(nodes.size());
    const auto rhs = radial_rhs(pr, mu);
    const auto yend = ode_solve_at(rhs, 2, 0.0, nodes, cauchy_data(pr, parity), tol,
                                   [&](double, const double* y) { shot.f.push_back(y[0]); });
    shot.f_s0 = yend[0];
    shot.fp_s0 = yend[1] / pr.weight(pr.s0);
    return shot;
}

} // namespace

double SLProblem::leading(double s) const { return std::sqrt(profile_b_sq(params, s)); }

double SLProblem::weight(double s) const { return std::sqrt(profile_b_sq(params, s)); }

double SLProblem::potential(double s) const {
    const double b2 = profile_b_sq(params, s);
    const double ii_sq = 2.0 * params.K * params.K / (b2 * b2);
    return std::sqrt(b2) * (2.0 + double(k) * double(k) / b2 - ii_sq);
}

SLProblem build_problem(const CatenoidParams& params, int k, const Tolerance& tol) {
    if (k < 0) throw DomainError("angular mode must be nonnegative, got k = " + std::to_string(k));
    const FreeBoundarySolution sol = radius(params, tol);
    SLProblem pr;
    pr.params = params;
    pr.k = k;
    pr.s0 = sol.s0;
    pr.robin_coef = 1.0 / std::tanh(sol.r);
    return pr;
}

ShotResult shoot_parity(const SLProblem& problem, Parity parity, double mu,
                        const Tolerance& tol) {
    int zeros = 0, prev = 0;
    const auto rhs = radial_rhs(problem, mu);
    const auto yend = ode_solve_observed(
        rhs, 2, 0.0, problem.s0, cauchy_data(problem, parity), tol,
        [&](double, const double* y) {
            const int sign = (y[0] > 0.0) - (y[0] < 0.0);
            if (sign == 0) return;
            if (prev != 0 && sign != prev) ++zeros;
            prev = sign;
        });
    return {yend[0], yend[1] / problem.weight(problem.s0), zeros};
}

std::vector<SLEigenpair> eigenvalues_below(const SLProblem& problem, double mu_max,
                                           const Tolerance& tol) {
    if (!std::isfinite(mu_max))
        throw DomainError("eigenvalue search needs a finite upper limit");

    // Floor estimate: minimum of q/w; eigenvalues can undershoot it because
    // of the negative boundary term, so the certified floor below is found
    // by probing.
    double qw_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 800; ++i) {
        const double s = problem.s0 * i / 800.0;
        qw_min = std::min(qw_min, problem.potential(s) / problem.weight(s));
    }

    std::vector<SLEigenpair> found;
    const std::vector<double> nodes = half_nodes(problem.s0, 801);

    for (Parity parity : {Parity::even, Parity::odd}) {
        const auto probe = [&](double mu) { return shoot_parity(problem, parity, mu, tol); };
        const auto mismatch = [&](const ShotResult& sh) {
            return sh.fp_s0 - problem.robin_coef * sh.f_s0;
        };
        const auto rho = [&](double mu) { return mismatch(probe(mu)); };

        // Certified floor: zero interior zeros and positive mismatch mean the
        // endpoint ratio f'/f still sits above coth(r), so no eigenvalue of
        // this parity lies at or below mu_lo (the ratio only decreases with
        // mu between its poles).
        double offset = 1.0;
        double mu_lo = qw_min - offset;
        for (;;) {
            const ShotResult sh = probe(mu_lo);
            if (sh.n_zeros_half == 0 && mismatch(sh) > 0.0) break;
            offset *= 2.0;
            mu_lo = qw_min - offset;
            if (offset > 1048576.0 * std::max(1.0, std::fabs(qw_min)))
                throw IncompleteSpectrum("no certified floor below mu = " +
                                         std::to_string(mu_lo));
        }
        if (mu_lo >= mu_max) continue;

        // Locate every jump of the interior zero count in (mu_lo, mu_max];
        // each jump is one endpoint-Dirichlet crossing, and between crossings
        // the mismatch changes sign exactly once.
        struct Segment {
            double lo, hi;
            int c_lo, c_hi;
        };
        struct Jump {
            double lo, hi;  // count(lo) = c, count(hi) = c + jump size
        };
        const double mu_scale = std::max({1.0, std::fabs(mu_lo), std::fabs(mu_max)});
        const double pin = 1e-9 * mu_scale;
        std::vector<Jump> jumps;
        std::vector<Segment> work{{mu_lo, mu_max, 0, probe(mu_max).n_zeros_half}};
        while (!work.empty()) {
            const Segment seg = work.back();
            work.pop_back();
            if (seg.c_hi == seg.c_lo) continue;
            if (seg.hi - seg.lo <= pin) {
                for (int j = seg.c_lo; j < seg.c_hi; ++j) jumps.push_back({seg.lo, seg.hi});
                continue;
            }
            const double mid = 0.5 * (seg.lo + seg.hi);
            const int c_mid = probe(mid).n_zeros_half;
            work.push_back({seg.lo, mid, seg.c_lo, c_mid});
            work.push_back({mid, seg.hi, c_mid, seg.c_hi});
        }
        std::sort(jumps.begin(), jumps.end(),
                  [](const Jump& x, const Jump& y) { return x.lo < y.lo; });

        // Narrows a jump bracket so band edges can move closer to the
        // crossing when a root hides near it.
        const auto refine = [&](Jump& jp, double width) {
            const int c_left = probe(jp.lo).n_zeros_half;
            while (jp.hi - jp.lo > width) {
                const double mid = 0.5 * (jp.lo + jp.hi);
                if (probe(mid).n_zeros_half > c_left)
                    jp.hi = mid;
                else
                    jp.lo = mid;
            }
        };

        Tolerance root_tol = tol;
        root_tol.abs_tol = std::max(1e-13 * mu_scale, 1e-14);
        root_tol.rel_tol = 1e-13;

        const std::size_t n_bands = jumps.size() + 1;
        for (std::size_t band = 0; band < n_bands; ++band) {
            double lo_pt = (band == 0) ? mu_lo : jumps[band - 1].hi;
            double hi_pt = (band == jumps.size()) ? mu_max : jumps[band].lo;
            const bool interior = band < jumps.size();
            double mu_star = std::numeric_limits<double>::quiet_NaN();
            for (int attempt = 0; attempt < 2; ++attempt) {
                if (hi_pt > lo_pt) {
                    const double r_lo = rho(lo_pt), r_hi = rho(hi_pt);
                    if (r_lo == 0.0) {
                        mu_star = lo_pt;
                        break;
                    }
                    if (r_hi == 0.0) {
                        mu_star = hi_pt;
                        break;
                    }
                    if (r_lo * r_hi < 0.0) {
                        mu_star = find_root(rho, Bracket{lo_pt, hi_pt, r_lo, r_hi}, root_tol);
                        break;
                    }
                }
                if (!interior || attempt == 1) break;
                // The root must exist below the next crossing; pull the band
                // edges tight against the crossings and retry once.
                if (band > 0) {
                    refine(jumps[band - 1], 1e-13 * mu_scale);
                    lo_pt = jumps[band - 1].hi;
                }
                refine(jumps[band], 1e-13 * mu_scale);
                hi_pt = jumps[band].lo;
            }
            if (std::isnan(mu_star)) {
                if (!interior) continue;  // top band's root lies above mu_max
                throw IncompleteSpectrum(
                    "mismatch sign change missing below detected crossing near mu = " +
                    std::to_string(jumps[band].lo));
            }
            if (mu_star >= mu_max) continue;

            SampledShot shot = shoot_sampled(problem, parity, mu_star, tol, nodes);
            const int zeros_half = count_sign_changes(shot.f);

            double peak = 0.0;
            for (double v : shot.f) peak = std::max(peak, std::fabs(v));
            double scale = 1.0 / peak;
            if (parity == Parity::even && shot.f_s0 < 0.0) scale = -scale;

            SLEigenpair pair;
            pair.mu = mu_star;
            pair.parity = parity;
            pair.n_zeros = (parity == Parity::even) ? 2 * zeros_half : 2 * zeros_half + 1;
            pair.robin_residual = (shot.fp_s0 - problem.robin_coef * shot.f_s0) * scale;
            const int n = int(nodes.size());
            pair.samples.resize(2 * n - 1);
            const double parity_sign = (parity == Parity::even) ? 1.0 : -1.0;
            for (int i = 0; i < n; ++i) {
                const double v = shot.f[i] * scale;
                pair.samples[n - 1 + i] = {nodes[i], v};
                pair.samples[n - 1 - i] = {-nodes[i], parity_sign * v};
            }
            found.push_back(std::move(pair));
        }
    }

    std::sort(found.begin(), found.end(),
              [](const SLEigenpair& x, const SLEigenpair& y) { return x.mu < y.mu; });
    return found;
}

std::vector<double> fd_spectrum(const SLProblem& problem, int n_grid, int m_eigs) {
    if (n_grid < 200)
        throw DomainError("fd_spectrum needs at least 200 grid nodes, got " +
                          std::to_string(n_grid));
    const int n = n_grid;
    const double h = 2.0 * problem.s0 / (n - 1);

    std::vector<double> B(n), q(n), Bmid(n - 1);
    for (int i = 0; i < n; ++i) {
        const double s = -problem.s0 + h * i;
        B[i] = problem.weight(s);
        q[i] = problem.potential(s);
    }
    for (int i = 0; i + 1 < n; ++i)
        Bmid[i] = problem.weight(-problem.s0 + h * (i + 0.5));

    // Stiffness from the discrete quadratic form: midpoint fluxes, trapezoid
    // lumping of potential and weight, boundary term -coth(r) B(s0) f^2 on
    // each end node. Equivalent to the symmetric ghost-point elimination of
    // the Robin condition, so the matrix pencil stays symmetric-definite.
    Eigen::VectorXd diag(n), sub(n - 1);
    std::vector<double> lump(n, h);
    lump[0] = lump[n - 1] = 0.5 * h;
    for (int i = 0; i < n; ++i) {
        double d = lump[i] * q[i];
        if (i > 0) d += Bmid[i - 1] / h;
        if (i + 1 < n) d += Bmid[i] / h;
        diag[i] = d;
    }
    diag[0] -= problem.robin_coef * B[0];
    diag[n - 1] -= problem.robin_coef * B[n - 1];
    for (int i = 0; i + 1 < n; ++i) sub[i] = -Bmid[i] / h;

    // Diagonal mass W = lump * B; fold it in symmetrically, which keeps the
    // matrix tridiagonal.
    Eigen::VectorXd w_half(n);
    for (int i = 0; i < n; ++i) {
        const double w = lump[i] * B[i];
        if (!(w > 0.0))
            throw DegenerateMatrix("nonpositive weight entry at grid node " + std::to_string(i));
        w_half[i] = std::sqrt(w);
    }
    for (int i = 0; i < n; ++i) diag[i] /= w_half[i] * w_half[i];
    for (int i = 0; i + 1 < n; ++i) sub[i] /= w_half[i] * w_half[i + 1];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("tridiagonal eigensolve did not converge");

    const int m = std::min<int>(m_eigs, n);
    std::vector<double> out(m);
    for (int i = 0; i < m; ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

WronskianDiag wronskian_diag(const SLProblem& problem, double mu, const Tolerance& tol) {
    // Joint state (f_e, B f_e', f_o, B f_o'); the combination
    // B W = f_e (B f_o') - f_o (B f_e') is exactly y0 y3 - y2 y1.
    const auto rhs = [&](double s, const double* y, double* dy) {
        const double B = problem.weight(s);
        const double coup = problem.potential(s) - mu * B;
        dy[0] = y[1] / B;
        dy[1] = coup * y[0];
        dy[2] = y[3] / B;
        dy[3] = coup * y[2];
    };
    const double B0 = problem.weight(0.0);
    WronskianDiag diag;
    diag.w_value = B0;  // (B W)(0) with unit Cauchy data
    ode_solve_observed(rhs, 4, 0.0, problem.s0, {1.0, 0.0, 0.0, B0}, tol,
                       [&](double, const double* y) {
                           const double bw = y[0] * y[3] - y[2] * y[1];
                           diag.max_drift =
                               std::max(diag.max_drift, std::fabs(bw - diag.w_value));
                       });
    return diag;
}

double SurfaceGrid::s_at(int i) const { return -s0 + 2.0 * s0 * i / (ns - 1); }

double SurfaceGrid::theta_at(int j) const { return kTwoPi * j / ntheta; }

double& SurfaceGrid::at(int i, int j) { return values[std::size_t(i) * ntheta + j]; }

double SurfaceGrid::at(int i, int j) const { return values[std::size_t(i) * ntheta + j]; }

SurfaceGrid make_surface_grid(double s0, int ns, int ntheta) {
    if (!(s0 > 0.0) || ns < 3 || ntheta < 4)
        throw DomainError("surface grid needs s0 > 0, ns >= 3, ntheta >= 4");
    SurfaceGrid g;
    g.s0 = s0;
    g.ns = ns;
    g.ntheta = ntheta;
    g.values.assign(std::size_t(ns) * ntheta, 0.0);
    return g;
}

namespace {

// Shared discretization of the surface integrals: trapezoid weights along s,
// uniform periodic rule along theta.
struct GridGeometry {
    double hs, ht;
    std::vector<double> B;      // B at s-nodes
    std::vector<double> lump;   // trapezoid weight per s-node
};

GridGeometry grid_geometry(const CatenoidParams& params, const SurfaceGrid& u) {
    GridGeometry geo;
    geo.hs = 2.0 * u.s0 / (u.ns - 1);
    geo.ht = kTwoPi / u.ntheta;
    geo.B.resize(u.ns);
    geo.lump.assign(u.ns, geo.hs);
    geo.lump.front() = geo.lump.back() = 0.5 * geo.hs;
    for (int i = 0; i < u.ns; ++i)
        geo.B[i] = std::sqrt(profile_b_sq(params, u.s_at(i)));
    return geo;
}

} // namespace

double surface_norm2(const CatenoidParams& params, const SurfaceGrid& u, const Tolerance&) {
    const GridGeometry geo = grid_geometry(params, u);
    double total = 0.0;
    for (int i = 0; i < u.ns; ++i) {
        double row = 0.0;
        for (int j = 0; j < u.ntheta; ++j) row += u.at(i, j) * u.at(i, j);
        total += geo.lump[i] * geo.B[i] * row;
    }
    return total * geo.ht;
}

double quadratic_form(const CatenoidParams& params, const SurfaceGrid& u,
                      const Tolerance& tol) {
    const GridGeometry geo = grid_geometry(params, u);
    const double robin = 1.0 / std::tanh(radius(params, tol).r);

    double bulk = 0.0;
    for (int i = 0; i < u.ns; ++i) {
        const double b2 = geo.B[i] * geo.B[i];
        const double ii_m2 = 2.0 * params.K * params.K / (b2 * b2) - 2.0;
        double row = 0.0;
        for (int j = 0; j < u.ntheta; ++j) {
            // du/ds: centered inside, one-sided second order at the ends.
            double us;
            if (i == 0)
                us = (-3.0 * u.at(0, j) + 4.0 * u.at(1, j) - u.at(2, j)) / (2.0 * geo.hs);
            else if (i == u.ns - 1)
                us = (3.0 * u.at(i, j) - 4.0 * u.at(i - 1, j) + u.at(i - 2, j)) / (2.0 * geo.hs);
            else
                us = (u.at(i + 1, j) - u.at(i - 1, j)) / (2.0 * geo.hs);
            const int jp = (j + 1) % u.ntheta;
            const int jm = (j + u.ntheta - 1) % u.ntheta;
            const double ut = (u.at(i, jp) - u.at(i, jm)) / (2.0 * geo.ht);
            const double val = u.at(i, j);
            row += us * us + ut * ut / b2 - ii_m2 * val * val;
        }
        bulk += geo.lump[i] * geo.B[i] * row;
    }
    bulk *= geo.ht;

    double rim = 0.0;
    for (int j = 0; j < u.ntheta; ++j)
        rim += u.at(0, j) * u.at(0, j) + u.at(u.ns - 1, j) * u.at(u.ns - 1, j);
    rim *= geo.B.front() * geo.ht;  // B is even: same length element both ends

    return bulk - robin * rim;
}

std::vector<ModeIndexRow> mode_index_table(const std::vector<double>& a_grid, int k_max,
                                           const Tolerance& tol) {
    if (k_max < 2)
        throw DomainError("index table needs k_max >= 2, got " + std::to_string(k_max));
    std::vector<ModeIndexRow> rows;
    rows.reserve(a_grid.size() * (k_max + 1));
    for (double a : a_grid) {
        const CatenoidParams params = make_params(a);
        for (int k = 0; k <= k_max; ++k) {
            ModeIndexRow row;
            row.a = a;
            row.k = k;
            try {
                const SLProblem pr = build_problem(params, k, tol);
                std::vector<SLEigenpair> eigs;
                for (double mu_max = 1.0; mu_max <= 1e6; mu_max *= 4.0) {
                    eigs = eigenvalues_below(pr, mu_max, tol);
                    if (eigs.size() >= 2) break;
                }
                if (eigs.size() >= 2) {
                    for (const SLEigenpair& e : eigs) {
                        if (e.mu < -1e-6) ++row.n_negative_radial;
                        if (std::fabs(e.mu) < 1e-6) ++row.kernel_dim_radial;
                    }
                    row.mu0 = eigs[0].mu;
                    row.mu1 = eigs[1].mu;
                    row.complete = true;
                }
            } catch (const IncompleteSpectrum&) {
                row.complete = false;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace hypcat
