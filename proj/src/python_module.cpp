#include "hypcat/asymptotics.hpp"
#include "hypcat/mode_spectrum.hpp"
#include "hypcat/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hypcat;

PYBIND11_MODULE(_hypcat, m) {
    m.doc() = "Free-boundary spherical catenoids in hyperbolic 3-space: surface "
              "geometry, boundary solve, Robin spectra, and asymptotic laws";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IncompleteSpectrum>(m, "IncompleteSpectrum", PyExc_RuntimeError);
    py::register_exception<IllConditionedFit>(m, "IllConditionedFit", PyExc_RuntimeError);
    py::register_exception<DegenerateMatrix>(m, "DegenerateMatrix", PyExc_RuntimeError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init<>())
        .def_readwrite("abs_tol", &Tolerance::abs_tol)
        .def_readwrite("rel_tol", &Tolerance::rel_tol)
        .def_readwrite("max_iter", &Tolerance::max_iter)
        .def_readwrite("max_subdiv", &Tolerance::max_subdiv);

    // --- surface geometry -------------------------------------------------
    py::class_<CatenoidParams>(m, "CatenoidParams")
        .def_readonly("a", &CatenoidParams::a)
        .def_readonly("K", &CatenoidParams::K)
        .def("__repr__", [](const CatenoidParams& p) {
            return "CatenoidParams(a=" + format_double(p.a) + ")";
        });
    m.def("make_params", &make_params, py::arg("a"),
          "Validate a > 1/2 and precompute the rotation constant K");

    py::class_<MeridianState>(m, "MeridianState")
        .def_readonly("s", &MeridianState::s)
        .def_readonly("A", &MeridianState::A)
        .def_readonly("B", &MeridianState::B)
        .def_readonly("A_prime", &MeridianState::A_prime)
        .def_readonly("B_prime", &MeridianState::B_prime)
        .def_readonly("phi", &MeridianState::phi)
        .def_readonly("II_sq", &MeridianState::II_sq);
    m.def("meridian_state", &meridian_state, py::arg("params"), py::arg("s"),
          py::arg("tol") = Tolerance{}, "Profile data (A, B, phi, |II|^2) at arc-length s");
    m.def("profile_b_sq", &profile_b_sq, py::arg("params"), py::arg("s"));

    py::class_<AmbientPoint>(m, "AmbientPoint")
        .def_readonly("x0", &AmbientPoint::x0)
        .def_readonly("x1", &AmbientPoint::x1)
        .def_readonly("x2", &AmbientPoint::x2)
        .def_readonly("x3", &AmbientPoint::x3);
    m.def("embed", &embed, py::arg("params"), py::arg("s"), py::arg("theta"),
          py::arg("tol") = Tolerance{}, "Hyperboloid-model position of the surface point");

    py::class_<NormalVector>(m, "NormalVector")
        .def_readonly("n0", &NormalVector::n0)
        .def_readonly("n1", &NormalVector::n1)
        .def_readonly("n2", &NormalVector::n2)
        .def_readonly("n3", &NormalVector::n3);
    m.def("unit_normal", &unit_normal, py::arg("params"), py::arg("s"), py::arg("theta"),
          py::arg("tol") = Tolerance{});

    m.def("fstar", &fstar, py::arg("params"), py::arg("s"), py::arg("tol") = Tolerance{},
          "Rotational Jacobi profile f* = d/ds [A cosh phi]");

    py::enum_<Killing>(m, "Killing")
        .value("L12", Killing::L12)
        .value("L13", Killing::L13)
        .value("L23", Killing::L23);
    m.def("killing_jacobi", &killing_jacobi, py::arg("params"), py::arg("generator"),
          py::arg("s"), py::arg("theta"), py::arg("tol") = Tolerance{},
          "Pairing <generator, nu> of a rotational Killing field with the unit normal");
    m.def("laplace_eigen_residual", &laplace_eigen_residual, py::arg("params"), py::arg("s"),
          py::arg("tol") = Tolerance{}, py::arg("h") = 1e-4);

    // --- free boundary ----------------------------------------------------
    py::class_<FreeBoundarySolution>(m, "FreeBoundarySolution")
        .def_readonly("a", &FreeBoundarySolution::a)
        .def_readonly("s0", &FreeBoundarySolution::s0)
        .def_readonly("r", &FreeBoundarySolution::r)
        .def_readonly("phi_s0", &FreeBoundarySolution::phi_s0)
        .def_readonly("residual_fb", &FreeBoundarySolution::residual_fb)
        .def_readonly("residual_nu0", &FreeBoundarySolution::residual_nu0)
        .def("__repr__", [](const FreeBoundarySolution& f) {
            return "FreeBoundarySolution(a=" + format_double(f.a) +
                   ", s0=" + format_double(f.s0) + ", r=" + format_double(f.r) + ")";
        });
    m.def("fb_residual", &fb_residual, py::arg("params"), py::arg("s"),
          py::arg("tol") = Tolerance{},
          "Orthogonality residual tanh(phi) - B K/(a sinh 2s); its positive zero is s0");
    m.def("solve_s0", &solve_s0, py::arg("params"), py::arg("tol") = Tolerance{});
    m.def("radius", &radius, py::arg("params"), py::arg("tol") = Tolerance{},
          "Full boundary solve: s0, ball radius r, and residual diagnostics");
    m.def("radius_derivative", &radius_derivative, py::arg("params"),
          py::arg("tol") = Tolerance{});

    // --- mode spectra -------------------------------------------------------
    py::class_<SLProblem>(m, "SLProblem")
        .def_readonly("params", &SLProblem::params)
        .def_readonly("k", &SLProblem::k)
        .def_readonly("s0", &SLProblem::s0)
        .def_readonly("robin_coef", &SLProblem::robin_coef)
        .def("leading", &SLProblem::leading, py::arg("s"))
        .def("weight", &SLProblem::weight, py::arg("s"))
        .def("potential", &SLProblem::potential, py::arg("s"));
    m.def("build_problem", &build_problem, py::arg("params"), py::arg("k"),
          py::arg("tol") = Tolerance{},
          "Mode-k radial problem -(Bf')' + qf = mu Bf with Robin closure at +-s0");

    py::enum_<Parity>(m, "Parity").value("even", Parity::even).value("odd", Parity::odd);

    py::class_<ShotResult>(m, "ShotResult")
        .def_readonly("f_s0", &ShotResult::f_s0)
        .def_readonly("fp_s0", &ShotResult::fp_s0)
        .def_readonly("n_zeros_half", &ShotResult::n_zeros_half);
    m.def("shoot_parity", &shoot_parity, py::arg("problem"), py::arg("parity"), py::arg("mu"),
          py::arg("tol") = Tolerance{});

    py::class_<SLEigenpair>(m, "SLEigenpair")
        .def_readonly("mu", &SLEigenpair::mu)
        .def_readonly("n_zeros", &SLEigenpair::n_zeros)
        .def_readonly("parity", &SLEigenpair::parity)
        .def_readonly("samples", &SLEigenpair::samples)
        .def_readonly("robin_residual", &SLEigenpair::robin_residual)
        .def("__repr__", [](const SLEigenpair& e) {
            return "SLEigenpair(mu=" + format_double(e.mu) +
                   ", n_zeros=" + std::to_string(e.n_zeros) + ")";
        });
    m.def("eigenvalues_below", &eigenvalues_below, py::arg("problem"), py::arg("mu_max"),
          py::arg("tol") = Tolerance{},
          "Every Robin eigenvalue below mu_max, certified by zero-count brackets");
    m.def("fd_spectrum", &fd_spectrum, py::arg("problem"), py::arg("n_grid"),
          py::arg("m_eigs"), "Independent finite-difference oracle for the lowest m_eigs");

    py::class_<WronskianDiag>(m, "WronskianDiag")
        .def_readonly("max_drift", &WronskianDiag::max_drift)
        .def_readonly("w_value", &WronskianDiag::w_value);
    m.def("wronskian_diag", &wronskian_diag, py::arg("problem"), py::arg("mu"),
          py::arg("tol") = Tolerance{});

    py::class_<SurfaceGrid>(m, "SurfaceGrid")
        .def_readonly("s0", &SurfaceGrid::s0)
        .def_readonly("ns", &SurfaceGrid::ns)
        .def_readonly("ntheta", &SurfaceGrid::ntheta)
        .def_readwrite("values", &SurfaceGrid::values)
        .def("s_at", &SurfaceGrid::s_at, py::arg("i"))
        .def("theta_at", &SurfaceGrid::theta_at, py::arg("j"))
        .def("set", [](SurfaceGrid& grid, int i, int j, double v) { grid.at(i, j) = v; },
             py::arg("i"), py::arg("j"), py::arg("value"))
        .def("get", [](const SurfaceGrid& grid, int i, int j) { return grid.at(i, j); },
             py::arg("i"), py::arg("j"));
    m.def("make_surface_grid", &make_surface_grid, py::arg("s0"), py::arg("ns"),
          py::arg("ntheta"));
    m.def("quadratic_form", &quadratic_form, py::arg("params"), py::arg("u"),
          py::arg("tol") = Tolerance{},
          "Second-variation form S(u,u) with the Robin boundary term");
    m.def("surface_norm2", &surface_norm2, py::arg("params"), py::arg("u"),
          py::arg("tol") = Tolerance{});

    py::class_<ModeIndexRow>(m, "ModeIndexRow")
        .def_readonly("a", &ModeIndexRow::a)
        .def_readonly("k", &ModeIndexRow::k)
        .def_readonly("n_negative_radial", &ModeIndexRow::n_negative_radial)
        .def_readonly("kernel_dim_radial", &ModeIndexRow::kernel_dim_radial)
        .def_readonly("mu0", &ModeIndexRow::mu0)
        .def_readonly("mu1", &ModeIndexRow::mu1)
        .def_readonly("complete", &ModeIndexRow::complete);
    m.def("mode_index_table", &mode_index_table, py::arg("a_grid"), py::arg("k_max"),
          py::arg("tol") = Tolerance{});

    // --- asymptotics --------------------------------------------------------
    py::class_<AsymptoticConstants>(m, "AsymptoticConstants")
        .def_readonly("I_inf", &AsymptoticConstants::I_inf)
        .def_readonly("d_inf", &AsymptoticConstants::d_inf)
        .def_readonly("s0_shift", &AsymptoticConstants::s0_shift)
        .def_readonly("sigma_star", &AsymptoticConstants::sigma_star)
        .def_readonly("rho_star", &AsymptoticConstants::rho_star)
        .def_readonly("c_star", &AsymptoticConstants::c_star);
    m.def("constants", &constants, py::arg("tol") = Tolerance{},
          "Closed-form constants for the large-a and degenerate limits");

    py::class_<IInfCheck>(m, "IInfCheck")
        .def_readonly("quadrature_value", &IInfCheck::quadrature_value)
        .def_readonly("closed_form", &IInfCheck::closed_form)
        .def_readonly("gap", &IInfCheck::gap);
    m.def("verify_I_inf", &verify_I_inf, py::arg("tol") = Tolerance{});

    py::class_<ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("a", &ConvergenceRow::a)
        .def_readonly("quantity", &ConvergenceRow::quantity)
        .def_readonly("value", &ConvergenceRow::value)
        .def_readonly("target", &ConvergenceRow::target)
        .def_readonly("gap", &ConvergenceRow::gap)
        .def_readonly("gap_scaled", &ConvergenceRow::gap_scaled);
    m.def("large_a_table", &large_a_table, py::arg("a_grid"), py::arg("tol") = Tolerance{});
    m.def("degenerate_table", &degenerate_table, py::arg("eps_grid"),
          py::arg("tol") = Tolerance{});

    py::class_<D1Fit>(m, "D1Fit")
        .def_readonly("d1_hat", &D1Fit::d1_hat)
        .def_readonly("fit_residual", &D1Fit::fit_residual);
    m.def("fit_d1", &fit_d1, py::arg("a_grid"), py::arg("r_values"));
    m.def("estimate_d1", &estimate_d1, py::arg("a_grid"), py::arg("tol") = Tolerance{});

    // --- reports ------------------------------------------------------------
    py::class_<Table>(m, "Table")
        .def_readonly("columns", &Table::columns)
        .def_readonly("rows", &Table::rows)
        .def_readonly("notes", &Table::notes);
    m.def("to_csv", &to_csv, py::arg("table"));
    m.def("format_double", &format_double, py::arg("value"));

    py::class_<SweepConfig>(m, "SweepConfig")
        .def_readonly("mode", &SweepConfig::mode)
        .def_readonly("a_values", &SweepConfig::a_values)
        .def_readonly("k_max", &SweepConfig::k_max)
        .def_readonly("s_samples", &SweepConfig::s_samples)
        .def_readonly("mu_max", &SweepConfig::mu_max)
        .def_readonly("output_path", &SweepConfig::output_path)
        .def_readonly("output_format", &SweepConfig::output_format);
    m.def("parse_sweep_config", &parse_sweep_config, py::arg("text"));

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("tool_version", &RunRecord::tool_version)
        .def_readonly("started_at", &RunRecord::started_at)
        .def_readonly("rows", &RunRecord::rows)
        .def_readonly("warnings", &RunRecord::warnings);
    m.def("run_sweep", &run_sweep, py::arg("config"),
          "Execute a parsed sweep config and write its output atomically");

    m.attr("__version__") = kToolVersion;
}
