#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proxpoint/config.hpp"
#include "proxpoint/io.hpp"
#include "proxpoint/ista.hpp"
#include "proxpoint/ppp.hpp"
#include "proxpoint/problems.hpp"

namespace py = pybind11;
using namespace proxpoint;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projection proximal-point solver for l1-regularized least squares";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  // operators
  py::enum_<OperatorKind>(m, "OperatorKind")
      .value("dense", OperatorKind::dense)
      .value("circular_conv_1d", OperatorKind::circular_conv_1d)
      .value("circular_conv_2d", OperatorKind::circular_conv_2d)
      .value("composition", OperatorKind::composition)
      .value("hat_synthesis", OperatorKind::hat_synthesis);

  py::class_<LinearOperator, OperatorPtr>(m, "LinearOperator")
      .def("apply", &LinearOperator::apply, py::arg("u"))
      .def("apply_adjoint", &LinearOperator::apply_adjoint, py::arg("v"))
      .def_property_readonly("domain_dim", &LinearOperator::domain_dim)
      .def_property_readonly("range_dim", &LinearOperator::range_dim)
      .def_property_readonly("kind", &LinearOperator::kind);

  m.def("make_dense", &make_dense, py::arg("matrix"));
  m.def("make_circular_conv_1d", &make_circular_conv_1d, py::arg("kernel"));
  m.def("make_circular_conv_2d", &make_circular_conv_2d, py::arg("kernel"), py::arg("margin") = 0);
  m.def("make_composition", &make_composition, py::arg("outer"), py::arg("inner"));
  m.def("make_hat_synthesis", &make_hat_synthesis, py::arg("n_coeffs"), py::arg("grid_size"));
  m.def("make_identity", &make_identity, py::arg("n"));

  py::class_<NormEstimate>(m, "NormEstimate")
      .def_readonly("value", &NormEstimate::value)
      .def_readonly("iterations", &NormEstimate::iterations)
      .def_readonly("converged", &NormEstimate::converged)
      .def("__repr__", [](const NormEstimate& e) {
        return "NormEstimate(value=" + io::format_double(e.value) +
               ", iterations=" + std::to_string(e.iterations) +
               ", converged=" + (e.converged ? std::string("True") : "False") + ")";
      });

  m.def(
      "estimate_norm",
      [](const OperatorPtr& op, int max_iters, double tol) {
        return estimate_norm(*op, max_iters, tol);
      },
      py::arg("op"), py::arg("max_iters") = 500, py::arg("tol") = 1e-9);

  // problem and prox primitives
  py::class_<Problem>(m, "Problem")
      .def(py::init<OperatorPtr, Vector, double>(), py::arg("K"), py::arg("g"), py::arg("alpha"))
      .def_readonly("K", &Problem::K)
      .def_readonly("g", &Problem::g)
      .def_readonly("alpha", &Problem::alpha)
      .def_property_readonly("domain_dim", &Problem::domain_dim)
      .def_property_readonly("range_dim", &Problem::range_dim);

  m.def("objective", &objective, py::arg("problem"), py::arg("u"));
  m.def("regularized_objective", &regularized_objective, py::arg("problem"), py::arg("u"),
        py::arg("mu"), py::arg("anchor"));
  m.def("soft_threshold", &soft_threshold, py::arg("u"), py::arg("c"));
  m.def("sign_set_projection", &sign_set_projection, py::arg("y"), py::arg("u"), py::arg("alpha"));

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("v", &Certificate::v)
      .def_readonly("eps", &Certificate::eps)
      .def_readonly("norm_v", &Certificate::norm_v)
      .def_readonly("norm_eps", &Certificate::norm_eps);

  m.def("certificate", &certificate, py::arg("problem"), py::arg("y"), py::arg("anchor"),
        py::arg("mu"));

  // inner solvers
  py::enum_<InnerMethod>(m, "InnerMethod")
      .value("damped_ista", InnerMethod::damped_ista)
      .value("gcg", InnerMethod::gcg);

  py::class_<InnerParams>(m, "InnerParams")
      .def(py::init<>())
      .def_readwrite("method", &InnerParams::method)
      .def_readwrite("sigma", &InnerParams::sigma)
      .def_readwrite("mu", &InnerParams::mu)
      .def_readwrite("step_size", &InnerParams::step_size)
      .def_readwrite("max_inner_iters", &InnerParams::max_inner_iters);

  py::enum_<InnerTermination>(m, "InnerTermination")
      .value("sigma_test", InnerTermination::sigma_test)
      .value("max_iters", InnerTermination::max_iters)
      .value("stagnated", InnerTermination::stagnated);

  py::class_<SubproblemResult>(m, "SubproblemResult")
      .def_readonly("y", &SubproblemResult::y)
      .def_readonly("cert", &SubproblemResult::cert)
      .def_readonly("inner_iters", &SubproblemResult::inner_iters)
      .def_readonly("terminated_by", &SubproblemResult::terminated_by);

  m.def("damped_ista_step", &damped_ista_step, py::arg("problem"), py::arg("y"), py::arg("anchor"),
        py::arg("mu"), py::arg("s"));
  m.def("gcg_search_direction", &gcg_search_direction, py::arg("problem"), py::arg("y"),
        py::arg("anchor"), py::arg("mu"));
  m.def("gcg_step_size", &gcg_step_size, py::arg("problem"), py::arg("y"), py::arg("w"),
        py::arg("anchor"), py::arg("mu"));
  m.def("solve_subproblem", &solve_subproblem, py::arg("problem"), py::arg("anchor"),
        py::arg("params"), py::arg("warm_start"));

  // outer loop
  py::enum_<RunStatus>(m, "RunStatus")
      .value("converged", RunStatus::converged)
      .value("max_outer", RunStatus::max_outer)
      .value("budget_exhausted", RunStatus::budget_exhausted);

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("n", &TraceRow::n)
      .def_readonly("inner_iters", &TraceRow::inner_iters)
      .def_readonly("psi", &TraceRow::psi)
      .def_readonly("norm_v", &TraceRow::norm_v)
      .def_readonly("norm_eps", &TraceRow::norm_eps)
      .def_readonly("mu", &TraceRow::mu);

  py::class_<SolverTrace>(m, "SolverTrace")
      .def_readonly("rows", &SolverTrace::rows)
      .def_readonly("status", &SolverTrace::status)
      .def_readonly("inner_total", &SolverTrace::inner_total)
      .def_readonly("iterates", &SolverTrace::iterates);

  py::class_<MuSchedule>(m, "MuSchedule")
      .def(py::init<>())
      .def_readwrite("mu0", &MuSchedule::mu0)
      .def_readwrite("decay", &MuSchedule::decay)
      .def_readwrite("floor", &MuSchedule::floor);

  py::class_<PppParams>(m, "PppParams")
      .def(py::init<>())
      .def_readwrite("inner", &PppParams::inner)
      .def_readwrite("mu_schedule", &PppParams::mu_schedule)
      .def_readwrite("max_outer_iters", &PppParams::max_outer_iters)
      .def_readwrite("v_tol", &PppParams::v_tol)
      .def_readwrite("y_tol", &PppParams::y_tol)
      .def_readwrite("total_iter_budget", &PppParams::total_iter_budget)
      .def_readwrite("record_iterates", &PppParams::record_iterates)
      .def_readwrite("observer", &PppParams::observer);

  m.def("project_hyperplane", &project_hyperplane, py::arg("u"), py::arg("y"), py::arg("v"));
  m.def(
      "run_ppp",
      [](const Problem& p, const Vector& u0, const PppParams& params) {
        RunResult result = run_ppp(p, u0, params);
        return py::make_tuple(result.solution, result.trace);
      },
      py::arg("problem"), py::arg("u0"), py::arg("params"));
  m.def("oracle_solve", &oracle_solve, py::arg("problem"), py::arg("max_support"));

  // baseline
  py::class_<IstaParams>(m, "IstaParams")
      .def(py::init<>())
      .def_readwrite("step_size", &IstaParams::step_size)
      .def_readwrite("max_iters", &IstaParams::max_iters)
      .def_readwrite("tol", &IstaParams::tol);

  py::class_<IstaResult>(m, "IstaResult")
      .def_readonly("solution", &IstaResult::solution)
      .def_readonly("psi_trace", &IstaResult::psi_trace)
      .def_readonly("step_norms", &IstaResult::step_norms)
      .def_readonly("reached_tol", &IstaResult::reached_tol);

  m.def("ista_run", &ista_run, py::arg("problem"), py::arg("u0"), py::arg("params"));

  // experiment problems
  py::class_<DeconvSpec>(m, "DeconvSpec")
      .def(py::init<>())
      .def_readwrite("grid_size", &DeconvSpec::grid_size)
      .def_readwrite("n_coeffs", &DeconvSpec::n_coeffs)
      .def_readwrite("kernel_width_param", &DeconvSpec::kernel_width_param)
      .def_readwrite("spikes", &DeconvSpec::spikes)
      .def_readwrite("noise_sigma", &DeconvSpec::noise_sigma)
      .def_readwrite("alpha", &DeconvSpec::alpha);

  py::class_<HologramSpec>(m, "HologramSpec")
      .def(py::init<>())
      .def_readwrite("image_size", &HologramSpec::image_size)
      .def_readwrite("pixel_pitch", &HologramSpec::pixel_pitch)
      .def_readwrite("wavelength", &HologramSpec::wavelength)
      .def_readwrite("distance", &HologramSpec::distance)
      .def_readwrite("particles", &HologramSpec::particles)
      .def_readwrite("noise_sigma", &HologramSpec::noise_sigma)
      .def_readwrite("alpha", &HologramSpec::alpha);

  py::class_<FresnelKernel>(m, "FresnelKernel")
      .def_readonly("samples", &FresnelKernel::samples)
      .def_readonly("raw_scale", &FresnelKernel::raw_scale);

  m.def("fresnel_kernel", &fresnel_kernel, py::arg("spec"));
  m.def("make_deconvolution_problem", &make_deconvolution_problem, py::arg("spec"),
        py::arg("seed"));
  m.def("make_hologram_problem", &make_hologram_problem, py::arg("spec"), py::arg("seed"));
  m.def("make_random_fbi_problem", &make_random_fbi_problem, py::arg("m"), py::arg("n"),
        py::arg("sparsity"), py::arg("alpha"), py::arg("seed"));
  m.def("random_particles", &random_particles, py::arg("image_size"), py::arg("count"),
        py::arg("min_separation"), py::arg("seed"));
}
