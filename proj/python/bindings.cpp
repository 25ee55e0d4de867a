#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdwg/study.hpp"

namespace py = pybind11;
using namespace pdwg;

namespace {

py::dict errors_dict(const ErrorReport& e) {
  py::dict d;
  d["l2_e0"] = e.l2_e0;
  d["h1_e0"] = e.h1_e0;
  d["resid_u"] = e.resid_u;
  d["resid_lambda"] = e.resid_lambda;
  d["stab_u"] = e.stab_u;
  d["strong_u"] = e.strong_u;
  d["strong_lambda"] = e.strong_lambda;
  return d;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  throw std::invalid_argument("format must be csv or markdown");
}

}  // namespace

PYBIND11_MODULE(_pdwg, m) {
  m.doc() = "Primal-dual weak Galerkin solver for elliptic Cauchy problems";

  py::class_<Mesh>(m, "Mesh")
      .def_property_readonly("n_vertices", &Mesh::n_vertices)
      .def_property_readonly("n_triangles", &Mesh::n_triangles)
      .def_property_readonly("n_edges", &Mesh::n_edges)
      .def_property_readonly("n_boundary_edges", &Mesh::n_boundary_edges)
      .def_property_readonly("h", &Mesh::h)
      .def("vertices",
           [](const Mesh& mesh) {
             Eigen::MatrixX2d v(mesh.n_vertices(), 2);
             for (int i = 0; i < mesh.n_vertices(); ++i) v.row(i) = mesh.vertex(i).transpose();
             return v;
           })
      .def("triangles",
           [](const Mesh& mesh) {
             Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor> t(mesh.n_triangles(), 3);
             for (int i = 0; i < mesh.n_triangles(); ++i) {
               for (int j = 0; j < 3; ++j) t(i, j) = mesh.triangle(i)[j];
             }
             return t;
           })
      .def("area", &Mesh::area, py::arg("t"))
      .def("diameter", &Mesh::diameter, py::arg("t"));

  m.def("build_uniform_mesh", &build_uniform_mesh, py::arg("n"), "n x n squares, each cut by one diagonal");

  m.def("list_cases", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const CaseSpec& c : catalog()) out.emplace_back(c.id, c.description);
    return out;
  });

  m.def("observed_order", &observed_order, py::arg("coarse_error"), py::arg("fine_error"), py::arg("coarse_n"),
        py::arg("fine_n"));

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("case_id", &ConvergenceReport::case_id)
      .def_readonly("degree", &ConvergenceReport::degree)
      .def("any_failed", &ConvergenceReport::any_failed)
      .def_property_readonly("levels", [](const ConvergenceReport& r) {
        py::list out;
        for (const LevelResult& l : r.levels) {
          py::dict d;
          d["n"] = l.n;
          d["h"] = l.h;
          d["status"] = status_name(l.status);
          d["message"] = l.message;
          d["system_size"] = l.system_size;
          d["errors"] = errors_dict(l.errors);
          out.append(d);
        }
        return out;
      });

  m.def(
      "run_study",
      [](const std::string& case_id, const std::vector<int>& levels, int k) {
        py::gil_scoped_release release;
        return run_study(find_case(case_id), levels, k);
      },
      py::arg("case_id"), py::arg("levels"), py::arg("k") = 1);

  m.def(
      "emit",
      [](const ConvergenceReport& r, const std::string& format, bool timing) {
        return emit(r, parse_format(format), timing);
      },
      py::arg("report"), py::arg("format") = "csv", py::arg("include_timing") = false);

  m.def(
      "solve_case",
      [](const std::string& case_id, int n, int k) {
        const CaseSpec& c = find_case(case_id);
        const Mesh mesh = build_uniform_mesh(n);
        const BoundaryConfig config = classify_boundary(mesh, c.dirichlet_sides, c.neumann_sides);
        const LocalOperators ops(mesh, k, c.diffusion);
        const SolveResult r = solve(assemble(ops, config, ProblemData::from_case(c)));
        py::dict d;
        d["status"] = status_name(r.status);
        d["message"] = r.message;
        d["kernel_dimension"] = r.kernel_dimension;
        d["relative_residual"] = r.relative_residual;
        d["u"] = Eigen::VectorXd(r.u.coefficients());
        d["lambda"] = Eigen::VectorXd(r.lambda.coefficients());
        if (r.ok()) d["errors"] = errors_dict(evaluate_errors(r.u, r.lambda, c.u, ops, config));
        return d;
      },
      py::arg("case_id"), py::arg("n"), py::arg("k") = 1);

  m.def(
      "assemble_case",
      [](const std::string& case_id, int n, int k) {
        const CaseSpec& c = find_case(case_id);
        const Mesh mesh = build_uniform_mesh(n);
        const SaddleSystem s = assemble(mesh, classify_boundary(mesh, c.dirichlet_sides, c.neumann_sides), c, k);
        std::vector<int> rows, cols;
        std::vector<double> values;
        for (int j = 0; j < s.matrix.outerSize(); ++j) {
          for (Eigen::SparseMatrix<double>::InnerIterator it(s.matrix, j); it; ++it) {
            rows.push_back(static_cast<int>(it.row()));
            cols.push_back(static_cast<int>(it.col()));
            values.push_back(it.value());
          }
        }
        return py::make_tuple(rows, cols, values, Eigen::VectorXd(s.rhs));
      },
      py::arg("case_id"), py::arg("n"), py::arg("k") = 1,
      "Coupled matrix as (rows, cols, values) triplets and the right-hand side");
}
