#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fwcone/dual_cone.hpp"
#include "fwcone/factor_width.hpp"
#include "fwcone/families.hpp"
#include "fwcone/rational.hpp"
#include "fwcone/spectral.hpp"

namespace py = pybind11;
using namespace fwcone;

namespace {

using Rows = std::vector<std::vector<double>>;

SymMatrix<double> to_matrix(const Rows& rows) { return SymMatrix<double>::from_rows(rows); }

Rows to_rows(const SymMatrix<Rational>& m) {
  Rows out(m.dim(), std::vector<double>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = to_double(m(i, j));
  return out;
}

std::vector<Support> to_supports(const std::vector<std::vector<std::size_t>>& raw) {
  std::vector<Support> out;
  out.reserve(raw.size());
  for (const auto& s : raw) out.emplace_back(s);
  return out;
}

py::dict certificate_dict(const DualCertificate& c) {
  py::dict d;
  d["B"] = c.B.rows();
  d["k"] = c.k;
  d["value"] = c.value;
  d["normalized_value"] = c.normalized_value();
  d["worst_minor_margin"] = c.worst_minor_margin;
  return d;
}

py::dict membership(const Rows& rows, std::size_t k, double feas_tol, int max_iter,
                    std::optional<std::vector<std::vector<std::size_t>>> supports, int threads) {
  SolverOptions opts;
  opts.feas_tol = feas_tol;
  opts.max_iter = max_iter;
  opts.threads = threads;
  if (supports) opts.support_list = to_supports(*supports);
  const auto a = to_matrix(rows);

  MembershipVerdict v;
  {
    py::gil_scoped_release release;
    v = fw_membership(a, k, opts);
  }

  py::dict d;
  d["verdict"] = to_string(v.status);
  d["iterations"] = v.diagnostics.iterations;
  d["primal_residual"] = v.diagnostics.primal_residual;
  d["certificate_source"] = v.diagnostics.certificate_source;
  if (v.decomposition) {
    py::list blocks;
    for (const auto& b : v.decomposition->blocks()) {
      py::dict blk;
      blk["support"] = b.support.indices();
      blk["matrix"] = b.matrix.rows();
      blocks.append(blk);
    }
    d["blocks"] = blocks;
    d["residual"] = v.decomposition->residual();
  } else {
    d["blocks"] = py::none();
  }
  d["certificate"] = v.certificate ? py::object(certificate_dict(*v.certificate)) : py::none();
  return d;
}

py::dict dual(const Rows& rows, std::size_t k, double tol) {
  const auto r = dual_membership(to_matrix(rows), k, tol);
  py::dict d;
  d["member"] = r.member;
  d["worst_margin"] = r.worst_margin;
  d["worst_support"] = r.worst_support.indices();
  d["supports_checked"] = r.supports_checked;
  return d;
}

py::dict psd(const Rows& rows, double tol) {
  const auto r = is_psd(to_matrix(rows), tol);
  py::dict d;
  d["is_psd"] = r.is_psd;
  d["min_eigenvalue"] = r.min_eigenvalue;
  d["tolerance_used"] = r.tolerance_used;
  return d;
}

py::dict fixtures() {
  const auto f = example_m_fixtures();
  py::dict d;
  d["M"] = to_rows(f.M);
  d["A"] = to_rows(f.A);
  d["Qprime"] = to_rows(f.Qprime);
  std::vector<std::vector<std::size_t>> sup;
  for (const auto& s : f.supports27) sup.push_back(s.indices());
  d["supports27"] = sup;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Factor-width cone membership and dual certificates";

  py::register_exception<EigenNotConverged>(m, "EigenNotConverged", PyExc_RuntimeError);

  m.def("fw_membership", &membership, py::arg("matrix"), py::arg("k"), py::arg("feas_tol") = 1e-7,
        py::arg("max_iter") = 20000, py::arg("supports") = py::none(), py::arg("threads") = 1);
  m.def("dual_membership", &dual, py::arg("matrix"), py::arg("k"), py::arg("tol") = kCertificateTolerance);
  m.def("is_psd", &psd, py::arg("matrix"), py::arg("tol") = kDefaultPsdTolerance);
  m.def(
      "eigenvalues", [](const Rows& rows) { return eigen_sym(to_matrix(rows)).eigenvalues; },
      py::arg("matrix"));
  m.def(
      "pna_threshold",
      [](std::size_t n, std::size_t k) {
        const Rational t = pna_threshold(n, k);
        return py::make_tuple(to_string(t), to_double(t));
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "pna_matrix",
      [](std::size_t n, double a) {
        return SymMatrix<double>::uniform(n, a, 1.0).rows();
      },
      py::arg("n"), py::arg("a"));
  m.def(
      "cos_ray", [](double a, double c) { return cos_ray(a, c).rows(); }, py::arg("a"), py::arg("c"));
  m.def("example_fixtures", &fixtures);
}
