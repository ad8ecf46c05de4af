#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modinv/checks.hpp"
#include "modinv/error.hpp"
#include "modinv/harness.hpp"
#include "modinv/io.hpp"

namespace py = pybind11;
using namespace modinv;

namespace {

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

Matrix rows_matrix(const FieldPtr& k, const std::vector<std::vector<long long>>& rows, std::size_t n) {
  Matrix m(k, rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw UsageError("row length must be n");
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = k->from_int(rows[r][c]);
  }
  return m;
}

// Prime-field group from integer matrices, column i holding g(x_i).
MatrixGroup make_group(std::uint32_t p, std::size_t n, const std::vector<std::vector<std::vector<long long>>>& gens,
                       std::size_t cap) {
  auto k = Field::prime(p);
  std::vector<Matrix> mats;
  for (const auto& g : gens) {
    if (g.size() != n) throw UsageError("generator must have n rows");
    mats.push_back(rows_matrix(k, g, n));
  }
  return MatrixGroup::generate(k, n, std::move(mats), cap);
}

std::vector<std::vector<std::string>> matrix_rows(const Matrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(m.field()->format(m.at(r, c)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Invariant rings of modular p-groups";

  // translators are tried newest first, so the base goes in first
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<NotApplicable>(m, "NotApplicable", base.ptr());

  py::class_<MatrixGroup>(m, "Group")
      .def(py::init(&make_group), py::arg("p"), py::arg("n"), py::arg("generators"),
           py::arg("cap") = kDefaultGroupCap)
      .def_static("from_json", [](const std::string& text) { return parse_instance(text).group; })
      .def_static("load", [](const std::string& path) { return load_instance(path).group; })
      .def_property_readonly("order", &MatrixGroup::order)
      .def_property_readonly("n", &MatrixGroup::dim)
      .def_property_readonly("p", [](const MatrixGroup& g) { return g.field()->characteristic(); })
      .def_property_readonly("hash", [](const MatrixGroup& g) { return instance_hash(g); })
      .def_property_readonly("fixed_rank", [](const MatrixGroup& g) { return fixed_rank(g); })
      .def_property_readonly("transvection_count", [](const MatrixGroup& g) { return transvections(g).size(); })
      .def_property_readonly("beta", [](const MatrixGroup& g) { return beta_group(change_basis(g, triangularize(g))); })
      .def_property_readonly("generated_by_transvections", &is_transvection_generated)
      .def("fixed_vectors", [](const MatrixGroup& g) { return matrix_rows(fixed_spaces(g).vectors); })
      .def("inertia_order",
           [](const MatrixGroup& g, const std::vector<std::size_t>& vars) { return inertia_subgroup(g, vars).order(); })
      .def("to_json", [](const MatrixGroup& g) { return instance_to_json(g); });

  py::class_<InvariantRing>(m, "InvariantRing")
      .def(py::init([](const MatrixGroup& g, std::uint32_t degree_bound) {
             InvariantOptions o;
             o.degree_bound = degree_bound;
             return std::make_unique<InvariantRing>(g, o);
           }),
           py::arg("group"), py::arg("degree_bound") = 0)
      .def("generators", [](InvariantRing& r) { return strings(r.generators().gens); })
      .def("degrees", [](InvariantRing& r) { return r.generators().degrees(); })
      .def("certified", [](InvariantRing& r) { return r.generators().certified; })
      .def("hilbert_ideal", [](InvariantRing& r) { return strings(r.hilbert_ideal().gb()); })
      .def("relative_hilbert_ideal",
           [](InvariantRing& r, const std::vector<std::vector<long long>>& w) {
             return strings(r.relative_hilbert_ideal(rows_matrix(r.group().field(), w, r.group().dim())).gb());
           })
      .def("is_polynomial", [](InvariantRing& r) { return to_string(is_polynomial_ring(r).status); })
      .def("direct_summand", [](InvariantRing& r) { return to_string(direct_summand_status(r).status); })
      .def("is_complete_intersection", [](InvariantRing& r) { return is_complete_intersection(r.hilbert_ideal()); });

  m.def("analyze", [](const MatrixGroup& g) { return analyze_group(g).to_json(); },
        "Ledger record of all applicable checks, as JSON text");
  m.def(
      "survey",
      [](std::uint32_t p, std::size_t n, std::size_t samples, bool exhaustive, std::uint64_t seed,
         std::size_t min_fixed_rank) {
        SurveyParams sp;
        sp.p = p;
        sp.n = n;
        sp.samples = samples;
        sp.exhaustive = exhaustive;
        sp.seed = seed;
        sp.min_fixed_rank = min_fixed_rank;
        const Enumeration e = enumerate_transvection_groups(sp);
        SuiteOptions so;
        so.seed = seed;
        SuiteResult res = run_suite(e.groups, so);
        res.summary.duplicates = e.duplicates;
        res.summary.over_cap = e.over_cap;
        res.summary.truncated = e.truncated;
        std::vector<std::string> records;
        for (const auto& r : res.records) records.push_back(r.to_json());
        return py::make_tuple(res.summary.to_json(), records);
      },
      py::arg("p"), py::arg("n"), py::arg("samples") = 20, py::arg("exhaustive") = false, py::arg("seed") = 1,
      py::arg("min_fixed_rank") = 0, "Summary JSON and ledger records (JSON text) of a survey");
}
