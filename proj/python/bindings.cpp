// JSON-valued results cross the boundary as strings; the Python package
// decodes them.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matfrag/fragility.hpp"
#include "matfrag/generate.hpp"
#include "matfrag/instance.hpp"
#include "matfrag/reductions.hpp"
#include "matfrag/suites.hpp"

namespace py = pybind11;
using namespace matfrag;

namespace {

LabeledMatrix make_matrix(const Field& F, std::vector<Label> rows, std::vector<Label> cols,
                          const std::vector<std::vector<Code>>& entries) {
  if (entries.size() != rows.size()) throw Error(ErrorKind::SchemaViolation, "entries: expected one list per row");
  std::vector<Code> flat;
  for (const auto& row : entries) {
    if (row.size() != cols.size()) throw Error(ErrorKind::SchemaViolation, "entries: row length differs from cols");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return LabeledMatrix(F, std::move(rows), std::move(cols), std::move(flat));
}

std::vector<std::vector<Code>> entries_of(const LabeledMatrix& A) {
  std::vector<std::vector<Code>> out;
  for (const auto& r : A.rows()) {
    auto& row = out.emplace_back();
    for (const auto& c : A.cols()) row.push_back(A.entry(r, c).code());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  // Raised errors carry the error kind name as `.kind`.
  py::exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("matfrag._core").attr("Error");
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<Field>(m, "Field")
      .def_static("prime", [](unsigned p) { return make_prime_field(p); }, py::arg("p"))
      .def_static("of_order", [](unsigned q) { return field_of_order(q); }, py::arg("q"))
      .def("extend", [](const Field& f, unsigned k) { return extend_field(f, k); }, py::arg("k"))
      .def_property_readonly("characteristic", &Field::characteristic)
      .def_property_readonly("degree", &Field::degree)
      .def_property_readonly("order", &Field::order)
      .def_property_readonly("name", &Field::name)
      .def("add", &Field::add)
      .def("sub", &Field::sub)
      .def("neg", &Field::neg)
      .def("mul", &Field::mul)
      .def("inv", &Field::inv)
      .def("pow", &Field::pow)
      .def("is_subfield_of", &Field::is_subfield_of)
      .def("in_subfield", [](const Field& f, Code c, const Field& sub) { return is_in_subfield(f.elem(c), sub); })
      .def("embed", [](const Field& f, Code c, const Field& target) { return embed(f.elem(c), target).code(); })
      .def("to_json", [](const Field& f) { return field_to_json(f).dump(); })
      .def(py::self == py::self)
      .def("__repr__", [](const Field& f) { return "Field(" + f.name() + ")"; });

  py::class_<LabeledMatrix>(m, "Matrix")
      .def(py::init(&make_matrix), py::arg("field"), py::arg("rows"), py::arg("cols"), py::arg("entries"))
      .def_property_readonly("field", &LabeledMatrix::field)
      .def_property_readonly("rows", &LabeledMatrix::rows)
      .def_property_readonly("cols", &LabeledMatrix::cols)
      .def_property_readonly("entries", &entries_of)
      .def("entry", [](const LabeledMatrix& A, const Label& r, const Label& c) { return A.entry(r, c).code(); })
      .def("submatrix", [](const LabeledMatrix& A, const LabelSet& X) { return submatrix(A, X); })
      .def("rank", [](const LabeledMatrix& A) { return rank(A); })
      .def("transpose", [](const LabeledMatrix& A) { return transpose(A); })
      .def("is_x_fragile", [](const LabeledMatrix& A, const LabelSet& X) { return is_X_fragile_matrix(A, X); })
      .def("to_json", [](const LabeledMatrix& A) { return matrix_to_json(A).dump(); });

  py::class_<ReprMatroid>(m, "Matroid")
      .def(py::init<LabeledMatrix>(), py::arg("matrix"))
      .def_static("isolated", [](const LabelSet& B, const LabelSet& E, const Field& F) { return isolated(B, E, F); },
                  py::arg("basis"), py::arg("ground"), py::arg("field"))
      .def_property_readonly("matrix", &ReprMatroid::rep)
      .def_property_readonly("field", &ReprMatroid::field)
      .def_property_readonly("ground", &ReprMatroid::ground)
      .def_property_readonly("basis", &ReprMatroid::basis)
      .def("rank", [](const ReprMatroid& M) { return M.rank(); })
      .def("rank_of", [](const ReprMatroid& M, const LabelSet& X) { return rank_set(M, X); })
      .def("dual", [](const ReprMatroid& M) { return dual(M); })
      .def("minor", [](const ReprMatroid& M, const LabelSet& C, const LabelSet& D) { return minor(M, {C, D}); },
           py::arg("contract") = LabelSet{}, py::arg("delete") = LabelSet{})
      .def("bases", [](const ReprMatroid& M) { return bases(M); })
      .def("closure", [](const ReprMatroid& M, const LabelSet& X) { return closure(M, X); })
      .def("is_circuit", [](const ReprMatroid& M, const LabelSet& X) { return is_circuit(M, X); })
      .def("is_circuit_hyperplane", &is_circuit_hyperplane)
      .def("equals", [](const ReprMatroid& a, const ReprMatroid& b) { return equals(a, b); })
      .def("to_json", [](const ReprMatroid& M) { return matroid_to_json(M).dump(); });

  m.def("is_minor", [](const ReprMatroid& M, const ReprMatroid& N) { return is_minor(M, N); });
  m.def("is_n_fragile", [](const ReprMatroid& M, const ReprMatroid& N) { return is_N_fragile(M, N); });
  m.def("fragile_partitions", [](const ReprMatroid& M, const ReprMatroid& N) {
    std::vector<std::pair<LabelSet, LabelSet>> out;
    for (const auto& s : fragile_partitions(M, N)) out.emplace_back(s.contract, s.remove);
    return out;
  });
  m.def("display_basis", &display_basis);
  m.def("is_relaxation", &is_relaxation);
  m.def("zero_out", [](const ReprMatroid& M, const ReprMatroid& N) {
    const ZeroOutResult r = zero_out(M, N);
    return py::make_tuple(r.matroid, r.display_basis, r.minor_basis);
  });
  m.def("relax_entry", [](const ReprMatroid& M, const LabelSet& C, const LabelSet& D) {
    const Relaxation r = relax_entry(M, C, D);
    py::dict d;
    d["m1"] = r.m1;
    d["m2"] = r.m2;
    d["hyperplane"] = r.hyperplane;
    d["c"] = r.c;
    d["d"] = r.d;
    d["theta"] = r.theta.code();
    return d;
  });
  m.def(
      "_pipeline",
      [](const ReprMatroid& M, const ReprMatroid& N, bool conformance) {
        PipelineOptions opts;
        opts.conformance = conformance;
        return canonical_dump(trace_to_json(pipeline(M, N, opts)));
      },
      py::arg("M"), py::arg("N"), py::arg("conformance") = false);
  m.def("_parse_instance", [](const std::string& text) {
    const InstanceFile inst = parse_instance(text);
    return py::make_tuple(inst.matroid, inst.task ? instance_to_json(inst)["task"].dump() : std::string("null"));
  });
  m.def("_normalize_instance", [](const std::string& text) { return serialize_instance(parse_instance(text)); });
  m.def("suite_names", &suite_names);
  m.def(
      "_run_suite",
      [](const std::string& name, std::uint64_t seed, bool conformance) {
        SuiteConfig cfg;
        cfg.seed = seed;
        cfg.conformance = conformance;
        py::gil_scoped_release release;
        return canonical_dump(run_suite(name, cfg).report);
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("conformance") = false);
}
