#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chev/report.hpp"

namespace py = pybind11;
using namespace chev;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<Integer> integers(const std::vector<std::string>& xs) {
  std::vector<Integer> out;
  for (const auto& x : xs) out.push_back(parse_integer(x));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ambiguous class numbers, S-unit cohomology and local norms for quadratic fields";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<EffortError>(m, "EffortError", PyExc_RuntimeError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

  m.attr("__version__") = kArtifactVersion;

  m.def("field", [](const std::string& d) { return to_py(field_json(make_field(parse_integer(d)))); }, py::arg("d"));

  m.def(
      "class_group",
      [](const std::string& d, bool narrow) {
        QuadField K = make_field(parse_integer(d));
        return to_py(class_group_json(narrow ? narrow_class_group(K) : class_group(K)));
      },
      py::arg("d"), py::arg("narrow") = false);

  m.def(
      "units", [](const std::string& d, const std::string& s) {
        return to_py(units_json(sunit_module(make_field(parse_integer(d)), parse_sset(s))));
      },
      py::arg("d"), py::arg("s") = "inf");

  m.def(
      "verify_chevalley",
      [](const std::string& d, const std::string& s) {
        return to_py(to_json(verify_theorem_1_1(make_field(parse_integer(d)), parse_sset(s))));
      },
      py::arg("d"), py::arg("s") = "inf");

  m.def(
      "genus_check", [](const std::string& d) { return to_py(to_json(genus_cross_check(make_field(parse_integer(d))))); },
      py::arg("d"));

  m.def(
      "norm_torus",
      [](const std::string& d, const std::string& s, const std::vector<std::string>& t) {
        return to_py(to_json(norm_torus_report(make_field(parse_integer(d)), parse_sset(s), integers(t))));
      },
      py::arg("d"), py::arg("s") = "inf", py::arg("t_primes") = std::vector<std::string>{});

  m.def(
      "explore_h0",
      [](const std::string& d, const std::string& s, const std::vector<std::string>& t, int degree) {
        Json rows = Json::array();
        for (const auto& r : truncated_h0_chain(make_field(parse_integer(d)), parse_sset(s), integers(t), degree))
          rows.push_back(to_json(r));
        return to_py(rows);
      },
      py::arg("d"), py::arg("s") = "inf", py::arg("t_primes"), py::arg("degree") = 0);

  m.def(
      "hilbert_symbol",
      [](const std::string& a, const std::string& b, const std::string& p) {
        Place v = (p == "inf" || p == "0") ? Place::infinity() : Place{parse_integer(p)};
        return hilbert_symbol(parse_rational(a), parse_rational(b), v);
      },
      py::arg("a"), py::arg("b"), py::arg("p"));

  m.def(
      "is_global_norm",
      [](const std::string& x, const std::string& d) {
        NormTest t = is_global_norm(parse_rational(x), make_field(parse_integer(d)));
        py::dict out;
        out["is_norm"] = t.is_norm;
        out["witness"] = t.witness ? py::object(py::str(t.witness->to_string())) : py::object(py::none());
        return out;
      },
      py::arg("x"), py::arg("d"));

  m.def(
      "cohomology_check",
      [](const std::string& group, const std::string& tower, const std::string& check) {
        auto g = std::make_shared<const FiniteGroup>(FiniteGroup::parse(group));
        GTower t = parse_tower(g, tower);
        if (check == "inertia_h1") return to_py(to_json(inertia_h1_check(t)));
        if (check == "residue_mod_e") return to_py(to_json(residue_mod_e_check(t)));
        if (check == "q_delta") return to_py(to_json(local_factor_q_delta(t)));
        throw InputError(ErrorCode::BadSpec, "check must be inertia_h1, residue_mod_e or q_delta");
      },
      py::arg("group"), py::arg("tower"), py::arg("check"));

  m.def(
      "sweep",
      [](long dmin, long dmax, const std::string& policy, const std::string& s, std::size_t threads, bool canonical) {
        SweepOptions o;
        o.dmin = dmin;
        o.dmax = dmax;
        o.policy = parse_s_policy(policy);
        o.explicit_s = parse_sset(s);
        o.threads = threads;
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = sweep(o);
        }
        RunConfig cfg;
        cfg.dmin = dmin;
        cfg.dmax = dmax;
        cfg.s_policy = policy;
        cfg.s = s;
        cfg.threads = threads;
        ReportEnvelope e;
        e.command = "sweep";
        e.config = cfg.echo();
        e.timestamp = utc_timestamp();
        for (const auto& r : res.rows) e.rows.push_back(to_json(r));
        e.summary = to_json(res.summary);
        return serialize(e, Format::Json, canonical);
      },
      py::arg("dmin") = 1, py::arg("dmax") = 100, py::arg("policy") = "infty", py::arg("s") = "inf",
      py::arg("threads") = 1, py::arg("canonical") = true);
}
