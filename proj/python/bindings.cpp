#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "ekpdim/cover.hpp"
#include "ekpdim/error.hpp"
#include "ekpdim/kronecker.hpp"
#include "ekpdim/linrep.hpp"
#include "ekpdim/orbits.hpp"
#include "ekpdim/theorems.hpp"

namespace py = pybind11;
using namespace ekpdim;

// Python ints cross the boundary as decimal strings, so any size works.
namespace pybind11::detail {
template <>
struct type_caster<BigInt> {
  PYBIND11_TYPE_CASTER(BigInt, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    const std::string digits = py::str(src);
    return value.set_str(digits, 10) == 0;
  }

  static handle cast(const BigInt& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

nlohmann::json to_native(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::tuple pair(const DimVector& d) { return py::make_tuple(d.d1, d.d2); }

std::vector<BigRat> to_alpha(const std::vector<BigInt>& alpha) {
  std::vector<BigRat> out;
  for (const auto& a : alpha) out.emplace_back(a);
  return out;
}

py::dict verdict(const RankVerdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  d["exact"] = v.exact;
  d["tested"] = v.tested;
  if (v.witness) {
    py::list w;
    for (const auto& x : *v.witness) w.append(py::str(to_string(x)));
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_ekpdim, m) {
  m.doc() = "Equal kernels and equal images dimension vectors of generalized Kronecker quivers";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  m.def("q", [](long r, const BigInt& a, const BigInt& b) { return q_r(r, {a, b}); });
  m.def("classify", [](long r, const BigInt& a, const BigInt& b) { return to_string(classify(r, {a, b})); });
  m.def("ekp_dim", [](long r, const BigInt& a, const BigInt& b) { return ekp_dim(r, {a, b}); });
  m.def("eip_dim", [](long r, const BigInt& a, const BigInt& b) { return eip_dim(r, {a, b}); });
  m.def("ekp_or_eip_dim", [](long r, const BigInt& a, const BigInt& b) { return ekp_or_eip_dim(r, {a, b}); });
  m.def("westwick_necessary", [](long r, const BigInt& a, const BigInt& b) { return westwick_necessary(r, {a, b}); });
  m.def("coxeter", [](long r, const BigInt& a, const BigInt& b) { return pair(coxeter(r, {a, b})); });
  m.def("coxeter_inv", [](long r, const BigInt& a, const BigInt& b) { return pair(coxeter_inv(r, {a, b})); });
  m.def("floor_times_lr", [](const BigInt& a, long r) { return floor_times_lr(a, r); });

  m.def(
      "orbit",
      [](long r, const BigInt& a, const BigInt& b, std::size_t back, std::size_t fwd) {
        const OrbitReport rep = orbit_report(r, {a, b}, back, fwd);
        py::dict d;
        d["q"] = rep.q_value;
        d["delta"] = pair(rep.boundary.delta);
        d["m"] = rep.boundary.m;
        py::list window;
        for (const auto& e : rep.window) {
          py::dict entry;
          entry["offset"] = e.offset;
          entry["dim"] = pair(e.dim);
          entry["ekp"] = e.ekp;
          entry["eip"] = e.eip;
          window.append(entry);
        }
        d["window"] = window;
        return d;
      },
      py::arg("r"), py::arg("a"), py::arg("b"), py::arg("back") = 3, py::arg("fwd") = 3);
  m.def("w_bound", [](long r, const BigInt& a, const BigInt& b, std::int64_t ql) { return w_bound(r, {a, b}, ql); });
  m.def("a_seq", &a_seq);

  m.def(
      "check",
      [](const std::string& name, long r, std::int64_t bound, unsigned jobs) {
        CheckResult res;
        if (name == "distance") res = check_distance_bound(r, bound, jobs);
        else if (name == "average") res = check_average_split(r, bound, 2, jobs);
        else if (name == "filtration") res = check_filtration_sweep(r, bound, jobs);
        else if (name == "descent") res = check_descent_step(r, bound, jobs);
        else if (name == "inverse-shift") res = check_inverse_shift_imaginary(r, bound, jobs);
        else if (name == "maximality") res = check_maximality_dichotomy(r, bound, jobs);
        else if (name == "aux") res = check_aux_tits_sweep(r, bound, jobs);
        else throw PreconditionError("unknown check: " + name);
        return to_python(to_json(res));
      },
      py::arg("name"), py::arg("r"), py::arg("bound"), py::arg("jobs") = 1);

  m.def(
      "rep_check",
      [](const py::object& rep, std::uint64_t seed) {
        const KronRep k = KronRep::from_json(to_native(rep));
        py::dict d;
        d["dim"] = pair(k.dim());
        d["ekp"] = verdict(is_ekp_rep(k, seed));
        d["eip"] = verdict(is_eip_rep(k, seed));
        d["brick"] = end_is_brick(k);
        return d;
      },
      py::arg("rep"), py::arg("seed") = 0);
  m.def("hom_dim", [](const py::object& x, const py::object& y) {
    return hom_dim(KronRep::from_json(to_native(x)), KronRep::from_json(to_native(y)));
  });
  m.def("ext_dim", [](const py::object& x, const py::object& y) {
    return ext_dim(KronRep::from_json(to_native(x)), KronRep::from_json(to_native(y)));
  });
  m.def(
      "make_x_alpha",
      [](long r, const std::vector<BigInt>& alpha, std::uint64_t p) {
        const FieldSpec field = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
        std::vector<BigRat> a = to_alpha(alpha);
        for (auto& x : a) x = field.reduce(x);
        return to_python(make_x_alpha(r, a, field).to_json());
      },
      py::arg("r"), py::arg("alpha"), py::arg("p") = 5);

  m.def("tau_inv_dim", [](const py::object& f) {
    return to_python(tau_inv_dim(CoverFragment::from_json(to_native(f))).to_json());
  });
  m.def("pushdown_dim", [](const py::object& f) { return pair(pushdown_dim(CoverFragment::from_json(to_native(f)))); });
  m.def(
      "pushdown_rep",
      [](const py::object& f, std::uint64_t p) {
        const FieldSpec field = p == 0 ? FieldSpec::rationals() : FieldSpec::prime(p);
        return to_python(pushdown_rep(CoverFragment::from_json(to_native(f)), field).to_json());
      },
      py::arg("fragment"), py::arg("p") = 5);
  m.def("thin_sink_branch", [](const py::object& f) -> py::object {
    const auto b = has_thin_sink_branch(CoverFragment::from_json(to_native(f)));
    if (!b) return py::none();
    return py::make_tuple(b->source, b->sink);
  });
}
