#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dnss/bounds.hpp"
#include "dnss/cli.hpp"
#include "dnss/decide.hpp"
#include "dnss/diffcore.hpp"
#include "dnss/json_io.hpp"
#include "dnss/text.hpp"

namespace py = pybind11;
using namespace dnss;

namespace {

std::vector<DiffPoly> polys(const std::vector<std::string>& xs) {
  std::vector<DiffPoly> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(parse_poly(x));
  return out;
}

BoundsConfig config(std::uint64_t c, std::uint64_t cap_bits) {
  BoundsConfig cfg;
  cfg.c = c;
  cfg.cap_bits = cap_bits;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_dnss, mod) {
  // most derived last: later translators are tried first
  const auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(mod, "ParseError", base.ptr());
  py::register_exception<CertificateError>(mod, "CertificateError", base.ptr());

  py::class_<DiffPoly>(mod, "Poly")
      .def(py::init([](const std::string& s) { return parse_poly(s); }), py::arg("text"))
      .def(py::init<long>(), py::arg("constant"))
      .def("__str__", [](const DiffPoly& p) { return to_string(p); })
      .def("__repr__", [](const DiffPoly& p) { return "Poly('" + to_string(p) + "')"; })
      .def("__eq__", [](const DiffPoly& a, const DiffPoly& b) { return a == b; })
      .def("__hash__", [](const DiffPoly& p) { return py::hash(py::str(to_string(p))); })
      .def("__add__", [](const DiffPoly& a, const DiffPoly& b) { return a + b; })
      .def("__sub__", [](const DiffPoly& a, const DiffPoly& b) { return a - b; })
      .def("__mul__", [](const DiffPoly& a, const DiffPoly& b) { return a * b; })
      .def("__neg__", [](const DiffPoly& a) { return DiffPoly() - a; })
      .def("is_zero", &DiffPoly::is_zero)
      .def("degree", [](const DiffPoly& p) { return p.degree(); })
      .def("order", [](const DiffPoly& p) { return order_of(p); })
      .def(
          "derivative", [](const DiffPoly& p, std::uint32_t k) { return total_derivative(p, k); }, py::arg("k") = 1);

  mod.def("_decide", [](const std::vector<std::string>& eqs, std::uint32_t max_order, std::uint64_t c,
                        std::uint64_t cap_bits) {
    const Verdict v = [&] {
      py::gil_scoped_release release;
      return decide(polys(eqs), max_order, config(c, cap_bits));
    }();
    return verdict_to_json(v, -1);
  });
  mod.def("_strong_nss", [](const std::vector<std::string>& eqs, const std::string& f, std::uint32_t max_order,
                            std::uint64_t max_power) -> std::optional<std::string> {
    const auto r = strong_nss(polys(eqs), parse_poly(f), max_order, max_power);
    if (!r) return std::nullopt;
    return certificate_to_json(r->certificate, -1);
  });
  mod.def("_verify", [](const std::string& cert, const std::vector<std::string>& eqs) {
    return verify_certificate(certificate_from_json(cert), polys(eqs));
  });
  mod.def("_bound", [](std::uint64_t n, std::uint64_t m, std::uint64_t e, const std::string& d,
                       std::optional<std::uint64_t> r, std::optional<std::string> L, std::uint64_t c,
                       std::uint64_t cap_bits) {
    SystemProfile p;
    p.n = n;
    p.m = m;
    p.e = e;
    p.d = Integer(d);
    p.r = r;
    std::optional<TowerInt> l;
    if (L) l = TowerInt(Integer(*L));
    return bound_report_to_json(bound_report(p, config(c, cap_bits), l), -1);
  });
  mod.def("parse_document", [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& p : parse_document(text).system()) out.push_back(to_string(p));
    return out;
  });
  mod.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
