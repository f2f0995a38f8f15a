#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jtarch/bench.hpp"
#include "jtarch/engines.hpp"
#include "jtarch/fixtures.hpp"
#include "jtarch/network_io.hpp"

namespace py = pybind11;
using namespace jtarch;

namespace {

py::tuple ops(const OpCounter& c) { return py::make_tuple(c.adds, c.mults, c.divs); }

py::dict result_dict(const EngineResult& r, const BayesNet& net) {
    py::dict marg;
    for (const auto& [v, p] : r.singleton_marginals) marg[py::str(net.vars[std::size_t(v)].name)] = p.values();
    py::dict d;
    d["marginals"] = marg;
    d["ops"] = ops(r.counter);
    return d;
}

py::dict infer(const std::string& text) {
    NetworkFile f = parse_network(text);
    AllResults all = run_all(f.net, f.evidence);
    py::dict out;
    out["ls"] = result_dict(all.ls, f.net);
    out["hugin"] = result_dict(all.hugin, f.net);
    out["ss"] = result_dict(all.ss, f.net);
    out["junction_nodes"] = all.compiled.junction.size();
    out["binary_nodes"] = all.compiled.binary.size();
    return out;
}

py::dict compile_network(const std::string& text) {
    NetworkFile f = parse_network(text);
    InputSet in = input_potentials(f.net, f.evidence);
    Compiled c = compile(f.net, in);
    py::list order;
    for (int v : c.order) order.append(f.net.vars[std::size_t(v)].name);
    py::dict out;
    out["order"] = order;
    out["junction"] = dump_tree(c.junction, f.net, &in);
    out["binary"] = dump_tree(c.binary, f.net, &in);
    return out;
}

double oracle_error(const std::string& text) {
    NetworkFile f = parse_network(text);
    AllResults all = run_all(f.net, f.evidence);
    auto o = oracle_marginals(f.net, f.evidence);
    return std::max({max_marginal_error(all.ls, o), max_marginal_error(all.hugin, o), max_marginal_error(all.ss, o)});
}

py::dict bench(int n, int c1, int c2, int m, int p, int trials, std::uint64_t seed) {
    GenParams g;
    g.n = n;
    g.c1 = c1;
    g.c2 = c2;
    g.m = m;
    g.p = p;
    auto rows = run_batch(g, trials, seed);
    BatchSummary s = summarize(rows);
    py::dict out;
    out["ls"] = s.mean_ls;
    out["hugin"] = s.mean_hugin;
    out["ss"] = s.mean_ss;
    out["csv"] = to_csv(rows);
    return out;
}

} // namespace

PYBIND11_MODULE(_jtarch, m) {
    m.doc() = "Exact Bayes-net inference with LS, Hugin and Shenoy-Shafer propagation";

    py::class_<Potential>(m, "Potential")
        .def(py::init([](std::vector<int> domain, std::vector<int> cards, std::vector<double> values) {
                 return make_potential(std::move(domain), std::move(cards), std::move(values));
             }),
             py::arg("domain"), py::arg("cards"), py::arg("values"))
        .def_property_readonly("domain", &Potential::domain)
        .def_property_readonly("cards", &Potential::cards)
        .def_property_readonly("values", &Potential::values)
        .def_property_readonly("is_identity", &Potential::is_identity)
        .def("__repr__", [](const Potential& p) { return "<Potential size=" + std::to_string(p.size()) + ">"; });

    m.def("identity", [](std::vector<int> d, std::vector<int> c) { return identity_potential(d, c); });
    m.def("multiply", [](const Potential& a, const Potential& b) {
        OpCounter c;
        Potential r = multiply(a, b, c);
        return py::make_tuple(r, ops(c));
    });
    m.def("marginalize", [](const Potential& a, std::vector<int> keep) {
        OpCounter c;
        Potential r = marginalize(a, keep, c);
        return py::make_tuple(r, ops(c));
    });
    m.def("divide", [](const Potential& a, const Potential& b) {
        OpCounter c;
        Potential r = divide(a, b, c);
        return py::make_tuple(r, ops(c));
    });
    m.def("normalize", &normalize);

    m.def("chest_clinic_json", [] { return write_network(chest_clinic(), chest_clinic_evidence()); });
    m.def("three_variable_json", [] { return write_network(three_variable_net(), three_variable_evidence()); });
    m.def("infer", &infer, py::arg("network_json"));
    m.def("compile", &compile_network, py::arg("network_json"));
    m.def("oracle_error", &oracle_error, py::arg("network_json"));
    m.def("bench", &bench, py::arg("n"), py::arg("c1"), py::arg("c2"), py::arg("m"), py::arg("p"),
          py::arg("trials"), py::arg("seed"));

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InconsistencyError>(m, "InconsistencyError", PyExc_ArithmeticError);
}
