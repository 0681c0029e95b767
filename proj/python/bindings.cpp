#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "locabs/aiger.hpp"
#include "locabs/engine.hpp"
#include "locabs/generators.hpp"
#include "locabs/oracle.hpp"

namespace py = pybind11;
using namespace locabs;

namespace {

std::string lbool_row(const std::vector<lbool>& row)
{
    std::string s;
    for (lbool v : row) s += v.to_char();
    return s;
}

lbool lbool_of(char c)
{
    switch (c) {
    case '0': return lbool_0;
    case '1': return lbool_1;
    case 'x': case 'X': return lbool_X;
    }
    throw py::value_error(std::string("expected 0, 1 or x, got '") + c + "'");
}

std::vector<std::vector<lbool>> rows_of(const std::vector<std::string>& rows)
{
    std::vector<std::vector<lbool>> out;
    for (const auto& r : rows) {
        out.emplace_back();
        for (char c : r) out.back().push_back(lbool_of(c));
    }
    return out;
}

WSet flop_set(const Netlist& n, const std::vector<std::uint32_t>& ordinals)
{
    WSet s;
    for (auto i : ordinals) {
        if (i >= n.flops().size()) throw py::index_error("flop index " + std::to_string(i) + " out of range");
        s.insert(Wire(n.flops()[i], false));
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_locabs, m)
{
    m.doc() = "Combined counterexample- and proof-based localization abstraction";

    py::register_exception<NetlistError>(m, "NetlistError", PyExc_ValueError);
    py::register_exception<aiger::AigerError>(m, "AigerError", PyExc_ValueError);

    py::class_<Wire>(m, "Wire")
        .def_property_readonly("gate", &Wire::gate)
        .def_property_readonly("sign", &Wire::sign)
        .def("__invert__", [](Wire w) { return ~w; })
        .def("__xor__", [](Wire w, bool b) { return w ^ b; })
        .def("__eq__", [](Wire a, Wire b) { return a == b; })
        .def("__hash__", [](Wire w) { return w.raw(); })
        .def("__repr__", [](Wire w) { return std::string(w.sign() ? "~" : "") + "w" + std::to_string(w.gate()); });

    py::enum_<GateKind>(m, "GateKind")
        .value("Const", GateKind::Const)
        .value("PI", GateKind::PI)
        .value("And", GateKind::And)
        .value("Flop", GateKind::Flop);

    py::class_<Netlist>(m, "Netlist")
        .def(py::init<>())
        .def("true", &Netlist::True)
        .def("add_pi", &Netlist::add_PI)
        .def("add_flop", &Netlist::add_Flop)
        .def("add_and", &Netlist::add_And)
        .def("set_flop_input", &Netlist::set_flop_input)
        .def("set_property", &Netlist::set_property)
        .def("bad", &Netlist::bad)
        .def("kind", py::overload_cast<Wire>(&Netlist::kind, py::const_))
        .def("flop_input", [](const Netlist& n, Wire f) { return n.flop_input(f.gate()); })
        .def_property_readonly("num_pis", [](const Netlist& n) { return n.pis().size(); })
        .def_property_readonly("num_flops", [](const Netlist& n) { return n.flops().size(); })
        .def_property_readonly("num_ands", &Netlist::num_ands)
        .def("pi", [](const Netlist& n, std::size_t i) { return Wire(n.pis()[i], false); })
        .def("flop", [](const Netlist& n, std::size_t i) { return Wire(n.flops()[i], false); })
        .def("__len__", &Netlist::size);

    py::class_<Cex>(m, "Cex")
        .def(py::init([](int depth, const std::vector<std::string>& pis, const std::vector<std::string>& flops) {
                 Cex c;
                 c.depth = depth;
                 c.pis = rows_of(pis);
                 c.flops = rows_of(flops);
                 return c;
             }),
             py::arg("depth"), py::arg("pis"), py::arg("flops"))
        .def_readonly("depth", &Cex::depth)
        .def_property_readonly("pis",
                               [](const Cex& c) {
                                   std::vector<std::string> out;
                                   for (const auto& r : c.pis) out.push_back(lbool_row(r));
                                   return out;
                               })
        .def_property_readonly("flops", [](const Cex& c) {
            std::vector<std::string> out;
            for (const auto& r : c.flops) out.push_back(lbool_row(r));
            return out;
        });

    py::class_<DepthRecord>(m, "DepthRecord")
        .def_readonly("depth", &DepthRecord::depth)
        .def_readonly("sat_calls", &DepthRecord::sat_calls)
        .def_readonly("abstr_size", &DepthRecord::abstr_size)
        .def_readonly("conflicts", &DepthRecord::conflicts)
        .def_readonly("seconds", &DepthRecord::seconds);

    py::class_<Stats>(m, "Stats")
        .def_readonly("depths", &Stats::depths)
        .def_readonly("sat_calls", &Stats::sat_calls)
        .def_readonly("conflicts", &Stats::conflicts)
        .def_readonly("seconds", &Stats::seconds)
        .def_readonly("solvers_constructed", &Stats::solvers_constructed)
        .def("to_csv", &stats_csv);

    py::class_<EngineResult>(m, "EngineResult")
        .def_property_readonly("is_cex", &EngineResult::is_cex)
        .def_property_readonly("cex",
                               [](const EngineResult& r) -> py::object {
                                   if (!r.is_cex()) return py::none();
                                   return py::cast(r.counterexample().cex);
                               })
        .def_property_readonly("flops",
                               [](const EngineResult& r) -> py::object {
                                   if (r.is_cex()) return py::none();
                                   return py::cast(r.abstraction().flops);
                               })
        .def_property_readonly("depth_completed",
                               [](const EngineResult& r) -> py::object {
                                   if (r.is_cex()) return py::none();
                                   return py::cast(r.abstraction().depth_completed);
                               })
        .def_readonly("stats", &EngineResult::stats);

    m.def(
        "combined_abstraction",
        [](const Netlist& n, std::optional<int> max_depth, std::optional<double> max_seconds,
           std::optional<std::uint64_t> max_conflicts, const std::string& mode, std::uint64_t seed,
           std::function<void(const DepthRecord&)> on_depth) {
            EngineOptions opts;
            opts.limits.max_depth = max_depth;
            opts.limits.max_seconds = max_seconds;
            opts.limits.max_conflicts = max_conflicts;
            opts.mode = parse_mode(mode);
            opts.seed = seed;
            if (on_depth) opts.on_depth = on_depth;
            return combinedAbstraction(n, opts);
        },
        py::arg("netlist"), py::kw_only(), py::arg("max_depth") = py::none(), py::arg("max_seconds") = py::none(),
        py::arg("max_conflicts") = py::none(), py::arg("mode") = "interleaved", py::arg("seed") = 0,
        py::arg("on_depth") = nullptr,
        "Run the abstraction loop. Returns a counterexample or the abstraction reached at the limit.");

    m.def(
        "read_aiger",
        [](const py::bytes& data, int property_index, bool output_is_property) {
            aiger::ReadOptions o;
            o.property_index = property_index;
            o.outputs = output_is_property ? aiger::OutputKind::property : aiger::OutputKind::bad;
            return aiger::read_aiger(std::string(data), o);
        },
        py::arg("data"), py::arg("property_index") = 0, py::arg("output_is_property") = false);
    m.def(
        "read_file",
        [](const std::string& path, int property_index, bool output_is_property) {
            aiger::ReadOptions o;
            o.property_index = property_index;
            o.outputs = output_is_property ? aiger::OutputKind::property : aiger::OutputKind::bad;
            return aiger::read_file(path, o).netlist;
        },
        py::arg("path"), py::arg("property_index") = 0, py::arg("output_is_property") = false);
    m.def(
        "write_abstracted",
        [](const Netlist& n, const std::vector<std::uint32_t>& flops, bool binary) {
            return py::bytes(aiger::write_abstracted(n, flop_set(n, flops), binary));
        },
        py::arg("netlist"), py::arg("flops"), py::arg("binary") = false);
    m.def("write_flop_list", py::overload_cast<std::vector<std::uint32_t>>(&aiger::write_flop_list));
    m.def("write_witness", &aiger::write_witness, py::arg("netlist"), py::arg("cex"), py::arg("property_index") = 0);
    m.def("parse_witness", &aiger::parse_witness);

    m.def("bmc_full", &oracle::bmc_full, py::arg("netlist"), py::arg("depth"));
    m.def("simulate_concrete", &oracle::simulate_concrete, py::arg("netlist"), py::arg("cex"),
          py::arg("default_for_x") = false);

    m.def("shift_register", &gen::shift_register);
    m.def("pba_showcase", &gen::pba_showcase);
    m.def(
        "random_circuit",
        [](std::uint64_t seed, int max_pis, int max_flops, int max_ands) {
            return gen::random_circuit(seed, gen::RandomParams{max_pis, max_flops, max_ands});
        },
        py::arg("seed"), py::arg("max_pis") = 6, py::arg("max_flops") = 25, py::arg("max_ands") = 150);
}
