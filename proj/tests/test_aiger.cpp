#include <map>

#include "doctest.h"
#include "locabs/aiger.hpp"
#include "locabs/engine.hpp"
#include "locabs/generators.hpp"
#include "locabs/oracle.hpp"

using namespace locabs;

namespace {

// Structural isomorphism that matches PIs and flops by position.
bool isomorphic(const Netlist& a, const Netlist& b)
{
    if (a.pis().size() != b.pis().size() || a.flops().size() != b.flops().size() || a.num_ands() != b.num_ands())
        return false;
    std::vector<GateId> m(a.size(), 0);
    for (std::size_t i = 0; i < a.pis().size(); ++i) m[a.pis()[i]] = b.pis()[i];
    for (std::size_t i = 0; i < a.flops().size(); ++i) m[a.flops()[i]] = b.flops()[i];
    std::map<std::pair<std::uint32_t, std::uint32_t>, GateId> b_ands;
    for (GateId g = 0; g < b.size(); ++g)
        if (b.kind(g) == GateKind::And) {
            auto x = b.fanin0(g).raw(), y = b.fanin1(g).raw();
            b_ands[{std::min(x, y), std::max(x, y)}] = g;
        }
    auto map = [&](Wire w) { return Wire(m[w.gate()], w.sign()); };
    for (GateId g = 0; g < a.size(); ++g) {
        if (a.kind(g) != GateKind::And) continue;
        auto x = map(a.fanin0(g)).raw(), y = map(a.fanin1(g)).raw();
        auto it = b_ands.find({std::min(x, y), std::max(x, y)});
        if (it == b_ands.end()) return false;
        m[g] = it->second;
    }
    for (GateId f : a.flops())
        if (map(a.flop_input(f)) != b.flop_input(m[f])) return false;
    return map(a.bad()) == b.bad();
}

const char* kShiftAscii = "aag 3 1 2 1 0\n2\n4 2\n6 4\n6\n";
const std::string kShiftBinary = std::string("aig 3 1 2 1 0\n2\n4\n6\n");

}  // namespace

TEST_CASE("single input as output")
{
    Netlist N = aiger::read_aiger("aag 1 1 0 1 0\n2\n2\n");
    CHECK(N.pis().size() == 1);
    CHECK(N.bad() == Wire(N.pis()[0], false));
}

TEST_CASE("constant false output")
{
    Netlist N = aiger::read_aiger("aag 0 0 0 1 0\n0\n");
    CHECK(N.bad() == ~N.True());
}

TEST_CASE("output-is-property flag negates")
{
    aiger::ReadOptions o;
    o.outputs = aiger::OutputKind::property;
    Netlist N = aiger::read_aiger("aag 1 1 0 1 0\n2\n2\n", o);
    CHECK(N.bad() == ~Wire(N.pis()[0], false));
}

TEST_CASE("bad section takes precedence over outputs")
{
    Netlist N = aiger::read_aiger("aag 2 2 0 1 0 1\n2\n4\n2\n5\n");
    CHECK(N.bad() == ~Wire(N.pis()[1], false));
    aiger::ReadOptions o;
    o.property_index = 1;
    CHECK_THROWS_AS(aiger::read_aiger("aag 2 2 0 1 0 1\n2\n4\n2\n5\n", o), aiger::AigerError);
}

TEST_CASE("binary and ASCII shift register agree")
{
    Netlist a = aiger::read_aiger(kShiftAscii);
    Netlist b = aiger::read_aiger(kShiftBinary);
    CHECK(isomorphic(a, b));
    CHECK(isomorphic(a, gen::shift_register(2)));
}

TEST_CASE("binary and-gate deltas")
{
    // 6 = !i1 & i0, deltas 6-5 and 5-2
    std::string bin = "aig 3 2 0 1 1\n6\n";
    bin += static_cast<char>(1);
    bin += static_cast<char>(3);
    Netlist N = aiger::read_aiger(bin);
    Netlist ref = aiger::read_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 5 2\n");
    CHECK(isomorphic(N, ref));
}

TEST_CASE("unordered ASCII and gates")
{
    Netlist N = aiger::read_aiger("aag 4 2 0 1 2\n2\n4\n8\n8 6 2\n6 2 4\n");
    CHECK(N.num_ands() == 2);
    CHECK_THROWS_AS(aiger::read_aiger("aag 4 2 0 1 2\n2\n4\n8\n8 6 2\n6 8 4\n"), aiger::AigerError);
}

TEST_CASE("malformed input is rejected")
{
    CHECK_THROWS_AS(aiger::read_aiger("aig x\n"), aiger::AigerError);
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 1 0 1 0\n2\n4\n"), aiger::AigerError);          // literal > 2M+1
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 0 1 1 0\n2 3 1\n2\n"), aiger::AigerError);      // reset 1
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 0 1 1 0\n2 3 2\n2\n"), aiger::AigerError);      // reset X
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 1 0 1 0\n2\n"), aiger::AigerError);             // truncated
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 1 0 1 0\n3\n2\n"), aiger::AigerError);          // odd input
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 1 0 0 0\n2\n"), aiger::AigerError);             // no property
    CHECK_THROWS_AS(aiger::read_aiger("aag 1 1 0 1 0 0 1\n2\n2\n2\n"), aiger::AigerError);   // C section
    CHECK_NOTHROW(aiger::read_aiger("aag 1 0 1 1 0\n2 3 0\n2\n"));
}

TEST_CASE("symbols and comments are kept")
{
    auto d = aiger::parse("aag 1 1 0 1 0\n2\n2\ni0 req\no0 err\nc\nhello\n");
    CHECK(d.symbols == std::vector<std::string>{"i0 req", "o0 err"});
    CHECK(d.comments == std::vector<std::string>{"hello"});
}

TEST_CASE("write_abstracted with every flop is isomorphic")
{
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Netlist N = gen::random_circuit(seed);
        WSet all;
        for (GateId g : N.flops()) all.insert(Wire(g, false));
        for (bool binary : {false, true}) {
            Netlist back = aiger::read_aiger(aiger::write_abstracted(N, all, binary));
            REQUIRE(isomorphic(N, back));
        }
    }
}

TEST_CASE("write_abstracted with no flops turns latches into inputs")
{
    Netlist N = gen::random_circuit(5);
    auto d = aiger::parse(aiger::write_abstracted(N, WSet{}));
    CHECK(d.header.L == 0);
    CHECK(d.header.I == N.pis().size() + N.flops().size());
    CHECK(d.header.A == N.num_ands());
}

TEST_CASE("abstracting the first stage of a shift register")
{
    Netlist N = gen::shift_register(2);
    WSet abstr;
    abstr.insert(Wire(N.flops()[1], false));
    Netlist A = aiger::read_aiger(aiger::write_abstracted(N, abstr));
    REQUIRE(A.pis().size() == 2);
    REQUIRE(A.flops().size() == 1);
    // f2 remains a latch fed by the new input that replaced f1
    CHECK(A.flop_input(A.flops()[0]) == Wire(A.pis()[1], false));
    CHECK(A.bad() == Wire(A.flops()[0], false));
}

TEST_CASE("flop lists are sorted")
{
    CHECK(aiger::write_flop_list(std::vector<std::uint32_t>{}) == "");
    CHECK(aiger::write_flop_list(std::vector<std::uint32_t>{0}) == "0\n");
    CHECK(aiger::write_flop_list(std::vector<std::uint32_t>{2, 0}) == "0\n2\n");
    Netlist N = gen::shift_register(3);
    WSet s;
    s.insert(Wire(N.flops()[2], false));
    s.insert(Wire(N.flops()[0], false));
    CHECK(aiger::write_flop_list(N, s) == "0\n2\n");
}

TEST_CASE("witness layout and replay")
{
    Netlist N = aiger::read_aiger(kShiftAscii);
    EngineOptions o;
    o.limits.max_depth = 5;
    auto r = combinedAbstraction(N, o);
    REQUIRE(r.is_cex());
    std::string w = aiger::write_witness(N, r.counterexample().cex, 0);
    CHECK(w.rfind("1\nb0\n00\n1\n", 0) == 0);
    CHECK(w.size() == std::string("1\nb0\n00\n1\nx\nx\n.\n").size());
    CHECK(w.ends_with("\n.\n"));
    Cex back = aiger::parse_witness(w, N);
    CHECK(back.depth == 2);
    CHECK(oracle::simulate_concrete(N, back, false).back());
    CHECK_THROWS_AS(aiger::parse_witness("1\nb0\n000\n1\n.\n", N), aiger::AigerError);
}

TEST_CASE("witness for a design without inputs")
{
    Netlist N = aiger::read_aiger("aag 1 0 1 1 0\n2 3\n2\n");  // latch toggles to 1 forever
    EngineOptions o;
    o.limits.max_depth = 3;
    auto r = combinedAbstraction(N, o);
    REQUIRE(r.is_cex());
    CHECK(r.counterexample().cex.depth == 1);
    std::string w = aiger::write_witness(N, r.counterexample().cex, 0);
    CHECK(w == "1\nb0\n0\n\n\n.\n");
    CHECK(aiger::parse_witness(w, N).depth == 1);
}
