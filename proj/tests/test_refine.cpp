#include <random>

#include "doctest.h"
#include "locabs/generators.hpp"
#include "locabs/oracle.hpp"
#include "locabs/refine.hpp"

using namespace locabs;

namespace {

Cex uniform_cex(const Netlist& N, int depth, lbool v)
{
    Cex c;
    c.depth = depth;
    c.pis.assign(depth + 1, std::vector<lbool>(N.pis().size(), v));
    c.flops.assign(depth + 1, std::vector<lbool>(N.flops().size(), v));
    return c;
}

struct AndOfFlops {
    Netlist N;
    Wire f, g;
    AndOfFlops()
    {
        Wire i = N.add_PI();
        f = N.add_Flop();
        g = N.add_Flop();
        N.set_flop_input(f, i);
        N.set_flop_input(g, i);
        N.set_property(~N.add_And(f, g));
    }
};

}  // namespace

TEST_CASE("all-X counterexample leaves bad at X")
{
    Netlist N;
    Wire i = N.add_PI();
    N.set_property(~i);
    SimState sim = simulateCex(N, WSet{}, uniform_cex(N, 2, lbool_X));
    for (int d = 0; d <= 2; ++d) CHECK(sim.value(d, N.bad()) == lbool_X);
    CHECK(sim.value(1, N.True()) == lbool_1);
}

TEST_CASE("concrete flops start at zero whatever the counterexample says")
{
    Netlist N = gen::shift_register(2);
    WSet abstr;
    Wire f2(N.flops()[1], false);
    abstr.insert(f2);
    SimState sim = simulateCex(N, abstr, uniform_cex(N, 1, lbool_1));
    CHECK(sim.value(0, f2) == lbool_0);
    CHECK(sim.value(1, f2) == lbool_1);  // copies f1@0, which is abstract
}

TEST_CASE("abstract bad flop takes its counterexample value")
{
    Netlist N = gen::shift_register(2);
    Cex cex = uniform_cex(N, 0, lbool_0);
    cex.flops[0][1] = lbool_1;
    SimState sim = simulateCex(N, WSet{}, cex);
    CHECK(sim.value(0, N.bad()) == lbool_1);
}

TEST_CASE("X propagation through an And")
{
    AndOfFlops c;
    Cex cex = uniform_cex(c.N, 0, lbool_1);
    SimState sim = simulateCex(c.N, WSet{}, cex);
    REQUIRE(sim.value(0, c.N.bad()) == lbool_1);
    simPropagate(sim, 0, c.f, lbool_X);
    CHECK(sim.value(0, c.N.bad()) == lbool_X);

    cex.flops[0][1] = lbool_0;
    SimState sim0 = simulateCex(c.N, WSet{}, cex);
    simPropagate(sim0, 0, c.f, lbool_X);
    CHECK(sim0.value(0, c.N.bad()) == lbool_0);
}

TEST_CASE("propagating the original value back restores the state")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Netlist N = gen::random_circuit(seed);
        std::mt19937_64 rng(seed);
        int depth = 3;
        Cex cex = uniform_cex(N, depth, lbool_0);
        for (auto& fr : cex.pis)
            for (auto& v : fr) v = lbool::from_raw(rng() % 3);
        for (auto& fr : cex.flops)
            for (auto& v : fr) v = lbool::from_raw(rng() % 3);
        WSet abstr;
        for (GateId g : N.flops())
            if (rng() & 1) abstr.insert(Wire(g, false));
        SimState sim = simulateCex(N, abstr, cex);
        SimState before = sim;
        for (GateId g : N.flops()) {
            if (abstr.has(Wire(g, false))) continue;
            int frame = static_cast<int>(rng() % (depth + 1));
            simPropagate(sim, frame, Wire(g, false), lbool_X);
            simPropagate(sim, frame, Wire(g, false), cex.flops[frame][N.ordinal(g)]);
            REQUIRE(sim == before);
        }
    }
}

TEST_CASE("incremental propagation agrees with re-simulation")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Netlist N = gen::random_circuit(seed);
        std::mt19937_64 rng(seed * 7);
        int depth = 3;
        Cex cex = uniform_cex(N, depth, lbool_0);
        for (auto& fr : cex.pis)
            for (auto& v : fr) v = lbool::from_raw(rng() % 2);
        for (auto& fr : cex.flops)
            for (auto& v : fr) v = lbool::from_raw(rng() % 2);
        WSet abstr;
        for (GateId g : N.flops())
            if (rng() % 3 == 0) abstr.insert(Wire(g, false));
        SimState sim = simulateCex(N, abstr, cex);
        for (int k = 0; k < 5; ++k) {
            GateId g = N.flops()[rng() % N.flops().size()];
            if (abstr.has(Wire(g, false))) continue;
            int frame = static_cast<int>(rng() % (depth + 1));
            simPropagate(sim, frame, Wire(g, false), lbool_X);
            cex.flops[frame][N.ordinal(g)] = lbool_X;
        }
        CHECK(sim == simulateCex(N, abstr, cex));
    }
}

TEST_CASE("refinement of a single abstract bad flop")
{
    Netlist N;
    Wire i = N.add_PI();
    Wire f = N.add_Flop();
    N.set_flop_input(f, i);
    N.set_property(~f);
    Cex cex = uniform_cex(N, 0, lbool_1);
    SimState sim = simulateCex(N, WSet{}, cex);
    CHECK(findRefinement(N, WSet{}, cex, sim, 0, N.bad()) == std::vector<GateId>{f.gate()});
}

TEST_CASE("shift register at depth 0 concretizes only the last stage")
{
    Netlist N = gen::shift_register(2);
    Trace T(N);
    REQUIRE(T.solve({T.insert(0, N.bad())}));
    refineAbstraction(T, 0, N.bad());
    CHECK(T.abstr().members() == std::vector<GateId>{N.flops()[1]});
}

TEST_CASE("a genuine counterexample leaves the abstraction unchanged")
{
    Netlist N = gen::shift_register(2);
    Trace T(N);
    for (GateId g : N.flops()) T.extendAbs(Wire(g, false));
    std::vector<Wire> disj;
    for (int d = 0; d <= 2; ++d) disj.push_back(T.insert(d, N.bad()));
    REQUIRE(T.solve(disj));
    WSet before = T.abstr();
    refineAbstraction(T, 2, N.bad());
    CHECK(T.abstr() == before);
}

TEST_CASE("flops left abstract cannot push X into bad")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        Netlist N = gen::random_circuit(seed);
        Trace T(N);
        std::vector<Wire> disj;
        int depth = 0;
        for (; depth < 4; ++depth) {
            disj.push_back(T.insert(depth, N.bad()));
            if (T.solve(disj)) break;
        }
        if (depth == 4) continue;
        Cex cex = T.getCex(depth);
        WSet abstr = T.abstr();
        SimState sim = simulateCex(N, abstr, cex);
        int target = depth;
        while (target > 0 && sim.value(target, N.bad()) != lbool_1) --target;
        REQUIRE(sim.value(target, N.bad()) == lbool_1);
        auto added = findRefinement(N, abstr, cex, sim, target, N.bad());
        // With every flop not added X-ed at all frames, bad is still 1.
        CHECK(sim.value(target, N.bad()) == lbool_1);
        for (GateId g : N.flops()) {
            if (abstr.has(Wire(g, false)) || std::find(added.begin(), added.end(), g) != added.end()) continue;
            for (int fr = 0; fr <= target; ++fr) CHECK(sim.value(fr, Wire(g, false)) == lbool_X);
        }
        // Determinism.
        SimState sim2 = simulateCex(N, abstr, cex);
        CHECK(findRefinement(N, abstr, cex, sim2, target, N.bad()) == added);
    }
}
