#include "doctest.h"
#include "locabs/generators.hpp"
#include "locabs/oracle.hpp"
#include "locabs/trace.hpp"

using namespace locabs;

TEST_CASE("insert maps constants and signs")
{
    Netlist N = gen::shift_register(2);
    Trace T(N);
    CHECK(T.insert(0, N.True()) == T.unrolling().True());
    Wire f2 = Wire(N.flops()[1], false);
    CHECK(T.insert(3, ~f2) == ~T.insert(3, f2));
}

TEST_CASE("inserting an abstract flop twice adds no clauses")
{
    Netlist N = gen::shift_register(2);
    Trace T(N);
    Wire f1 = Wire(N.flops()[0], false);
    std::size_t before = T.solver().num_clauses();
    Wire a = T.insert(0, f1);
    Wire b = T.insert(0, f1);
    CHECK(a == b);
    CHECK(T.unrolling().kind(a) == GateKind::PI);
    CHECK(T.solver().num_clauses() == before);
}

TEST_CASE("extendAbs on a flop never inserted adds no clauses")
{
    Netlist N = gen::shift_register(3);
    Trace T(N);
    std::size_t before = T.solver().num_clauses();
    T.extendAbs(Wire(N.flops()[0], false));
    CHECK(T.abstr().size() == 1);
    CHECK(T.solver().num_clauses() == before);
}

TEST_CASE("extendAbs connects every existing frame with one activation literal")
{
    // f <- PI: connecting it adds only the two activation clauses per frame.
    Netlist N;
    Wire i = N.add_PI();
    Wire f = N.add_Flop();
    N.set_flop_input(f, i);
    N.set_property(~f);
    Trace T(N);
    for (int k = 0; k < 3; ++k) T.insert(k, f);
    std::size_t before = T.solver().num_clauses();
    std::size_t vars_before = T.solver().num_vars();
    T.extendAbs(f);
    CHECK(T.act_lit(f) != sat::lit_Undef);
    CHECK(T.solver().num_clauses() - before == 2 * 3);
    // one activation literal, the frame-0..2 flop PIs and the inputs of frames 0..1
    CHECK(T.solver().num_vars() - vars_before == 1 + 3 + 2);
}

TEST_CASE("solve on trivial disjunctions")
{
    Netlist N = gen::shift_register(2);
    Trace T(N);
    CHECK(T.solve({T.unrolling().True()}));
    CHECK_FALSE(T.solve({~T.unrolling().True()}));
    CHECK(T.abstr().empty());
}

TEST_CASE("concrete bad flop at frame 0 is UNSAT and survives PBA")
{
    Netlist N = gen::shift_register(2);
    Wire f2 = Wire(N.flops()[1], false);
    Trace T(N);
    T.extendAbs(f2);
    Wire b = T.insert(0, N.bad());
    CHECK_FALSE(T.solve({b}));
    CHECK(T.abstr().has(f2));
}

TEST_CASE("PBA drops unused flops and re-arms them on extendAbs")
{
    Netlist N = gen::pba_showcase();
    Wire f(N.flops()[0], false), g(N.flops()[1], false);
    Trace T(N);
    T.extendAbs(f);
    T.extendAbs(g);
    Wire b0 = T.insert(0, N.bad());
    Wire b1 = T.insert(1, N.bad());
    CHECK_FALSE(T.solve({b0, b1}));
    CHECK(T.abstr().size() >= 1);
    // depth 1 needs f concretely: g@1 is free once its input is a PI.
    std::size_t clauses = T.solver().num_clauses();
    sat::Lit ag = T.act_lit(g);
    if (!T.abstr().has(g)) {
        T.extendAbs(g);
        CHECK(T.act_lit(g) == ag);
        // Only the frames added since the prune may need new clauses; nothing is duplicated.
        CHECK(T.solver().num_clauses() == clauses);
    }
}

TEST_CASE("re-adding a trimmed flop reuses its activation literal")
{
    Netlist N = gen::shift_register(3);
    Trace T(N);
    Wire f2(N.flops()[1], false);
    for (GateId g : N.flops()) T.extendAbs(Wire(g, false));
    for (int d = 0; d < 3; ++d) T.insert(d, N.bad());
    sat::Lit a = T.act_lit(f2);
    std::size_t clauses = T.solver().num_clauses();
    T.trim({f2.gate()});
    CHECK_FALSE(T.abstr().has(f2));
    T.extendAbs(f2);
    CHECK(T.abstr().has(f2));
    CHECK(T.act_lit(f2) == a);
    CHECK(T.solver().num_clauses() == clauses);
}

TEST_CASE("PBA record policy leaves the abstraction alone")
{
    Netlist N = gen::pba_showcase();
    Wire f(N.flops()[0], false), g(N.flops()[1], false);
    Trace T(N, TraceOptions{.pba = PbaPolicy::record});
    T.extendAbs(f);
    T.extendAbs(g);
    CHECK_FALSE(T.last_redundant().has_value());
    CHECK_FALSE(T.solve({T.insert(0, N.bad()), T.insert(1, N.bad())}));
    CHECK(T.abstr().size() == 2);
    REQUIRE(T.last_redundant().has_value());
    T.trim(*T.last_redundant());
    CHECK(T.abstr().size() == 2 - T.last_redundant()->size());
}

TEST_CASE("getCex reports X for gates outside the unrolling")
{
    Netlist N = gen::shift_register(3);
    Trace T(N);
    CHECK_THROWS(T.getCex(0));
    Wire f3(N.flops()[2], false);
    T.extendAbs(f3);
    REQUIRE(T.solve({T.insert(0, N.bad()), T.insert(1, N.bad())}));
    Cex cex = T.getCex(1);
    CHECK(cex.depth == 1);
    REQUIRE(cex.pis.size() == 2);
    CHECK(cex.pis[0][0] == lbool_X);
    CHECK(cex.flops[0][0] == lbool_X);
    CHECK(cex.flops[0][2] == lbool_0);  // zero initialization
    CHECK(cex.flops[0][1] == lbool_1);  // f2@0 drives f3@1
    CHECK(cex.flops[1][2] == lbool_1);
}

TEST_CASE("pruned logic stays in the solver")
{
    Netlist N = gen::pba_showcase();
    Trace T(N);
    T.extendAbs(Wire(N.flops()[0], false));
    T.extendAbs(Wire(N.flops()[1], false));
    std::vector<Wire> disj;
    std::size_t clauses = 0;
    for (int d = 0; d < 4; ++d) {
        disj.push_back(T.insert(d, N.bad()));
        CHECK_FALSE(T.solve(disj));
        CHECK(T.solver().num_clauses() >= clauses);
        clauses = T.solver().num_clauses();
    }
    CHECK(T.solvers_constructed() == 1);
}

TEST_CASE("fresh-solver variant gives the same verdicts")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Netlist N = gen::random_circuit(seed);
        Trace A(N), B(N, TraceOptions{.fresh_solver_per_call = true});
        for (GateId g : N.flops()) {
            A.extendAbs(Wire(g, false));
            B.extendAbs(Wire(g, false));
        }
        std::vector<Wire> da, db;
        for (int d = 0; d < 4; ++d) {
            da.push_back(A.insert(d, N.bad()));
            db.push_back(B.insert(d, N.bad()));
            bool ra = A.solve(da), rb = B.solve(db);
            REQUIRE(ra == rb);
            if (ra) break;
        }
        CHECK(B.solvers_constructed() > 1);
    }
}
