#include "locabs/oracle.hpp"

#include <unordered_set>

#include "locabs/sat.hpp"

namespace locabs::oracle {

using sat::Lit;

namespace {

// Plain per-frame Tseitin unrolling, no hashing and no sharing with the engine.
class Unroller {
public:
    Unroller(const Netlist& n, std::unordered_set<GateId> concrete) : n_(n), concrete_(std::move(concrete)) {}

    void add_frame()
    {
        int d = static_cast<int>(lits_.size());
        std::vector<Lit> cur(n_.size());
        for (GateId g = 0; g < n_.size(); ++g) {
            switch (n_.kind(g)) {
            case GateKind::Const: cur[g] = s_.True(); break;
            case GateKind::PI: cur[g] = s_.new_lit(); break;
            case GateKind::Flop:
                if (!concrete_.contains(g))
                    cur[g] = s_.new_lit();
                else if (d == 0)
                    cur[g] = ~s_.True();
                else
                    cur[g] = lit(d - 1, n_.flop_input(g));
                break;
            case GateKind::And: {
                Lit x = cur[n_.fanin0(g).gate()] ^ n_.fanin0(g).sign();
                Lit y = cur[n_.fanin1(g).gate()] ^ n_.fanin1(g).sign();
                Lit z = s_.new_lit();
                s_.add_clause({x, ~z});
                s_.add_clause({y, ~z});
                s_.add_clause({~x, ~y, z});
                cur[g] = z;
                break;
            }
            }
        }
        lits_.push_back(std::move(cur));
    }

    Lit lit(int frame, Wire w) const { return lits_[frame][w.gate()] ^ w.sign(); }
    sat::Solver& solver() { return s_; }

private:
    const Netlist& n_;
    std::unordered_set<GateId> concrete_;
    sat::Solver s_;
    std::vector<std::vector<Lit>> lits_;
};

std::unordered_set<GateId> all_flops(const Netlist& n)
{
    return {n.flops().begin(), n.flops().end()};
}

}  // namespace

std::optional<Cex> bmc_full(const Netlist& n, int depth)
{
    Unroller u(n, all_flops(n));
    for (int d = 0; d <= depth; ++d) u.add_frame();
    if (!u.solver().solve({u.lit(depth, n.bad())})) return std::nullopt;

    Cex cex;
    cex.depth = depth;
    for (int d = 0; d <= depth; ++d) {
        std::vector<lbool> pis, flops;
        for (GateId g : n.pis()) pis.push_back(u.solver().model_value(u.lit(d, Wire(g, false))));
        for (GateId g : n.flops()) flops.push_back(u.solver().model_value(u.lit(d, Wire(g, false))));
        cex.pis.push_back(std::move(pis));
        cex.flops.push_back(std::move(flops));
    }
    return cex;
}

bool bmc_abstract_any(const Netlist& n, const std::vector<GateId>& concrete, int depth)
{
    Unroller u(n, {concrete.begin(), concrete.end()});
    std::vector<Lit> any;
    for (int d = 0; d <= depth; ++d) {
        u.add_frame();
        any.push_back(u.lit(d, n.bad()));
    }
    u.solver().add_clause(any);
    return u.solver().solve();
}

std::vector<bool> simulate_concrete(const Netlist& n, const Cex& cex, bool default_for_x)
{
    std::vector<bool> bad;
    std::vector<bool> prev;
    Wire b = n.bad();
    for (int d = 0; d <= cex.depth; ++d) {
        auto val = evaluate_combinational(n, [&](GateId g) {
            if (n.kind(g) == GateKind::PI) {
                lbool v = cex.pis[d][n.ordinal(g)];
                return v.is_undef() ? default_for_x : v == lbool_1;
            }
            if (d == 0) return false;
            Wire in = n.flop_input(g);
            return prev[in.gate()] != in.sign();
        });
        bad.push_back(val[b.gate()] != b.sign());
        prev = std::move(val);
    }
    return bad;
}

}  // namespace locabs::oracle
