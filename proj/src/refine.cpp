#include "locabs/refine.hpp"

#include <set>
#include <utility>

namespace locabs {

SimState::SimState(const Netlist& n, const WSet& abstr, const Cex& cex)
    : N_(n), abstr_(abstr), fanouts_(n.size()), flop_fanouts_(n.size())
{
    for (GateId g = 0; g < n.size(); ++g) {
        if (n.kind(g) == GateKind::And) {
            fanouts_[n.fanin0(g).gate()].push_back(g);
            if (n.fanin1(g).gate() != n.fanin0(g).gate())
                fanouts_[n.fanin1(g).gate()].push_back(g);
        } else if (n.kind(g) == GateKind::Flop && !n.flop_input(g).is_undef()) {
            flop_fanouts_[n.flop_input(g).gate()].push_back(g);
        }
    }

    values_.assign(cex.depth + 1, std::vector<lbool>(n.size(), lbool_X));
    for (int d = 0; d <= cex.depth; ++d) {
        auto& val = values_[d];
        for (GateId g = 0; g < n.size(); ++g) {
            switch (n.kind(g)) {
            case GateKind::Const: val[g] = lbool_1; break;
            case GateKind::PI: val[g] = cex.pis[d][n.ordinal(g)]; break;
            case GateKind::Flop:
                val[g] = abstr_.has(Wire(g, false)) ? eval(d, g) : cex.flops[d][n.ordinal(g)];
                break;
            case GateKind::And: val[g] = eval(d, g); break;
            }
        }
    }
}

lbool SimState::eval(int frame, GateId g) const
{
    switch (N_.kind(g)) {
    case GateKind::And:
        return ternary_and(value(frame, N_.fanin0(g)), value(frame, N_.fanin1(g)));
    case GateKind::Flop:
        return frame == 0 ? lbool_0 : value(frame - 1, N_.flop_input(g));
    default:
        return values_[frame][g];
    }
}

void SimState::propagate(int frame, Wire w, lbool value)
{
    GateId g = w.gate();
    value = value ^ w.sign();
    if (values_[frame][g] == value) return;
    values_[frame][g] = value;

    // Ordered by (frame, gate id), which is a topological order of the unrolled graph.
    std::set<std::pair<int, GateId>> queue;
    auto push_fanouts = [&](int f, GateId h) {
        for (GateId a : fanouts_[h]) queue.emplace(f, a);
        if (f + 1 <= depth())
            for (GateId fl : flop_fanouts_[h])
                if (abstr_.has(Wire(fl, false))) queue.emplace(f + 1, fl);
    };
    push_fanouts(frame, g);

    while (!queue.empty()) {
        auto [f, h] = *queue.begin();
        queue.erase(queue.begin());
        lbool v = eval(f, h);
        if (v == values_[f][h]) continue;
        values_[f][h] = v;
        push_fanouts(f, h);
    }
}

SimState simulateCex(const Netlist& n, const WSet& abstr, const Cex& cex)
{
    return SimState(n, abstr, cex);
}

void simPropagate(SimState& sim, int frame, Wire w, lbool value)
{
    sim.propagate(frame, w, value);
}

std::vector<GateId> findRefinement(const Netlist& n, const WSet& abstr, const Cex& cex, SimState& sim, int target,
                                   Wire bad)
{
    std::vector<GateId> to_add;
    for (GateId g : n.flops()) {
        Wire w(g, false);
        if (abstr.has(w)) continue;
        std::uint32_t idx = n.ordinal(g);
        for (int frame = 0; frame <= target; ++frame) {
            simPropagate(sim, frame, w, lbool_X);
            if (sim.value(target, bad) == lbool_X) {
                // X reached the output: undo and concretize.
                for (; frame >= 0; --frame)
                    simPropagate(sim, frame, w, cex.flops[frame][idx]);
                to_add.push_back(g);
                break;
            }
        }
    }
    return to_add;
}

void refineAbstraction(Trace& T, int depth, Wire bad)
{
    const Netlist& N = T.design();
    Cex cex = T.getCex(depth);
    SimState sim = simulateCex(N, T.abstr(), cex);

    // After PBA has shrunk the abstraction, the model may only violate the property in an
    // earlier frame of the disjunction. Refine against a frame where bad actually holds.
    int target = depth;
    if (sim.value(depth, bad) != lbool_1) {
        for (int d = depth - 1; d >= 0; --d) {
            if (sim.value(d, bad) == lbool_1) {
                target = d;
                break;
            }
        }
    }

    for (GateId g : findRefinement(N, T.abstr(), cex, sim, target, bad))
        T.extendAbs(Wire(g, false));
}

}  // namespace locabs
