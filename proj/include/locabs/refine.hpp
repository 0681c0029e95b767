#pragma once

#include <vector>

#include "locabs/lbool.hpp"
#include "locabs/netlist.hpp"
#include "locabs/trace.hpp"

namespace locabs {

/// Ternary values of every design gate in frames 0..depth, with the fanout structure
/// needed to update them incrementally.
///
/// Abstract flops (not in the abstraction) take their value from the counterexample;
/// concrete flops are 0 at frame 0 and copy their input from the previous frame.
class SimState {
public:
    SimState(const Netlist& n, const WSet& abstr, const Cex& cex);

    lbool value(int frame, Wire w) const { return values_[frame][w.gate()] ^ w.sign(); }
    int depth() const { return static_cast<int>(values_.size()) - 1; }

    /// Sets gate `w` at `frame` to `value` and re-evaluates its transitive fanout,
    /// crossing frames only through concrete flops.
    void propagate(int frame, Wire w, lbool value);

    bool operator==(const SimState& o) const { return values_ == o.values_; }

private:
    lbool eval(int frame, GateId g) const;

    const Netlist& N_;
    WSet abstr_;
    std::vector<std::vector<lbool>> values_;
    std::vector<std::vector<GateId>> fanouts_;       // And gates reading a gate
    std::vector<std::vector<GateId>> flop_fanouts_;  // flops whose input is a gate
};

/// Ternary simulation of `cex` on `n` under abstraction `abstr`.
SimState simulateCex(const Netlist& n, const WSet& abstr, const Cex& cex);

void simPropagate(SimState& sim, int frame, Wire w, lbool value);

/// Flops whose X-ing invalidates the counterexample at frame `target`, in the order
/// they are inspected. X-es of flops that turn out irrelevant are left in `sim`.
std::vector<GateId> findRefinement(const Netlist& n, const WSet& abstr, const Cex& cex, SimState& sim, int target,
                                   Wire bad);

/// Grows the abstraction of `T` to rule out its last counterexample of length `depth`.
/// Leaves the abstraction unchanged when the counterexample is genuine.
void refineAbstraction(Trace& T, int depth, Wire bad);

}  // namespace locabs
