#pragma once

#include <optional>
#include <vector>

#include "locabs/netlist.hpp"
#include "locabs/trace.hpp"

namespace locabs::oracle {

/// Monolithic BMC of the full design: is there an input sequence that drives bad to 1
/// at exactly frame `depth`? Builds a fresh solver; returns the witness if so.
std::optional<Cex> bmc_full(const Netlist& n, int depth);

/// BMC of the abstract model in which only `concrete` flops (gate ids) keep their
/// next-state function: is bad reachable in some frame 0..depth?
bool bmc_abstract_any(const Netlist& n, const std::vector<GateId>& concrete, int depth);

/// Two-valued simulation of the full design from the zero state, driven by the PI
/// values of `cex`; X positions take `default_for_x`. Returns bad for frames 0..depth.
std::vector<bool> simulate_concrete(const Netlist& n, const Cex& cex, bool default_for_x);

}  // namespace locabs::oracle
