#pragma once

#include <cstdint>

#include "locabs/netlist.hpp"

namespace locabs::gen {

/// n-stage shift register: f1 <- i, fj <- f(j-1), bad = fn. Fails first at depth n.
Netlist shift_register(int n);

/// f <- 0, g <- PI, bad = f & g. Never fails; only f is needed to prove it.
Netlist pba_showcase();

struct RandomParams {
    int max_pis = 6;
    int max_flops = 25;
    int max_ands = 150;
};

/// Random sequential AIG with a bad output built as a conjunction of a few internal signals.
Netlist random_circuit(std::uint64_t seed, const RandomParams& params = {});

}  // namespace locabs::gen
