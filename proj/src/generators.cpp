#include "locabs/generators.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace locabs::gen {

Netlist shift_register(int n)
{
    Netlist N;
    Wire in = N.add_PI();
    std::vector<Wire> flops;
    for (int j = 0; j < n; ++j) flops.push_back(N.add_Flop());
    N.set_flop_input(flops[0], in);
    for (int j = 1; j < n; ++j) N.set_flop_input(flops[j], flops[j - 1]);
    N.set_property(~flops.back());
    return N;
}

Netlist pba_showcase()
{
    Netlist N;
    Wire pi = N.add_PI();
    Wire f = N.add_Flop();
    Wire g = N.add_Flop();
    N.set_flop_input(f, ~N.True());
    N.set_flop_input(g, pi);
    N.set_property(~N.add_And(f, g));
    return N;
}

Netlist random_circuit(std::uint64_t seed, const RandomParams& params)
{
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coin = [&] { return uniform(0, 1) == 1; };

    Netlist N;
    int n_pis = uniform(1, params.max_pis);
    int n_flops = uniform(1, params.max_flops);
    int n_ands = uniform(1, params.max_ands);

    std::vector<Wire> pool;
    for (int i = 0; i < n_pis; ++i) pool.push_back(N.add_PI());
    std::vector<Wire> flops;
    for (int i = 0; i < n_flops; ++i) {
        flops.push_back(N.add_Flop());
        pool.push_back(flops.back());
    }

    // Prefer recent signals so the logic gets some depth.
    auto pick = [&] {
        std::size_t n = pool.size();
        std::size_t idx = coin() ? static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))
                                 : n - 1 - static_cast<std::size_t>(uniform(0, static_cast<int>(std::min<std::size_t>(n, 8)) - 1));
        return pool[idx] ^ coin();
    };

    for (int i = 0; i < n_ands; ++i) {
        Wire w = N.add_And(pick(), pick());
        if (N.kind(w) == GateKind::And) pool.push_back(w);
    }

    for (Wire f : flops) {
        int r = uniform(0, 9);
        if (r == 0)
            N.set_flop_input(f, N.True() ^ coin());
        else
            N.set_flop_input(f, pick());
    }

    // Lean on state so that failures, if any, tend to need a few steps.
    int terms = uniform(2, 4);
    Wire bad = N.True();
    for (int t = 0; t < terms; ++t) {
        Wire term = coin() ? flops[uniform(0, n_flops - 1)] ^ coin() : pick();
        bad = N.add_And(bad, term);
    }
    N.set_property(~bad);
    return N;
}

}  // namespace locabs::gen
