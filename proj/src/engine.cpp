#include "locabs/engine.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "locabs/refine.hpp"

namespace locabs {

std::string_view to_string(Mode m)
{
    switch (m) {
    case Mode::interleaved: return "interleaved";
    case Mode::final_pba: return "final-pba";
    case Mode::cba_only: return "cba-only";
    }
    return "?";
}

Mode parse_mode(std::string_view s)
{
    if (s == "interleaved") return Mode::interleaved;
    if (s == "final-pba" || s == "final_pba") return Mode::final_pba;
    if (s == "cba-only" || s == "cba_only") return Mode::cba_only;
    throw std::invalid_argument("unknown mode: " + std::string(s));
}

namespace {

PbaPolicy pba_policy(Mode m)
{
    switch (m) {
    case Mode::interleaved: return PbaPolicy::apply;
    case Mode::final_pba: return PbaPolicy::record;
    case Mode::cba_only: return PbaPolicy::off;
    }
    return PbaPolicy::apply;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

EngineResult combinedAbstraction(const Netlist& N, const EngineOptions& opts)
{
    const Limits& limits = opts.limits;
    if (!limits.valid()) throw std::invalid_argument("at least one resource limit is required");
    if (!N.finalized()) throw std::invalid_argument("netlist needs a property and connected flops");

    Stopwatch clock;
    Trace T(N, TraceOptions{.pba = pba_policy(opts.mode), .seed = opts.seed,
                            .fresh_solver_per_call = opts.fresh_solver_per_call,
                            .shadow_fresh_solver = opts.shadow_rebuild});
    Wire bad = N.bad();
    std::vector<Wire> bad_disj;
    EngineResult result;
    Stats& stats = result.stats;
    std::uint64_t calls_this_depth = 0;

    auto out_of_resources = [&](int depth) {
        if (limits.max_depth && depth > *limits.max_depth) return true;
        if (limits.max_seconds && clock.seconds() >= *limits.max_seconds) return true;
        if (limits.max_conflicts && T.conflicts() >= *limits.max_conflicts) return true;
        return false;
    };

    auto finish = [&](std::variant<Abstraction, Counterexample> outcome) {
        result.outcome = std::move(outcome);
        stats.sat_calls = T.sat_calls();
        stats.conflicts = T.conflicts();
        stats.seconds = clock.seconds();
        stats.solvers_constructed = T.solvers_constructed();
        stats.final_abstr_size = T.abstr().size();
        return std::move(result);
    };

    auto abstraction = [&](int depth) {
        if (opts.mode == Mode::final_pba && T.last_redundant()) T.trim(*T.last_redundant());
        Abstraction a;
        for (GateId g : T.abstr().members()) a.flops.push_back(N.ordinal(g));
        std::sort(a.flops.begin(), a.flops.end());
        a.depth_completed = depth - 1;
        return finish(std::move(a));
    };

    for (int depth = 0;;) {
        if (out_of_resources(depth)) return abstraction(depth);

        if (bad_disj.size() == static_cast<std::size_t>(depth))
            bad_disj.push_back(T.insert(depth, bad));

        std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
        if (limits.max_conflicts) budget = *limits.max_conflicts - T.conflicts();

        SolveEvent ev;
        if (opts.on_solve) ev.abstr_before = T.abstr().members();
        lbool r = T.solve_limited(bad_disj, budget);
        ++calls_this_depth;
        if (opts.on_solve) {
            ev.depth = depth;
            ev.result = r;
            ev.abstr_after = T.abstr().members();
            if (opts.shadow_rebuild) ev.shadow_result = T.last_shadow_result();
            opts.on_solve(ev);
        }

        if (r == lbool_X) return abstraction(depth);

        if (r == lbool_1) {
            std::size_t n_flops = T.abstr().size();
            refineAbstraction(T, depth, bad);
            if (T.abstr().size() == n_flops)  // abstraction stable: counterexample is valid
                return finish(Counterexample{T.getCex(depth)});
        } else {
            DepthRecord rec{depth, calls_this_depth, T.abstr().size(), T.conflicts(), clock.seconds()};
            stats.depths.push_back(rec);
            if (opts.on_depth) opts.on_depth(rec);
            calls_this_depth = 0;
            ++depth;
        }
    }
}

std::vector<BenchmarkRow> run_benchmark(const std::vector<BenchmarkCase>& suite, const Limits& limits,
                                       const std::vector<Mode>& modes, std::uint64_t seed)
{
    std::vector<BenchmarkRow> rows;
    for (const auto& bc : suite) {
        for (Mode m : modes) {
            BenchmarkRow row;
            row.name = bc.name;
            row.mode = m;
            try {
                EngineOptions opts;
                opts.limits = limits;
                opts.mode = m;
                opts.seed = seed;
                EngineResult r = combinedAbstraction(bc.netlist, opts);
                row.seconds = r.stats.seconds;
                row.sat_calls = r.stats.sat_calls;
                if (r.is_cex()) {
                    row.cex = true;
                    row.depth = r.counterexample().cex.depth;
                    row.flops_retained = r.stats.final_abstr_size;
                } else {
                    row.depth = r.abstraction().depth_completed;
                    row.flops_retained = r.abstraction().flops.size();
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows)
{
    std::ostringstream os;
    os << "name,mode,depth,flops_retained,time,sat_calls,outcome\n";
    for (const auto& r : rows) {
        os << r.name << ',' << to_string(r.mode) << ',' << r.depth << ',' << r.flops_retained << ','
           << r.seconds << ',' << r.sat_calls << ',';
        if (!r.error.empty())
            os << "error";
        else
            os << (r.cex ? "cex" : "abstraction");
        os << '\n';
    }
    return os.str();
}

std::string stats_csv(const Stats& stats)
{
    std::ostringstream os;
    os << "depth,sat_calls,abstr_size,conflicts,seconds\n";
    for (const auto& d : stats.depths)
        os << d.depth << ',' << d.sat_calls << ',' << d.abstr_size << ',' << d.conflicts << ',' << d.seconds << '\n';
    return os.str();
}

}  // namespace locabs
