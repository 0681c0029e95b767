#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "locabs/netlist.hpp"
#include "locabs/trace.hpp"

namespace locabs {

/// Resource limits; at least one must be set.
struct Limits {
    /// Deepest frame to explore (inclusive).
    std::optional<int> max_depth;
    std::optional<double> max_seconds;
    /// Total solver conflicts over the whole run.
    std::optional<std::uint64_t> max_conflicts;

    bool valid() const { return max_depth || max_seconds || max_conflicts; }
};

enum class Mode {
    interleaved,  ///< PBA after every UNSAT answer
    final_pba,    ///< PBA applied once, when the limit is reached
    cba_only,     ///< no PBA
};

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

struct DepthRecord {
    int depth = 0;
    /// SAT calls made at this depth.
    std::uint64_t sat_calls = 0;
    std::size_t abstr_size = 0;
    std::uint64_t conflicts = 0;  // cumulative
    double seconds = 0;           // cumulative
};

struct Stats {
    std::vector<DepthRecord> depths;
    std::uint64_t sat_calls = 0;
    std::uint64_t conflicts = 0;
    double seconds = 0;
    std::size_t solvers_constructed = 0;
    /// Abstraction size when the run ended (before conversion to the result).
    std::size_t final_abstr_size = 0;
};

struct Abstraction {
    /// Retained flops as ordinals into Netlist::flops(), ascending.
    std::vector<std::uint32_t> flops;
    /// Last depth for which every solve was UNSAT; -1 if none.
    int depth_completed = -1;
};

struct Counterexample {
    Cex cex;
};

struct EngineResult {
    std::variant<Abstraction, Counterexample> outcome;
    Stats stats;

    bool is_cex() const { return std::holds_alternative<Counterexample>(outcome); }
    const Abstraction& abstraction() const { return std::get<Abstraction>(outcome); }
    const Counterexample& counterexample() const { return std::get<Counterexample>(outcome); }
};

/// One SAT call as seen by the engine.
struct SolveEvent {
    int depth = 0;
    lbool result;
    std::vector<GateId> abstr_before;  // abstraction passed to the solver
    std::vector<GateId> abstr_after;   // after PBA
    /// Verdict of a freshly rebuilt solver on the same query, when shadowing is on.
    std::optional<lbool> shadow_result;
};

struct EngineOptions {
    Limits limits;
    Mode mode = Mode::interleaved;
    std::uint64_t seed = 0;
    bool fresh_solver_per_call = false;
    /// Answer each query a second time with a rebuilt solver (reported in SolveEvent).
    bool shadow_rebuild = false;
    /// Called after every SAT call.
    std::function<void(const SolveEvent&)> on_solve;
    /// Called whenever a depth completes.
    std::function<void(const DepthRecord&)> on_depth;
};

/// Combined counterexample- and proof-based localization abstraction on one incremental
/// SAT instance. Returns a counterexample if the property fails within the limits,
/// otherwise the abstraction reached when the limits ran out.
EngineResult combinedAbstraction(const Netlist& N, const EngineOptions& opts);

struct BenchmarkCase {
    std::string name;
    Netlist netlist;
};

struct BenchmarkRow {
    std::string name;
    Mode mode;
    /// Counterexample depth, or the last completed depth.
    int depth = -1;
    bool cex = false;
    std::size_t flops_retained = 0;
    double seconds = 0;
    std::uint64_t sat_calls = 0;
    std::string error;
};

/// Runs every mode on every case. Failures are recorded per row.
std::vector<BenchmarkRow> run_benchmark(const std::vector<BenchmarkCase>& suite, const Limits& limits,
                                       const std::vector<Mode>& modes, std::uint64_t seed = 0);

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);
/// Per-depth statistics as `depth,sat_calls,abstr_size,conflicts,seconds`.
std::string stats_csv(const Stats& stats);

}  // namespace locabs
