#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "locabs/lbool.hpp"
#include "locabs/netlist.hpp"
#include "locabs/sat.hpp"

namespace locabs {

/// Frame-indexed ternary assignment to the PIs and flops of a design.
struct Cex {
    int depth = -1;
    /// pis[frame][pi ordinal]
    std::vector<std::vector<lbool>> pis;
    /// flops[frame][flop ordinal]
    std::vector<std::vector<lbool>> flops;
};

/// What solve() does with the flops that an UNSAT answer did not depend on.
enum class PbaPolicy {
    apply,   ///< remove them from the abstraction immediately
    record,  ///< remember them in last_redundant() but keep the abstraction
    off,     ///< ignore the final conflict
};

struct TraceOptions {
    PbaPolicy pba = PbaPolicy::apply;
    std::uint64_t seed = 0;
    /// Debug variant: answer every solve() with a freshly built solver that replays
    /// all clauses added so far, instead of the persistent incremental one.
    bool fresh_solver_per_call = false;
    /// Lockstep check: also answer every solve() with a freshly built solver and keep
    /// its verdict in last_shadow_result(). The persistent solver still drives the run.
    bool shadow_fresh_solver = false;
};

/// Incremental BMC unrolling of a design under a localization abstraction.
///
/// The unrolling lives in a structurally hashed netlist F, which is clausified lazily
/// into a single SAT instance. Every concretized flop gets one activation literal that
/// guards all of its frame-to-frame connections, so dropping a flop from the abstraction
/// only means not assuming its literal.
class Trace {
public:
    explicit Trace(const Netlist& design, TraceOptions opts = {});

    /// Unrolled wire for design wire `w` at time-frame `frame`.
    Wire insert(int frame, Wire w);

    /// Concretize a flop, connecting it in every frame it already appears in.
    void extendAbs(Wire w_flop);

    /// Searches for an assignment making at least one wire of `f_disj` true.
    bool solve(const std::vector<Wire>& f_disj);
    /// solve() with a conflict budget; lbool_X when the budget runs out.
    lbool solve_limited(const std::vector<Wire>& f_disj, std::uint64_t conflict_budget);

    /// Translates the last model into ternary values for frames 0..depth.
    Cex getCex(int depth) const;

    const WSet& abstr() const { return abstr_; }
    const Netlist& design() const { return N_; }
    const Netlist& unrolling() const { return F_; }
    const sat::Solver& solver() const { return S_; }

    /// Flops found redundant by the most recent UNSAT answer (absent when none occurred).
    const std::optional<std::vector<GateId>>& last_redundant() const { return last_redundant_; }
    /// Drops the given flops from the abstraction.
    void trim(const std::vector<GateId>& flops);

    int frames() const { return static_cast<int>(n2f_.size()); }
    sat::Lit act_lit(Wire w_flop) const { return act_lits_[w_flop]; }
    /// Unrolled wire already created for (frame, w), or wire_Undef.
    Wire lookup(int frame, Wire w) const;
    sat::Lit lookup_lit(Wire f) const { return f2s_[f]; }

    /// Verdict of the shadow solver for the last solve() (lbool_X unless enabled).
    lbool last_shadow_result() const { return last_shadow_result_; }

    std::uint64_t sat_calls() const { return sat_calls_; }
    std::uint64_t conflicts() const;
    std::size_t solvers_constructed() const { return solvers_constructed_; }

private:
    sat::Lit clausify(Wire f);
    void insertFlop(int frame, Wire w_flop, Wire f);
    void add_clause(std::initializer_list<sat::Lit> lits);
    sat::Lit new_lit();
    bool keep_clause_log() const { return opts_.fresh_solver_per_call || opts_.shadow_fresh_solver; }
    std::unique_ptr<sat::Solver> rebuild_solver() const;

    const Netlist& N_;
    TraceOptions opts_;
    Netlist F_;
    sat::Solver S_;
    WSet abstr_;

    std::vector<WMap<Wire>> n2f_;
    WMap<sat::Lit> f2s_{sat::lit_Undef};
    WMap<sat::Lit> act_lits_{sat::lit_Undef};
    /// connected_[frame] holds flops whose activation clauses exist at that frame.
    std::vector<WSet> connected_;

    std::vector<lbool> model_;
    bool have_model_ = false;
    std::optional<std::vector<GateId>> last_redundant_;

    lbool last_shadow_result_ = lbool_X;
    std::uint64_t sat_calls_ = 0;
    std::uint64_t fresh_conflicts_ = 0;
    std::size_t solvers_constructed_ = 1;
    /// Clause log replayed by the fresh-solver variants.
    std::vector<std::vector<sat::Lit>> clause_log_;
};

}  // namespace locabs
