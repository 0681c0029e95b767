#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "locabs/lbool.hpp"

namespace locabs::sat {

using Var = std::uint32_t;

class Lit {
public:
    constexpr Lit() : x_(kUndef) {}
    constexpr Lit(Var v, bool neg) : x_((v << 1) | static_cast<std::uint32_t>(neg)) {}

    static constexpr Lit from_raw(std::uint32_t x) { Lit p; p.x_ = x; return p; }

    constexpr Var var() const { return x_ >> 1; }
    /// True for the negative literal.
    constexpr bool sign() const { return x_ & 1; }
    constexpr std::uint32_t raw() const { return x_; }
    constexpr bool is_undef() const { return x_ == kUndef; }

    constexpr Lit operator~() const { return from_raw(x_ ^ 1); }
    constexpr Lit operator^(bool b) const { return from_raw(x_ ^ static_cast<std::uint32_t>(b)); }

    constexpr bool operator==(const Lit&) const = default;
    constexpr auto operator<=>(const Lit&) const = default;

private:
    static constexpr std::uint32_t kUndef = 0xFFFFFFFFu;
    std::uint32_t x_;
};

inline constexpr Lit lit_Undef{};

class SolverError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct SolverOptions {
    std::uint64_t seed = 0;
    double var_decay = 0.95;
    double clause_decay = 0.999;
    /// Fraction of decisions taken on a random variable.
    double random_var_freq = 0.01;
    int restart_first = 100;
    double restart_inc = 1.5;
    /// Re-solve under the final conflict after every UNSAT answer and abort if it is SAT.
#ifdef NDEBUG
    bool check_final_conflict = false;
#else
    bool check_final_conflict = true;
#endif
};

struct SolverStats {
    std::uint64_t solves = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
};

/// Incremental CDCL solver with unit assumptions and final-conflict extraction.
///
/// Variable 0 is reserved for the constant-true literal. Assumptions are placed as the
/// first decisions of every search; when one of them is refuted the conflict is traced
/// back to the assumption decisions rather than to a first UIP, which yields the subset
/// of assumptions that the refutation depends on. No proof is recorded.
class Solver {
public:
    explicit Solver(SolverOptions opts = {});

    Lit True() const { return Lit(0, false); }

    Lit new_lit();
    std::size_t num_vars() const { return assigns_.size(); }
    /// Number of non-tautological clauses passed to add_clause().
    std::size_t num_clauses() const { return clauses_added_; }

    void add_clause(std::span<const Lit> lits);
    void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }

    bool solve(std::span<const Lit> assumps = {});
    bool solve(std::initializer_list<Lit> assumps) { return solve(std::span<const Lit>(assumps.begin(), assumps.size())); }

    /// Like solve() but gives up after `conflict_budget` conflicts, returning lbool_X.
    lbool solve_limited(std::span<const Lit> assumps, std::uint64_t conflict_budget);

    /// Value in the last model; X for variables allocated after that solve.
    lbool model_value(Lit p) const;
    const std::vector<lbool>& model() const;

    /// Assumptions used by the last UNSAT answer; a subset of the assumptions passed.
    const std::vector<Lit>& final_conflict() const { return conflict_; }
    bool in_conflict(Lit p) const;

    /// False once an empty clause has been derived at the top level.
    bool okay() const { return ok_; }
    const SolverStats& stats() const { return stats_; }

private:
    using CRef = std::uint32_t;
    static constexpr CRef kNoReason = std::numeric_limits<CRef>::max();

    struct Clause {
        std::vector<Lit> lits;
        double activity = 0;
        bool learnt = false;
        bool removed = false;
    };
    struct Watcher {
        CRef cref;
        Lit blocker;
    };

    lbool value(Var v) const { return assigns_[v]; }
    lbool value(Lit p) const { return assigns_[p.var()] ^ p.sign(); }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }

    Var new_var();
    CRef alloc_clause(std::vector<Lit> lits, bool learnt);
    void attach(CRef cr);
    void detach(CRef cr);
    bool locked(CRef cr) const;
    void remove_clause(CRef cr);

    void enqueue(Lit p, CRef from);
    CRef propagate();
    void cancel_until(int level);
    void analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel);
    bool lit_redundant(Lit p, std::uint32_t abstract_levels);
    void analyze_final(Lit p);
    Lit pick_branch_lit();
    lbool search(std::int64_t nof_conflicts);
    void reduce_db();
    bool simplify();

    void var_bump(Var v);
    void var_decay() { var_inc_ /= opts_.var_decay; }
    void clause_bump(Clause& c);
    void clause_decay() { cla_inc_ /= opts_.clause_decay; }

    // Binary max-heap over variable activity.
    void heap_insert(Var v);
    void heap_up(std::size_t i);
    void heap_down(std::size_t i);
    Var heap_pop();
    bool heap_contains(Var v) const { return heap_index_[v] >= 0; }

    std::uint32_t abstract_level(Var v) const { return 1u << (level_[v] & 31); }

    void verify_final_conflict(std::span<const Lit> assumps);

    SolverOptions opts_;
    SolverStats stats_;
    std::mt19937_64 rng_;

    bool ok_ = true;
    std::vector<Clause> clauses_;
    std::vector<CRef> free_crefs_;
    std::vector<CRef> learnts_;
    std::size_t clauses_added_ = 0;
    std::vector<std::vector<Watcher>> watches_;

    std::vector<lbool> assigns_;
    std::vector<int> level_;
    std::vector<CRef> reason_;
    std::vector<std::uint8_t> polarity_;
    std::vector<std::uint8_t> seen_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::size_t simp_trail_size_ = 0;

    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::vector<Var> heap_;
    std::vector<int> heap_index_;

    std::vector<Lit> assumptions_;
    std::vector<Lit> conflict_;
    std::vector<lbool> model_;
    bool has_model_ = false;
    double max_learnts_ = 0;
    std::uint64_t budget_end_ = std::numeric_limits<std::uint64_t>::max();

    bool verifying_ = false;

    std::vector<Lit> analyze_stack_;
    std::vector<Lit> analyze_toclear_;
};

/// Parsed `p cnf` problem.
struct Dimacs {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

Dimacs parse_dimacs(std::string_view text);

}  // namespace locabs::sat
