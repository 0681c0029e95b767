#include "locabs/sat.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <string>

namespace locabs::sat {

Solver::Solver(SolverOptions opts) : opts_(opts), rng_(opts.seed)
{
    Var t = new_var();
    enqueue(Lit(t, false), kNoReason);
}

//=================================================================================================
// Variables and clauses:

Var Solver::new_var()
{
    auto v = static_cast<Var>(assigns_.size());
    assigns_.push_back(lbool_X);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    polarity_.push_back(1);
    seen_.push_back(0);
    double act = 0;
    if (opts_.seed != 0)
        act = std::uniform_real_distribution<double>(0.0, 1e-5)(rng_);
    activity_.push_back(act);
    heap_index_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
    return v;
}

Lit Solver::new_lit()
{
    return Lit(new_var(), false);
}

Solver::CRef Solver::alloc_clause(std::vector<Lit> lits, bool learnt)
{
    CRef cr;
    if (!free_crefs_.empty()) {
        cr = free_crefs_.back();
        free_crefs_.pop_back();
        clauses_[cr] = Clause{};
    } else {
        cr = static_cast<CRef>(clauses_.size());
        clauses_.emplace_back();
    }
    clauses_[cr].lits = std::move(lits);
    clauses_[cr].learnt = learnt;
    return cr;
}

void Solver::attach(CRef cr)
{
    const Clause& c = clauses_[cr];
    watches_[c.lits[0].raw()].push_back({cr, c.lits[1]});
    watches_[c.lits[1].raw()].push_back({cr, c.lits[0]});
}

void Solver::detach(CRef cr)
{
    const Clause& c = clauses_[cr];
    for (int k = 0; k < 2; ++k) {
        auto& ws = watches_[c.lits[k].raw()];
        auto it = std::find_if(ws.begin(), ws.end(), [cr](const Watcher& w) { return w.cref == cr; });
        if (it != ws.end()) ws.erase(it);
    }
}

bool Solver::locked(CRef cr) const
{
    const Clause& c = clauses_[cr];
    Lit p = c.lits[0];
    return value(p) == lbool_1 && reason_[p.var()] == cr;
}

void Solver::remove_clause(CRef cr)
{
    detach(cr);
    Clause& c = clauses_[cr];
    c.removed = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
    free_crefs_.push_back(cr);
}

void Solver::add_clause(std::span<const Lit> lits)
{
    for (Lit p : lits)
        if (p.is_undef() || p.var() >= num_vars())
            throw SolverError("add_clause: unknown variable");
    if (!ok_) return;

    std::vector<Lit> ps(lits.begin(), lits.end());
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (std::size_t i = 1; i < ps.size(); ++i)
        if (ps[i] == ~ps[i - 1]) return;  // tautology
    ++clauses_added_;

    std::size_t j = 0;
    for (Lit p : ps) {
        lbool v = value(p);
        if (v == lbool_1) return;
        if (v != lbool_0) ps[j++] = p;
    }
    ps.resize(j);

    if (ps.empty()) {
        ok_ = false;
    } else if (ps.size() == 1) {
        enqueue(ps[0], kNoReason);
        ok_ = propagate() == kNoReason;
    } else {
        attach(alloc_clause(std::move(ps), false));
    }
}

//=================================================================================================
// Propagation and conflict analysis:

void Solver::enqueue(Lit p, CRef from)
{
    assigns_[p.var()] = lbool(!p.sign());
    level_[p.var()] = decision_level();
    reason_[p.var()] = from;
    trail_.push_back(p);
}

Solver::CRef Solver::propagate()
{
    CRef confl = kNoReason;
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++];
        Lit false_lit = ~p;
        auto& ws = watches_[false_lit.raw()];
        ++stats_.propagations;

        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            Watcher w = ws[i];
            if (value(w.blocker) == lbool_1) {
                ws[j++] = ws[i++];
                continue;
            }
            Clause& c = clauses_[w.cref];
            if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
            ++i;

            Lit first = c.lits[0];
            Watcher nw{w.cref, first};
            if (first != w.blocker && value(first) == lbool_1) {
                ws[j++] = nw;
                continue;
            }

            bool moved = false;
            for (std::size_t k = 2; k < c.lits.size(); ++k) {
                if (value(c.lits[k]) != lbool_0) {
                    c.lits[1] = c.lits[k];
                    c.lits[k] = false_lit;
                    watches_[c.lits[1].raw()].push_back(nw);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;

            ws[j++] = nw;
            if (value(first) == lbool_0) {
                confl = w.cref;
                qhead_ = trail_.size();
                while (i < ws.size()) ws[j++] = ws[i++];
            } else {
                enqueue(first, w.cref);
            }
        }
        ws.resize(j);
    }
    return confl;
}

void Solver::cancel_until(int level)
{
    if (decision_level() <= level) return;
    for (std::size_t c = trail_.size(); c-- > static_cast<std::size_t>(trail_lim_[level]);) {
        Var x = trail_[c].var();
        assigns_[x] = lbool_X;
        reason_[x] = kNoReason;
        polarity_[x] = trail_[c].sign();
        if (!heap_contains(x)) heap_insert(x);
    }
    qhead_ = trail_lim_[level];
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
}

void Solver::analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel)
{
    int path_count = 0;
    Lit p = lit_Undef;
    out_learnt.clear();
    out_learnt.push_back(lit_Undef);
    std::size_t index = trail_.size();

    do {
        Clause& c = clauses_[confl];
        if (c.learnt) clause_bump(c);
        for (std::size_t j = p.is_undef() ? 0 : 1; j < c.lits.size(); ++j) {
            Lit q = c.lits[j];
            Var v = q.var();
            if (!seen_[v] && level_[v] > 0) {
                var_bump(v);
                seen_[v] = 1;
                if (level_[v] >= decision_level())
                    ++path_count;
                else
                    out_learnt.push_back(q);
            }
        }
        while (!seen_[trail_[--index].var()]) {}
        p = trail_[index];
        confl = reason_[p.var()];
        seen_[p.var()] = 0;
        --path_count;
    } while (path_count > 0);
    out_learnt[0] = ~p;

    // Recursive minimization.
    analyze_toclear_ = out_learnt;
    std::uint32_t levels = 0;
    for (std::size_t i = 1; i < out_learnt.size(); ++i)
        levels |= abstract_level(out_learnt[i].var());
    std::size_t j = 1;
    for (std::size_t i = 1; i < out_learnt.size(); ++i) {
        Var v = out_learnt[i].var();
        if (reason_[v] == kNoReason || !lit_redundant(out_learnt[i], levels))
            out_learnt[j++] = out_learnt[i];
    }
    out_learnt.resize(j);

    if (out_learnt.size() == 1) {
        out_btlevel = 0;
    } else {
        std::size_t max_i = 1;
        for (std::size_t i = 2; i < out_learnt.size(); ++i)
            if (level_[out_learnt[i].var()] > level_[out_learnt[max_i].var()]) max_i = i;
        std::swap(out_learnt[1], out_learnt[max_i]);
        out_btlevel = level_[out_learnt[1].var()];
    }

    for (Lit q : analyze_toclear_) seen_[q.var()] = 0;
}

bool Solver::lit_redundant(Lit p, std::uint32_t abstract_levels)
{
    analyze_stack_.clear();
    analyze_stack_.push_back(p);
    std::size_t top = analyze_toclear_.size();
    while (!analyze_stack_.empty()) {
        Lit q = analyze_stack_.back();
        analyze_stack_.pop_back();
        const Clause& c = clauses_[reason_[q.var()]];
        for (std::size_t i = 1; i < c.lits.size(); ++i) {
            Lit l = c.lits[i];
            Var v = l.var();
            if (seen_[v] || level_[v] == 0) continue;
            if (reason_[v] != kNoReason && (abstract_level(v) & abstract_levels)) {
                seen_[v] = 1;
                analyze_stack_.push_back(l);
                analyze_toclear_.push_back(l);
            } else {
                for (std::size_t k = top; k < analyze_toclear_.size(); ++k)
                    seen_[analyze_toclear_[k].var()] = 0;
                analyze_toclear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

// 'p' is true and contradicts an assumption. Collects the assumption decisions it depends
// on; every decision below the assumption count is an assumption.
void Solver::analyze_final(Lit p)
{
    conflict_.clear();
    conflict_.push_back(~p);
    if (decision_level() == 0) return;

    seen_[p.var()] = 1;
    for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
        Var x = trail_[i].var();
        if (!seen_[x]) continue;
        if (reason_[x] == kNoReason) {
            conflict_.push_back(trail_[i]);
        } else {
            const Clause& c = clauses_[reason_[x]];
            for (std::size_t j = 1; j < c.lits.size(); ++j)
                if (level_[c.lits[j].var()] > 0) seen_[c.lits[j].var()] = 1;
        }
        seen_[x] = 0;
    }
    seen_[p.var()] = 0;
}

//=================================================================================================
// Search:

Lit Solver::pick_branch_lit()
{
    std::optional<Var> next;
    if (opts_.random_var_freq > 0 && !heap_.empty()
        && std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < opts_.random_var_freq) {
        Var v = heap_[std::uniform_int_distribution<std::size_t>(0, heap_.size() - 1)(rng_)];
        if (value(v) == lbool_X) next = v;
    }
    while (!next || value(*next) != lbool_X) {
        if (heap_.empty()) return lit_Undef;
        next = heap_pop();
    }
    return Lit(*next, polarity_[*next]);
}

bool Solver::simplify()
{
    if (propagate() != kNoReason) {
        ok_ = false;
        return false;
    }
    if (trail_.size() == simp_trail_size_) return true;
    for (CRef cr = 0; cr < clauses_.size(); ++cr) {
        Clause& c = clauses_[cr];
        if (c.removed || locked(cr)) continue;
        if (std::any_of(c.lits.begin(), c.lits.end(), [&](Lit q) { return value(q) == lbool_1; }))
            remove_clause(cr);
    }
    std::erase_if(learnts_, [&](CRef cr) { return clauses_[cr].removed; });
    simp_trail_size_ = trail_.size();
    return true;
}

void Solver::reduce_db()
{
    // Binary clauses sort last and are always kept.
    auto key = [&](CRef cr) {
        const Clause& c = clauses_[cr];
        return c.lits.size() == 2 ? std::numeric_limits<double>::infinity() : c.activity;
    };
    std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) { return key(a) < key(b); });
    std::size_t half = learnts_.size() / 2;
    std::size_t j = 0;
    for (std::size_t i = 0; i < learnts_.size(); ++i) {
        CRef cr = learnts_[i];
        if (i < half && clauses_[cr].lits.size() > 2 && !locked(cr))
            remove_clause(cr);
        else
            learnts_[j++] = cr;
    }
    learnts_.resize(j);
}

lbool Solver::search(std::int64_t nof_conflicts)
{
    std::int64_t conflict_count = 0;
    std::vector<Lit> learnt;

    for (;;) {
        CRef confl = propagate();
        if (confl != kNoReason) {
            ++stats_.conflicts;
            ++conflict_count;
            if (decision_level() == 0) {
                ok_ = false;
                return lbool_0;
            }
            int bt = 0;
            analyze(confl, learnt, bt);
            cancel_until(bt);
            if (learnt.size() == 1) {
                enqueue(learnt[0], kNoReason);
            } else {
                CRef cr = alloc_clause(learnt, true);
                attach(cr);
                clause_bump(clauses_[cr]);
                learnts_.push_back(cr);
                enqueue(learnt[0], cr);
            }
            var_decay();
            clause_decay();
            continue;
        }

        if ((nof_conflicts >= 0 && conflict_count >= nof_conflicts) || stats_.conflicts >= budget_end_) {
            cancel_until(0);
            return lbool_X;
        }
        if (decision_level() == 0 && !simplify()) return lbool_0;
        if (static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_)
            reduce_db();

        Lit next = lit_Undef;
        while (decision_level() < static_cast<int>(assumptions_.size())) {
            Lit p = assumptions_[decision_level()];
            if (value(p) == lbool_1) {
                trail_lim_.push_back(static_cast<int>(trail_.size()));
            } else if (value(p) == lbool_0) {
                analyze_final(~p);
                return lbool_0;
            } else {
                next = p;
                break;
            }
        }
        if (next.is_undef()) {
            ++stats_.decisions;
            next = pick_branch_lit();
            if (next.is_undef()) return lbool_1;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(next, kNoReason);
    }
}

lbool Solver::solve_limited(std::span<const Lit> assumps, std::uint64_t conflict_budget)
{
    for (Lit p : assumps)
        if (p.is_undef() || p.var() >= num_vars())
            throw SolverError("solve: unknown variable in assumptions");

    conflict_.clear();
    model_.clear();
    has_model_ = false;
    ++stats_.solves;
    if (!ok_) return lbool_0;

    assumptions_.assign(assumps.begin(), assumps.end());
    budget_end_ = conflict_budget == std::numeric_limits<std::uint64_t>::max()
                      ? conflict_budget
                      : stats_.conflicts + conflict_budget;
    max_learnts_ = std::max(static_cast<double>(clauses_.size()) / 3.0, 1000.0);

    lbool status = lbool_X;
    for (int restarts = 0; status == lbool_X; ++restarts) {
        auto nof = static_cast<std::int64_t>(opts_.restart_first * std::pow(opts_.restart_inc, restarts));
        status = search(nof);
        if (status == lbool_X && stats_.conflicts >= budget_end_) break;
        if (status == lbool_X) {
            ++stats_.restarts;
            max_learnts_ *= 1.05;
        }
    }

    if (status == lbool_1) {
        model_ = assigns_;
        has_model_ = true;
    }
    cancel_until(0);
    assumptions_.clear();
    budget_end_ = std::numeric_limits<std::uint64_t>::max();

    if (status == lbool_0 && opts_.check_final_conflict && !verifying_)
        verify_final_conflict(assumps);
    return status;
}

bool Solver::solve(std::span<const Lit> assumps)
{
    return solve_limited(assumps, std::numeric_limits<std::uint64_t>::max()) == lbool_1;
}

void Solver::verify_final_conflict(std::span<const Lit> assumps)
{
    for (Lit p : conflict_)
        if (std::find(assumps.begin(), assumps.end(), p) == assumps.end())
            throw SolverError("final conflict is not a subset of the assumptions");
    std::vector<Lit> core = conflict_;
    verifying_ = true;
    bool sat = solve(core);
    verifying_ = false;
    if (sat) throw SolverError("final conflict does not refute the clauses");
    conflict_ = std::move(core);
}

lbool Solver::model_value(Lit p) const
{
    if (!has_model_) throw SolverError("model_value: last solve was not SAT");
    if (p.var() >= model_.size()) return lbool_X;
    return model_[p.var()] ^ p.sign();
}

const std::vector<lbool>& Solver::model() const
{
    if (!has_model_) throw SolverError("model: last solve was not SAT");
    return model_;
}

bool Solver::in_conflict(Lit p) const
{
    return std::find(conflict_.begin(), conflict_.end(), p) != conflict_.end();
}

//=================================================================================================
// Activity heuristics:

void Solver::var_bump(Var v)
{
    if ((activity_[v] += var_inc_) > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_contains(v)) heap_up(static_cast<std::size_t>(heap_index_[v]));
}

void Solver::clause_bump(Clause& c)
{
    if ((c.activity += cla_inc_) > 1e20) {
        for (CRef cr : learnts_) clauses_[cr].activity *= 1e-20;
        cla_inc_ *= 1e-20;
    }
}

void Solver::heap_insert(Var v)
{
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i)
{
    Var v = heap_[i];
    while (i > 0) {
        std::size_t parent = (i - 1) / 2;
        if (activity_[heap_[parent]] >= activity_[v]) break;
        heap_[i] = heap_[parent];
        heap_index_[heap_[i]] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i)
{
    Var v = heap_[i];
    for (;;) {
        std::size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
        if (activity_[heap_[child]] <= activity_[v]) break;
        heap_[i] = heap_[child];
        heap_index_[heap_[i]] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_index_[v] = static_cast<int>(i);
}

Var Solver::heap_pop()
{
    Var top = heap_.front();
    heap_index_[top] = -1;
    Var last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_index_[last] = 0;
        heap_down(0);
    }
    return top;
}

//=================================================================================================
// DIMACS:

Dimacs parse_dimacs(std::string_view text)
{
    Dimacs out;
    bool header = false;
    std::vector<int> current;
    std::size_t pos = 0;

    auto skip_line = [&] {
        while (pos < text.size() && text[pos] != '\n') ++pos;
    };
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&]() -> int {
        int v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc{}) throw std::runtime_error("dimacs: expected integer at offset " + std::to_string(pos));
        pos = static_cast<std::size_t>(ptr - text.data());
        return v;
    };

    for (;;) {
        skip_space();
        if (pos >= text.size()) break;
        char c = text[pos];
        if (c == 'c') {
            skip_line();
        } else if (c == 'p') {
            if (text.substr(pos, 5) != "p cnf") throw std::runtime_error("dimacs: bad problem line");
            pos += 5;
            skip_space();
            out.num_vars = read_int();
            skip_space();
            read_int();
            header = true;
        } else {
            if (!header) throw std::runtime_error("dimacs: clause before header");
            int lit = read_int();
            if (lit == 0) {
                out.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::abs(lit) > out.num_vars) throw std::runtime_error("dimacs: literal out of range");
                current.push_back(lit);
            }
        }
    }
    if (!current.empty()) out.clauses.push_back(std::move(current));
    if (!header) throw std::runtime_error("dimacs: missing header");
    return out;
}

}  // namespace locabs::sat
