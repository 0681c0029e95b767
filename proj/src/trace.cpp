#include "locabs/trace.hpp"

#include <algorithm>
#include <unordered_set>

namespace locabs {

using sat::Lit;
using sat::lit_Undef;

Trace::Trace(const Netlist& design, TraceOptions opts)
    : N_(design), opts_(opts), S_(sat::SolverOptions{.seed = opts.seed})
{
    f2s_.set(F_.True(), S_.True());
}

Lit Trace::new_lit()
{
    return S_.new_lit();
}

void Trace::add_clause(std::initializer_list<Lit> lits)
{
    S_.add_clause(lits);
    if (keep_clause_log()) clause_log_.emplace_back(lits);
}

//=================================================================================================
// Unrolling:

Wire Trace::insert(int frame, Wire w)
{
    if (frame < 0) throw std::invalid_argument("insert: negative frame");
    if (static_cast<std::size_t>(frame) >= n2f_.size()) {
        n2f_.resize(frame + 1, WMap<Wire>(wire_Undef));
        connected_.resize(frame + 1);
    }

    Wire ret = n2f_[frame][w];
    if (ret.is_undef()) {
        GateId g = w.gate();
        switch (N_.kind(g)) {
        case GateKind::Const:
            ret = F_.True();
            break;
        case GateKind::PI:
            ret = F_.add_PI();
            break;
        case GateKind::And:
            ret = F_.add_And(insert(frame, N_.fanin0(g)), insert(frame, N_.fanin1(g)));
            break;
        case GateKind::Flop:
            ret = F_.add_PI();
            if (abstr_.has(w)) insertFlop(frame, w, ret);
            break;
        }
        n2f_[frame].set(w, ret);
    }
    return ret ^ w.sign();
}

void Trace::insertFlop(int frame, Wire w_flop, Wire f)
{
    if (connected_[frame].has(w_flop)) return;

    Wire f_in = frame == 0 ? ~F_.True() : insert(frame - 1, N_.flop_input(w_flop.gate()));
    Lit p = clausify(f_in);
    Lit q = clausify(f);
    Lit a = act_lits_[w_flop];
    if (a == lit_Undef) {
        a = new_lit();
        act_lits_.set(w_flop, a);
    }
    add_clause({~a, ~p, q});
    add_clause({~a, p, ~q});  // a -> (p <-> q)
    connected_[frame].insert(w_flop);
}

void Trace::extendAbs(Wire w_flop)
{
    if (N_.kind(w_flop) != GateKind::Flop) throw std::invalid_argument("extendAbs: not a flop");
    abstr_.insert(w_flop);
    for (int frame = 0; frame < frames(); ++frame) {
        Wire f = n2f_[frame][w_flop];
        if (!f.is_undef())  // f is a PI of F
            insertFlop(frame, w_flop, f);
    }
}

Wire Trace::lookup(int frame, Wire w) const
{
    if (frame < 0 || frame >= frames()) return wire_Undef;
    Wire ret = n2f_[frame][w];
    return ret.is_undef() ? ret : ret ^ w.sign();
}

//=================================================================================================
// SAT:

Lit Trace::clausify(Wire f)
{
    Lit ret = f2s_[f];
    if (ret == lit_Undef) {
        GateId g = f.gate();
        if (F_.kind(g) == GateKind::PI) {
            ret = new_lit();
        } else {
            // Tseitin
            Lit x = clausify(F_.fanin0(g));
            Lit y = clausify(F_.fanin1(g));
            ret = new_lit();
            add_clause({x, ~ret});
            add_clause({y, ~ret});
            add_clause({~x, ~y, ret});
        }
        f2s_.set(f, ret);
    }
    return ret ^ f.sign();
}

bool Trace::solve(const std::vector<Wire>& f_disj)
{
    return solve_limited(f_disj, std::numeric_limits<std::uint64_t>::max()) == lbool_1;
}

lbool Trace::solve_limited(const std::vector<Wire>& f_disj, std::uint64_t conflict_budget)
{
    Lit q = new_lit();
    std::vector<Lit> tmp{~q};
    for (Wire f : f_disj) tmp.push_back(clausify(f));
    S_.add_clause(tmp);
    if (keep_clause_log()) clause_log_.push_back(tmp);

    std::vector<Lit> assumps{q};
    for (GateId g : N_.flops()) {
        Wire w(g, false);
        Lit a = act_lits_[w];
        if (a != lit_Undef && abstr_.has(w)) assumps.push_back(a);
    }

    ++sat_calls_;
    std::unique_ptr<sat::Solver> fresh;
    const sat::Solver* used = &S_;
    lbool result;
    if (opts_.fresh_solver_per_call) {
        fresh = rebuild_solver();
        ++solvers_constructed_;
        result = fresh->solve_limited(assumps, conflict_budget);
        fresh_conflicts_ += fresh->stats().conflicts;
        used = fresh.get();
    } else {
        result = S_.solve_limited(assumps, conflict_budget);
    }
    if (opts_.shadow_fresh_solver) last_shadow_result_ = rebuild_solver()->solve_limited(assumps, conflict_budget);

    have_model_ = false;
    if (result == lbool_1) {
        model_ = used->model();
        have_model_ = true;
    } else if (result == lbool_0 && opts_.pba != PbaPolicy::off) {
        const auto& confl = used->final_conflict();
        std::unordered_set<std::uint32_t> in_confl;
        for (Lit p : confl) in_confl.insert(p.raw());

        std::vector<GateId> redundant;
        for (GateId g : N_.flops()) {
            Wire w(g, false);
            if (!abstr_.has(w)) continue;
            Lit a = act_lits_[w];
            if (a == lit_Undef || !in_confl.contains(a.raw())) redundant.push_back(g);
        }
        if (opts_.pba == PbaPolicy::apply)
            trim(redundant);  // PBA
        last_redundant_ = std::move(redundant);
    }

    add_clause({~q});  // retire the temporary clause
    return result;
}

std::unique_ptr<sat::Solver> Trace::rebuild_solver() const
{
    auto fresh = std::make_unique<sat::Solver>(sat::SolverOptions{.seed = opts_.seed});
    while (fresh->num_vars() < S_.num_vars()) fresh->new_lit();
    for (const auto& c : clause_log_) fresh->add_clause(c);
    return fresh;
}

void Trace::trim(const std::vector<GateId>& flops)
{
    for (GateId g : flops) abstr_.erase(Wire(g, false));
}

Cex Trace::getCex(int depth) const
{
    if (!have_model_) throw std::logic_error("getCex: last solve was not SAT");

    Cex cex;
    cex.depth = depth;
    cex.pis.assign(depth + 1, std::vector<lbool>(N_.pis().size(), lbool_X));
    cex.flops.assign(depth + 1, std::vector<lbool>(N_.flops().size(), lbool_X));

    auto value_of = [&](int frame, GateId g) {
        Wire f = lookup(frame, Wire(g, false));
        if (f.is_undef()) return lbool_X;
        Lit p = f2s_[f];
        if (p == lit_Undef || p.var() >= model_.size()) return lbool_X;
        return model_[p.var()] ^ (p.sign() != f.sign());
    };

    for (int d = 0; d <= depth; ++d) {
        for (GateId g : N_.pis()) cex.pis[d][N_.ordinal(g)] = value_of(d, g);
        for (GateId g : N_.flops()) cex.flops[d][N_.ordinal(g)] = value_of(d, g);
    }
    return cex;
}

std::uint64_t Trace::conflicts() const
{
    return S_.stats().conflicts + fresh_conflicts_;
}

}  // namespace locabs
