#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "locabs/netlist.hpp"
#include "locabs/sat.hpp"

namespace testsupport {

/// CNF over variables 1..num_vars using signed integers (DIMACS style).
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

inline Cnf random_3cnf(std::mt19937_64& rng, int max_vars, int max_clauses)
{
    Cnf f;
    f.num_vars = std::uniform_int_distribution<int>(3, max_vars)(rng);
    int m = std::uniform_int_distribution<int>(1, max_clauses)(rng);
    std::uniform_int_distribution<int> var(1, f.num_vars);
    for (int i = 0; i < m; ++i) {
        std::vector<int> c;
        for (int k = 0; k < 3; ++k) c.push_back(rng() & 1 ? var(rng) : -var(rng));
        f.clauses.push_back(c);
    }
    return f;
}

inline bool satisfies(const Cnf& f, std::uint32_t bits)
{
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int l : c) {
            bool v = (bits >> (std::abs(l) - 1)) & 1;
            if ((l > 0) == v) { sat = true; break; }
        }
        if (!sat) return false;
    }
    return true;
}

/// Exhaustive satisfiability under the given fixed literals.
inline bool brute_force_sat(const Cnf& f, const std::vector<int>& fixed = {})
{
    for (std::uint32_t bits = 0; bits < (1u << f.num_vars); ++bits) {
        bool ok = true;
        for (int l : fixed)
            if ((((bits >> (std::abs(l) - 1)) & 1) != 0) != (l > 0)) { ok = false; break; }
        if (ok && satisfies(f, bits)) return true;
    }
    return false;
}

inline locabs::sat::Lit to_lit(const std::vector<locabs::sat::Lit>& vars, int l)
{
    return vars[std::abs(l)] ^ (l < 0);
}

/// Loads `f` into `s`, returning the literal of each DIMACS variable (index 0 unused).
inline std::vector<locabs::sat::Lit> load(locabs::sat::Solver& s, const Cnf& f)
{
    std::vector<locabs::sat::Lit> vars(1);
    for (int v = 1; v <= f.num_vars; ++v) vars.push_back(s.new_lit());
    for (const auto& c : f.clauses) {
        std::vector<locabs::sat::Lit> lits;
        for (int l : c) lits.push_back(to_lit(vars, l));
        s.add_clause(lits);
    }
    return vars;
}

inline bool model_satisfies(const locabs::sat::Solver& s, const std::vector<locabs::sat::Lit>& vars, const Cnf& f)
{
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int l : c)
            if (s.model_value(to_lit(vars, l)) == locabs::lbool_1) sat = true;
        if (!sat) return false;
    }
    return true;
}

}  // namespace testsupport
