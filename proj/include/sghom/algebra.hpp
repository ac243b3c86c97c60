#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sghom/bitset.hpp"

namespace sghom {

// System of XOR equations over GF(2). Equations are stored as bitsets keyed
// by variable index, plus a constant bit.
struct Gf2System {
    int vars = 0;
    struct Eq {
        std::vector<std::uint64_t> coeff;
        int rhs = 0;
    };
    std::vector<Eq> eqs;

    int add_var() { return vars++; }

    // XOR of the listed variables equals rhs. Repeated variables cancel.
    void add_equation(const std::vector<int>& vs, int rhs) {
        Eq e;
        e.coeff.assign((vars + 63) / 64, 0);
        for (int v : vs) {
            assert(v >= 0 && v < vars);
            e.coeff[v / 64] ^= std::uint64_t{1} << (v % 64);
        }
        e.rhs = rhs & 1;
        eqs.push_back(std::move(e));
    }
};

// Gaussian elimination. Free variables get 0 (deterministic canonical
// solution); returns nullopt iff 0 = 1 is derived.
inline std::optional<std::vector<int>> gf2_solve(const Gf2System& sys) {
    int words = (sys.vars + 63) / 64;
    std::vector<Gf2System::Eq> rows;
    for (auto e : sys.eqs) {
        e.coeff.resize(words, 0);
        rows.push_back(std::move(e));
    }
    std::vector<int> pivot_of_var(sys.vars, -1);
    int rank = 0;
    for (int v = 0; v < sys.vars && rank < (int)rows.size(); ++v) {
        int w = v / 64, b = v % 64;
        int piv = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if ((rows[r].coeff[w] >> b) & 1) {
                piv = r;
                break;
            }
        if (piv == -1) continue;
        std::swap(rows[rank], rows[piv]);
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank) continue;
            if ((rows[r].coeff[w] >> b) & 1) {
                for (int i = 0; i < words; ++i) rows[r].coeff[i] ^= rows[rank].coeff[i];
                rows[r].rhs ^= rows[rank].rhs;
            }
        }
        pivot_of_var[v] = rank;
        ++rank;
    }
    for (int r = rank; r < (int)rows.size(); ++r)
        if (rows[r].rhs) return std::nullopt;
    std::vector<int> sol(sys.vars, 0);
    for (int v = 0; v < sys.vars; ++v)
        if (pivot_of_var[v] != -1) sol[v] = rows[pivot_of_var[v]].rhs;
    // Pivot rows may still reference free variables; with all frees at 0 the
    // pivot value is exactly the row's rhs, so the loop above is complete.
    return sol;
}

// 2-SAT. Literals: variable index v with polarity; encoded as 2v (positive)
// and 2v+1 (negated).
struct TwoSatInstance {
    int vars = 0;
    std::vector<std::pair<int, int>> clauses;  // pair of literals

    int add_var() { return vars++; }
    static int lit(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
    void add_clause(int a, int b) { clauses.emplace_back(a, b); }

    // Convenience: force variable to a value.
    void force(int var, bool value) { add_clause(lit(var, value), lit(var, value)); }
};

// Implication-graph strongly-connected-components solver (Tarjan, iterative).
inline std::optional<std::vector<int>> two_sat_solve(const TwoSatInstance& inst) {
    int n = 2 * inst.vars;
    std::vector<std::vector<int>> adj(n);
    auto neg = [](int l) { return l ^ 1; };
    for (auto [a, b] : inst.clauses) {
        adj[neg(a)].push_back(b);
        adj[neg(b)].push_back(a);
    }
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stk;
    int counter = 0, ncomp = 0;
    // Iterative Tarjan.
    std::vector<std::pair<int, size_t>> frames;
    std::vector<bool> on_stack(n, false);
    for (int s = 0; s < n; ++s) {
        if (num[s] != -1) continue;
        frames.emplace_back(s, 0);
        while (!frames.empty()) {
            auto& [u, i] = frames.back();
            if (i == 0) {
                num[u] = low[u] = counter++;
                stk.push_back(u);
                on_stack[u] = true;
            }
            if (i < adj[u].size()) {
                int w = adj[u][i++];
                if (num[w] == -1) {
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[u] = std::min(low[u], num[w]);
                }
            } else {
                if (low[u] == num[u]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if (w == u) break;
                    }
                    ++ncomp;
                }
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().first;
                    low[parent] = std::min(low[parent], low[u]);
                }
            }
        }
    }
    std::vector<int> sol(inst.vars);
    for (int v = 0; v < inst.vars; ++v) {
        if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
        // Tarjan numbers components in reverse topological order, so a
        // literal is true iff its component number is smaller than its
        // negation's.
        sol[v] = comp[2 * v] < comp[2 * v + 1] ? 1 : 0;
    }
    return sol;
}

}  // namespace sghom
