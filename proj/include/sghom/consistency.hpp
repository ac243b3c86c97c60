#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "sghom/graph.hpp"
#include "sghom/io.hpp"
#include "sghom/oracle.hpp"

namespace sghom {

// ---------------------------------------------------------------------------
// Arc consistency over the underlying graphs, and the bicoloured variant.
// Lists only ever shrink; returns false iff some list becomes empty.
// ---------------------------------------------------------------------------

namespace detail {

// mode selects the adjacency used for support: full adjacency or bicoloured.
inline bool arc_consistency_impl(const SignedGraph& g, const SignedGraph& h,
                                 std::vector<Mask>& lists, bool bicoloured_only) {
    // Unary effect of loops first.
    Mask loop_ok = 0, bic_loop_ok = 0;
    for (int a = 0; a < h.n(); ++a) {
        if (auto k = h.edge_kind(a, a)) {
            loop_ok |= bit(a);
            if (is_bicoloured(*k)) bic_loop_ok |= bit(a);
        }
    }
    for (const auto& [v, k] : g.loops()) {
        if (bicoloured_only && !is_bicoloured(k)) continue;
        lists[v] &= bicoloured_only ? bic_loop_ok : loop_ok;
        if (!lists[v]) return false;
    }
    struct Arc {
        int from, to;  // revise lists[from] using lists[to]
    };
    std::vector<std::vector<int>> nbrs(g.n());
    for (const auto& [e, k] : g.edges()) {
        if (bicoloured_only && !is_bicoloured(k)) continue;
        nbrs[e.first].push_back(e.second);
        nbrs[e.second].push_back(e.first);
    }
    std::deque<Arc> work;
    std::vector<std::vector<bool>> queued(g.n(), std::vector<bool>(g.n(), false));
    auto push = [&](int from, int to) {
        if (!queued[from][to]) {
            queued[from][to] = true;
            work.push_back({from, to});
        }
    };
    for (int v = 0; v < g.n(); ++v)
        for (int w : nbrs[v]) push(v, w);
    while (!work.empty()) {
        auto [u, v] = work.front();
        work.pop_front();
        queued[u][v] = false;
        Mask keep = 0;
        for_each_bit(lists[u], [&](int a) {
            Mask support = bicoloured_only ? h.bic_adj(a) : h.adj(a);
            if (support & lists[v]) keep |= bit(a);
        });
        if (keep != lists[u]) {
            lists[u] = keep;
            if (!keep) return false;
            for (int w : nbrs[u]) push(w, u);
        }
    }
    return true;
}

}  // namespace detail

// Plain arc consistency: every h in L(x) keeps, for each G-edge xy, a
// neighbour in L(y).
inline bool arc_consistency(const SignedGraph& g, const SignedGraph& h,
                            std::vector<Mask>& lists) {
    return detail::arc_consistency_impl(g, h, lists, false);
}

// Bicoloured arc consistency: over bicoloured G-edges only, requiring
// bicoloured support in H.
inline bool bicoloured_arc_consistency(const SignedGraph& g, const SignedGraph& h,
                                       std::vector<Mask>& lists) {
    return detail::arc_consistency_impl(g, h, lists, true);
}

// Both consistencies to a common fixed point.
inline bool full_arc_consistency(const SignedGraph& g, const SignedGraph& h,
                                 std::vector<Mask>& lists) {
    while (true) {
        std::vector<Mask> before = lists;
        if (!arc_consistency(g, h, lists)) return false;
        if (!bicoloured_arc_consistency(g, h, lists)) return false;
        if (lists == before) return true;
    }
}

// ---------------------------------------------------------------------------
// Pair consistency ((2,3)-consistency) over an edge-coloured template.
// ---------------------------------------------------------------------------

struct PairState {
    int n_g = 0, n_t = 0;
    // rel[u][v] is a relation over template vertices: row a -> mask of b.
    std::vector<std::vector<std::vector<Mask>>> rel;

    Mask domain(int u) const {
        Mask m = 0;
        for (int a = 0; a < n_t; ++a)
            if (rel[u][u][a]) m |= bit(a);
        return m;
    }
};

// Builds the pair relations from lists and G's edge constraints, then closes
// them under composition through every third vertex. Returns nullopt if any
// relation empties (no homomorphism).
inline std::optional<PairState> pair_consistency(const SignedGraph& g,
                                                 const EdgeColouredGraph& t,
                                                 const std::vector<Mask>& lists) {
    PairState st;
    st.n_g = g.n();
    st.n_t = t.n();
    auto cons = ec_constraints(g);
    std::vector<std::vector<EdgeKind>> edge_kind(g.n(), std::vector<EdgeKind>(g.n()));
    std::vector<std::vector<bool>> has_edge(g.n(), std::vector<bool>(g.n(), false));
    std::vector<Mask> dom = lists;
    for (const auto& c : cons) {
        if (c.u == c.v) {
            Mask ok = 0;
            for_each_bit(dom[c.u], [&](int a) {
                if (has(ec_support(t, a, c.k), a)) ok |= bit(a);
            });
            dom[c.u] = ok;
        } else {
            has_edge[c.u][c.v] = has_edge[c.v][c.u] = true;
            edge_kind[c.u][c.v] = edge_kind[c.v][c.u] = c.k;
        }
    }
    st.rel.assign(g.n(), std::vector<std::vector<Mask>>(g.n(), std::vector<Mask>(t.n(), 0)));
    for (int u = 0; u < g.n(); ++u)
        for (int v = 0; v < g.n(); ++v) {
            for_each_bit(dom[u], [&](int a) {
                Mask row = dom[v];
                if (u == v)
                    row = bit(a) & dom[v];
                else if (has_edge[u][v])
                    row &= ec_support(t, a, edge_kind[u][v]);
                st.rel[u][v][a] = row;
            });
        }
    // Closure: rel[u][v] &= rel[u][w] o rel[w][v] until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < g.n(); ++u)
            for (int v = 0; v < g.n(); ++v)
                for (int w = 0; w < g.n(); ++w) {
                    if (w == u || w == v) continue;
                    for (int a = 0; a < t.n(); ++a) {
                        Mask row = st.rel[u][v][a];
                        if (!row) continue;
                        Mask composed = 0;
                        for_each_bit(st.rel[u][w][a], [&](int c) { composed |= st.rel[w][v][c]; });
                        Mask next = row & composed;
                        if (next != row) {
                            st.rel[u][v][a] = next;
                            changed = true;
                        }
                    }
                }
        // keep diagonals and transposes synchronized
        for (int u = 0; u < g.n(); ++u)
            for (int v = 0; v < g.n(); ++v)
                for (int a = 0; a < t.n(); ++a)
                    for_each_bit(st.rel[u][v][a], [&](int b) {
                        if (!has(st.rel[v][u][b], a)) {
                            st.rel[u][v][a] &= ~bit(b);
                            changed = true;
                        }
                    });
    }
    for (int u = 0; u < g.n(); ++u)
        for (int v = 0; v < g.n(); ++v) {
            Mask total = 0;
            for (int a = 0; a < t.n(); ++a) total |= st.rel[u][v][a];
            if (!total) return std::nullopt;
        }
    return st;
}

// ---------------------------------------------------------------------------
// Min orderings.
// ---------------------------------------------------------------------------

struct MinOrdering {
    std::vector<int> order;  // H-vertex ids, smallest first
    bool special = false;
};

struct BipMinOrdering {
    std::vector<int> black_order, white_order;
    bool special = false;
};

struct MinOrderViolation {
    std::string what;
    int a = -1, b = -1, c = -1, d = -1;
};

namespace detail {

inline std::vector<int> positions(const std::vector<int>& order, int n) {
    std::vector<int> pos(n, -1);
    for (int i = 0; i < (int)order.size(); ++i) pos[order[i]] = i;
    return pos;
}

// Special conditions at a common neighbour m: bicoloured edges before
// unicoloured ones; for reflexive targets also bicoloured loops before
// unicoloured loops and blue loops before red loops.
inline std::optional<MinOrderViolation> check_special(const SignedGraph& h,
                                                      const std::vector<int>& pos) {
    auto loop_kind = [&](int v) { return h.edge_kind(v, v); };
    for (int m = 0; m < h.n(); ++m) {
        std::vector<int> nb;
        for_each_bit(h.adj(m) & ~bit(m), [&](int x) { nb.push_back(x); });
        for (int x : nb)
            for (int y : nb) {
                if (x == y) continue;
                bool must_precede = false;
                std::string why;
                auto kx = h.edge_kind(m, x), ky = h.edge_kind(m, y);
                if (is_bicoloured(*kx) && !is_bicoloured(*ky)) {
                    must_precede = true;
                    why = "bicoloured edge after unicoloured edge";
                }
                auto lx = loop_kind(x), ly = loop_kind(y);
                if (lx && ly) {
                    if (is_bicoloured(*lx) && !is_bicoloured(*ly)) {
                        must_precede = true;
                        why = "bicoloured loop after unicoloured loop";
                    }
                    if (*lx == EdgeKind::Blue && *ly == EdgeKind::Red) {
                        must_precede = true;
                        why = "blue loop after red loop";
                    }
                }
                if (must_precede && pos[x] > pos[y])
                    return MinOrderViolation{why, m, x, y, -1};
            }
    }
    return std::nullopt;
}

// Bipartite special condition (irreflexive): bicoloured neighbours of any
// vertex precede its unicoloured neighbours.
inline std::optional<MinOrderViolation> check_special_bip(const SignedGraph& h,
                                                          const std::vector<int>& pos) {
    for (int m = 0; m < h.n(); ++m) {
        std::vector<int> nb;
        for_each_bit(h.adj(m) & ~bit(m), [&](int x) { nb.push_back(x); });
        for (int x : nb)
            for (int y : nb) {
                if (x == y) continue;
                auto kx = h.edge_kind(m, x), ky = h.edge_kind(m, y);
                if (is_bicoloured(*kx) && !is_bicoloured(*ky) && pos[x] > pos[y])
                    return MinOrderViolation{"bicoloured edge after unicoloured edge", m, x, y,
                                             -1};
            }
    }
    return std::nullopt;
}

}  // namespace detail

// Verifies the min-ordering law (and the special conditions when flagged).
// Returns nullopt when valid, otherwise a violation witness.
inline std::optional<MinOrderViolation> verify_min_ordering(const SignedGraph& h,
                                                            const MinOrdering& ord) {
    if ((int)ord.order.size() != h.n()) return MinOrderViolation{"not a permutation"};
    auto pos = detail::positions(ord.order, h.n());
    for (int v = 0; v < h.n(); ++v)
        if (pos[v] == -1) return MinOrderViolation{"not a permutation"};
    for (int x = 0; x < h.n(); ++x)
        for (int x2 = 0; x2 < h.n(); ++x2) {
            if (pos[x] >= pos[x2]) continue;
            for (int y = 0; y < h.n(); ++y)
                for (int y2 = 0; y2 < h.n(); ++y2) {
                    if (pos[y] >= pos[y2]) continue;
                    if (h.adjacent(x, y2) && h.adjacent(x2, y) && !h.adjacent(x, y))
                        return MinOrderViolation{"min ordering law", x, x2, y, y2};
                }
        }
    if (ord.special)
        if (auto v = detail::check_special(h, pos)) return v;
    return std::nullopt;
}

inline std::optional<MinOrderViolation> verify_min_ordering(const SignedGraph& h,
                                                            const BipMinOrdering& ord) {
    std::vector<int> pos(h.n(), -1);
    std::vector<int> cls(h.n(), -1);
    for (int i = 0; i < (int)ord.black_order.size(); ++i) {
        pos[ord.black_order[i]] = i;
        cls[ord.black_order[i]] = 0;
    }
    for (int i = 0; i < (int)ord.white_order.size(); ++i) {
        if (cls[ord.white_order[i]] != -1) return MinOrderViolation{"classes overlap"};
        pos[ord.white_order[i]] = i;
        cls[ord.white_order[i]] = 1;
    }
    for (int v = 0; v < h.n(); ++v)
        if (pos[v] == -1) return MinOrderViolation{"not a permutation of both classes"};
    for (int v = 0; v < h.n(); ++v)
        if (h.edge_kind(v, v)) return MinOrderViolation{"bipartite ordering on looped vertex"};
    for (int x = 0; x < h.n(); ++x)
        for (int x2 = 0; x2 < h.n(); ++x2) {
            if (cls[x] != 1 || cls[x2] != 1 || pos[x] >= pos[x2]) continue;
            for (int y = 0; y < h.n(); ++y)
                for (int y2 = 0; y2 < h.n(); ++y2) {
                    if (cls[y] != 0 || cls[y2] != 0 || pos[y] >= pos[y2]) continue;
                    if (h.adjacent(x, y2) && h.adjacent(x2, y) && !h.adjacent(x, y))
                        return MinOrderViolation{"bipartite min ordering law", x, x2, y, y2};
                }
        }
    if (ord.special)
        if (auto v = detail::check_special_bip(h, pos)) return v;
    return std::nullopt;
}

// The mapping of every vertex to its list minimum (positions per the
// ordering). Lists must be nonempty; for the bipartite version each list
// must sit inside one class.
inline std::vector<int> greedy_min_assignment(const std::vector<Mask>& lists,
                                              const std::vector<int>& pos) {
    std::vector<int> map(lists.size(), -1);
    for (size_t v = 0; v < lists.size(); ++v) {
        int best = -1;
        for_each_bit(lists[v], [&](int a) {
            if (best == -1 || pos[a] < pos[best]) best = a;
        });
        if (best == -1) throw InputError("greedy assignment on empty list");
        map[v] = best;
    }
    return map;
}

inline std::vector<int> order_positions(const MinOrdering& ord, int n) {
    return detail::positions(ord.order, n);
}

// Positions for a bipartite ordering: the two class orders are independent,
// so positions are comparable only within a class. Lists are class-separated
// by the solvers before greedy assignment.
inline std::vector<int> order_positions(const BipMinOrdering& ord, int n) {
    std::vector<int> pos(n, -1);
    for (int i = 0; i < (int)ord.black_order.size(); ++i) pos[ord.black_order[i]] = i;
    for (int i = 0; i < (int)ord.white_order.size(); ++i) pos[ord.white_order[i]] = i;
    return pos;
}

// ---------------------------------------------------------------------------
// Bipartization of inputs: proper 2-colourings per component.
// ---------------------------------------------------------------------------

// Colours of a connected component (mask); nullopt if an odd cycle or a loop
// makes it impossible. colour[v] in {0,1} for v in comp.
inline std::optional<std::vector<int>> two_colour(const SignedGraph& g, Mask comp) {
    std::vector<int> colour(g.n(), -1);
    int root = lowest(comp);
    colour[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (g.edge_kind(u, u)) return std::nullopt;
        bool bad = false;
        for_each_bit(g.adj(u) & comp & ~bit(u), [&](int w) {
            if (colour[w] == -1) {
                colour[w] = colour[u] ^ 1;
                stack.push_back(w);
            } else if (colour[w] == colour[u]) {
                bad = true;
            }
        });
        if (bad) return std::nullopt;
    }
    return colour;
}

}  // namespace sghom
