#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sghom/bitset.hpp"

namespace sghom {

enum class Sign : std::uint8_t { Blue = 0, Red = 1 };

inline Sign negate(Sign s) { return s == Sign::Blue ? Sign::Red : Sign::Blue; }

// An edge (or loop) carries a nonempty subset of {Blue, Red}; both = bicoloured.
enum class EdgeKind : std::uint8_t { Blue = 1, Red = 2, Bicoloured = 3 };

inline bool contains(EdgeKind k, Sign s) {
    return (static_cast<std::uint8_t>(k) >> static_cast<int>(s)) & 1;
}
inline bool is_bicoloured(EdgeKind k) { return k == EdgeKind::Bicoloured; }

// Negating {+,-} fixes a bicoloured pair and swaps blue/red.
inline EdgeKind negate(EdgeKind k) {
    switch (k) {
        case EdgeKind::Blue: return EdgeKind::Red;
        case EdgeKind::Red: return EdgeKind::Blue;
        default: return EdgeKind::Bicoloured;
    }
}

inline EdgeKind kind_of(Sign s) {
    return s == Sign::Blue ? EdgeKind::Blue : EdgeKind::Red;
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A signed graph: vertices with stable insertion order, at most one EdgeKind
// per unordered pair and per loop. Operations treat it as immutable; mutation
// happens only while building.
class SignedGraph {
public:
    int add_vertex(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        if ((int)names_.size() >= kMaxVerts)
            throw InputError("too many vertices (limit " + std::to_string(kMaxVerts) + ")");
        int id = (int)names_.size();
        names_.push_back(name);
        index_.emplace(name, id);
        blue_.push_back(0);
        red_.push_back(0);
        bic_.push_back(0);
        return id;
    }

    bool has_vertex(const std::string& name) const { return index_.count(name) != 0; }

    int vertex(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InputError("unknown vertex: " + name);
        return it->second;
    }

    void add_edge(int u, int v, EdgeKind k) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InputError("loop must be declared with add_loop: " + names_[u]);
        auto key = ordered(u, v);
        if (edges_.count(key)) throw InputError("duplicate edge " + names_[u] + " " + names_[v]);
        edges_.emplace(key, k);
        mark(u, v, k);
        mark(v, u, k);
    }

    void add_loop(int v, EdgeKind k) {
        check_vertex(v);
        if (loops_.count(v)) throw InputError("duplicate loop at " + names_[v]);
        loops_.emplace(v, k);
        mark(v, v, k);
    }

    int n() const { return (int)names_.size(); }
    const std::string& name(int v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<EdgeKind> edge_kind(int u, int v) const {
        if (u == v) {
            auto it = loops_.find(u);
            if (it == loops_.end()) return std::nullopt;
            return it->second;
        }
        auto it = edges_.find(ordered(u, v));
        if (it == edges_.end()) return std::nullopt;
        return it->second;
    }

    bool adjacent(int u, int v) const { return has(adj(u), v); }

    // Adjacency masks include the self bit when a loop of that colour exists.
    Mask blue_adj(int v) const { return blue_[v]; }   // at least blue
    Mask red_adj(int v) const { return red_[v]; }     // at least red
    Mask bic_adj(int v) const { return bic_[v]; }
    Mask adj(int v) const { return blue_[v] | red_[v]; }

    Mask vertex_mask() const { return all_below(n()); }

    const std::map<std::pair<int, int>, EdgeKind>& edges() const { return edges_; }
    const std::map<int, EdgeKind>& loops() const { return loops_; }

    bool operator==(const SignedGraph& o) const {
        return names_ == o.names_ && edges_ == o.edges_ && loops_ == o.loops_;
    }

private:
    static std::pair<int, int> ordered(int u, int v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    }
    void check_vertex(int v) const {
        if (v < 0 || v >= n()) throw InputError("vertex id out of range");
    }
    void mark(int u, int v, EdgeKind k) {
        if (contains(k, Sign::Blue)) blue_[u] |= bit(v);
        if (contains(k, Sign::Red)) red_[u] |= bit(v);
        if (is_bicoloured(k)) bic_[u] |= bit(v);
    }

    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::map<std::pair<int, int>, EdgeKind> edges_;
    std::map<int, EdgeKind> loops_;
    std::vector<Mask> blue_, red_, bic_;
};

// Switch set: subset of V(G), kept as a mask.
struct SwitchSet {
    Mask set = 0;
};

// Switching negates the signs of all non-loop edges with exactly one endpoint
// in S. Loops are unchanged.
inline SignedGraph apply_switching(const SignedGraph& g, Mask s) {
    if (s & ~g.vertex_mask()) throw InputError("switch set mentions unknown vertex");
    SignedGraph out;
    for (int v = 0; v < g.n(); ++v) out.add_vertex(g.name(v));
    for (const auto& [e, k] : g.edges()) {
        bool flip = has(s, e.first) != has(s, e.second);
        out.add_edge(e.first, e.second, flip ? negate(k) : k);
    }
    for (const auto& [v, k] : g.loops()) out.add_loop(v, k);
    return out;
}

// Sign of a closed walk of unicoloured edges; nullopt ("undefined") if the
// walk traverses a bicoloured edge.
inline std::optional<Sign> closed_walk_sign(const SignedGraph& g, const std::vector<int>& walk) {
    if (walk.empty() || walk.front() != walk.back())
        throw InputError("closed walk must start and end at the same vertex");
    int reds = 0;
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        auto k = g.edge_kind(walk[i], walk[i + 1]);
        if (!k) throw InputError("walk step is not an edge");
        if (is_bicoloured(*k)) return std::nullopt;
        if (*k == EdgeKind::Red) ++reds;
    }
    return reds % 2 ? Sign::Red : Sign::Blue;
}

// Switch set making every non-loop edge at least blue, when one exists.
// Spanning-forest potentials over the unicoloured non-loop edges; bicoloured
// edges are invariant and ignored. Red unicoloured loops cannot be fixed
// (loops are unchanged by switching).
inline std::optional<Mask> blue_normalizing_switch(const SignedGraph& g) {
    std::vector<int> pot(g.n(), -1);
    for (int root = 0; root < g.n(); ++root) {
        if (pot[root] != -1) continue;
        pot[root] = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            Mask self = bit(u);
            Mask blue_only = (g.blue_adj(u) & ~g.bic_adj(u)) & ~self;
            Mask red_only = (g.red_adj(u) & ~g.bic_adj(u)) & ~self;
            bool bad = false;
            auto relax = [&](int w, int p) {
                if (pot[w] == -1) {
                    pot[w] = p;
                    stack.push_back(w);
                } else if (pot[w] != p) {
                    bad = true;
                }
            };
            for_each_bit(blue_only, [&](int w) { relax(w, pot[u]); });
            for_each_bit(red_only, [&](int w) { relax(w, pot[u] ^ 1); });
            if (bad) return std::nullopt;
        }
    }
    Mask s = 0;
    for (int v = 0; v < g.n(); ++v)
        if (pot[v] == 1) s |= bit(v);
    return s;
}

// True iff every unicoloured cycle has an even number of red edges
// (equivalently, switchable to all-at-least-blue). The empty graph is
// uni-balanced; a bicoloured loop does not spoil balance.
inline bool is_uni_balanced(const SignedGraph& g) {
    for (const auto& [v, k] : g.loops())
        if (k == EdgeKind::Red) return false;
    return blue_normalizing_switch(g).has_value();
}

// Unsigned graph with loops; used for blue/bicoloured parts and bi-arc tests.
struct UnsignedGraph {
    std::vector<std::string> names;
    std::vector<Mask> adj;  // self bit when the vertex has a loop

    int n() const { return (int)names.size(); }
    bool adjacent(int u, int v) const { return has(adj[u], v); }
    bool loop(int v) const { return has(adj[v], v); }
};

// Blue part: keeps all vertices, and the edges/loops that are at least blue.
inline UnsignedGraph blue_part(const SignedGraph& g) {
    UnsignedGraph out;
    out.names = g.names();
    out.adj.assign(g.n(), 0);
    for (int v = 0; v < g.n(); ++v) out.adj[v] = g.blue_adj(v);
    return out;
}

// Bicoloured part: only bicoloured edges/loops, only their endpoints.
inline UnsignedGraph bicoloured_part(const SignedGraph& g) {
    Mask keep = 0;
    for (const auto& [e, k] : g.edges())
        if (is_bicoloured(k)) keep |= bit(e.first) | bit(e.second);
    for (const auto& [v, k] : g.loops())
        if (is_bicoloured(k)) keep |= bit(v);
    std::vector<int> remap(g.n(), -1);
    UnsignedGraph out;
    for_each_bit(keep, [&](int v) {
        remap[v] = (int)out.names.size();
        out.names.push_back(g.name(v));
    });
    out.adj.assign(out.names.size(), 0);
    for (const auto& [e, k] : g.edges())
        if (is_bicoloured(k)) {
            out.adj[remap[e.first]] |= bit(remap[e.second]);
            out.adj[remap[e.second]] |= bit(remap[e.first]);
        }
    for (const auto& [v, k] : g.loops())
        if (is_bicoloured(k)) out.adj[remap[v]] |= bit(remap[v]);
    return out;
}

// Edge-coloured graph: two symmetric relations, no switching semantics.
// Loops appear as self bits.
struct EdgeColouredGraph {
    std::vector<std::string> names;
    std::vector<Mask> blue, red;

    int n() const { return (int)names.size(); }
    Mask adj(int v) const { return blue[v] | red[v]; }
    bool blue_adjacent(int u, int v) const { return has(blue[u], v); }
    bool red_adjacent(int u, int v) const { return has(red[u], v); }

    void add_vertex(const std::string& name) {
        names.push_back(name);
        blue.push_back(0);
        red.push_back(0);
    }
    void add(int u, int v, Sign s) {
        auto& rel = s == Sign::Blue ? blue : red;
        rel[u] |= bit(v);
        rel[v] |= bit(u);
    }
};

// Switching graph H+: two vertices per vertex of H; an edge vw of sign c
// yields v1w1, v2w2 of colour c and v1w2, v2w1 of the opposite colour
// (loops included with v = w). Twins are interleaved: x -> 2x, x' -> 2x+1.
struct SwitchingGraph {
    EdgeColouredGraph base;
    int h_n = 0;

    int n() const { return base.n(); }
    int partner(int v) const { return v ^ 1; }
    int origin(int v) const { return v >> 1; }
    bool is_twin(int v) const { return v & 1; }
    int plain(int hv) const { return 2 * hv; }
    int twin(int hv) const { return 2 * hv + 1; }
};

inline SwitchingGraph build_switching_graph(const SignedGraph& h) {
    if (h.n() > kMaxVerts / 2) throw InputError("target too large for switching graph");
    SwitchingGraph sg;
    sg.h_n = h.n();
    for (int v = 0; v < h.n(); ++v) {
        sg.base.add_vertex(h.name(v));
        sg.base.add_vertex(h.name(v) + "'");
    }
    auto place = [&](int v, int w, EdgeKind k) {
        for (Sign s : {Sign::Blue, Sign::Red}) {
            if (!contains(k, s)) continue;
            sg.base.add(2 * v, 2 * w, s);
            sg.base.add(2 * v + 1, 2 * w + 1, s);
            sg.base.add(2 * v, 2 * w + 1, negate(s));
            sg.base.add(2 * v + 1, 2 * w, negate(s));
        }
    };
    for (const auto& [e, k] : h.edges()) place(e.first, e.second, k);
    for (const auto& [v, k] : h.loops()) place(v, v, k);
    return sg;
}

// Connected components of the underlying graph.
inline std::vector<Mask> components(const SignedGraph& g) {
    std::vector<Mask> out;
    Mask seen = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (has(seen, v)) continue;
        Mask comp = bit(v);
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            Mask next = g.adj(u) & ~comp;
            for_each_bit(next, [&](int w) {
                comp |= bit(w);
                stack.push_back(w);
            });
        }
        seen |= comp;
        out.push_back(comp);
    }
    return out;
}

}  // namespace sghom
