#pragma once

// Shared helpers for the test suites: compact graph builders, independent
// brute-force oracles, and seeded random generators.

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sghom/graph.hpp"
#include "sghom/io.hpp"

namespace testutil {

using namespace sghom;

// Builds a signed graph from a compact description like
//   "a-b:+ b-c:+- c:~- d:~+"   (x-y:k edge, x:~k loop)
inline SignedGraph graph(const std::string& desc) {
    SignedGraph g;
    std::istringstream in(desc);
    std::string item;
    auto kind = [](const std::string& s) {
        if (s == "+") return EdgeKind::Blue;
        if (s == "-") return EdgeKind::Red;
        if (s == "+-") return EdgeKind::Bicoloured;
        throw InputError("bad kind " + s);
    };
    while (in >> item) {
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            g.add_vertex(item);
            continue;
        }
        std::string lhs = item.substr(0, colon);
        std::string k = item.substr(colon + 1);
        if (!k.empty() && k[0] == '~') {
            g.add_loop(g.add_vertex(lhs), kind(k.substr(1)));
            continue;
        }
        auto dash = lhs.find('-');
        int u = g.add_vertex(lhs.substr(0, dash));
        int v = g.add_vertex(lhs.substr(dash + 1));
        g.add_edge(u, v, kind(k));
    }
    return g;
}

// A path v1..vn with all edges of one kind.
inline SignedGraph path(int n, EdgeKind k, const std::string& prefix = "v") {
    SignedGraph g;
    for (int i = 1; i <= n; ++i) g.add_vertex(prefix + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, k);
    return g;
}

inline void add_all_loops(SignedGraph& g, EdgeKind k) {
    for (int v = 0; v < g.n(); ++v) g.add_loop(v, k);
}

// Independent ground truth: tries all 2^|V(G)| switch sets and all
// |V(H)|^|V(G)| maps against the definition directly (switch first, then
// every at-least-blue edge maps to an at-least-blue edge, and likewise red).
inline bool naive_solvable(const Instance& inst) {
    int n = inst.g.n(), m = inst.h.n();
    if (n == 0) return true;
    std::vector<int> map(n, 0);
    for (Mask s = 0; s <= inst.g.vertex_mask(); ++s) {
        SignedGraph switched = apply_switching(inst.g, s);
        for (int v = 0; v < n; ++v) map[v] = 0;
        while (true) {
            bool ok = true;
            for (int v = 0; v < n && ok; ++v)
                if (!has(inst.list(v), map[v])) ok = false;
            if (ok) {
                auto respects = [&](int u, int v, EdgeKind k) {
                    auto hk = inst.h.edge_kind(map[u], map[v]);
                    if (!hk) return false;
                    if (contains(k, Sign::Blue) && !contains(*hk, Sign::Blue)) return false;
                    if (contains(k, Sign::Red) && !contains(*hk, Sign::Red)) return false;
                    return true;
                };
                for (const auto& [e, k] : switched.edges())
                    if (!respects(e.first, e.second, k)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    for (const auto& [v, k] : switched.loops())
                        if (!respects(v, v, k)) {
                            ok = false;
                            break;
                        }
                if (ok) return true;
            }
            int i = 0;
            for (; i < n; ++i) {
                if (++map[i] < m) break;
                map[i] = 0;
            }
            if (i == n) break;
        }
        if (s == inst.g.vertex_mask()) break;  // avoid wrap at full 64-bit mask
    }
    return false;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    int pick(int lo, int hi) { return (int)std::uniform_int_distribution<int>(lo, hi)(eng); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(eng) < p; }
};

inline EdgeKind random_kind(Rng& rng) {
    int r = rng.pick(0, 2);
    return r == 0 ? EdgeKind::Blue : r == 1 ? EdgeKind::Red : EdgeKind::Bicoloured;
}

// Random signed graph on n vertices: each pair gets an edge with probability
// p, each vertex a loop with probability loop_p, kinds uniform.
inline SignedGraph random_graph(Rng& rng, int n, double p, double loop_p) {
    SignedGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex("g" + std::to_string(i));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) g.add_edge(u, v, random_kind(rng));
    for (int v = 0; v < n; ++v)
        if (rng.chance(loop_p)) g.add_loop(v, random_kind(rng));
    return g;
}

// Random connected signed graph: spanning tree plus extra edges.
inline SignedGraph random_connected(Rng& rng, int n, double extra_p, double loop_p) {
    SignedGraph g;
    for (int i = 0; i < n; ++i) g.add_vertex("g" + std::to_string(i));
    for (int v = 1; v < n; ++v) g.add_edge(rng.pick(0, v - 1), v, random_kind(rng));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v) && rng.chance(extra_p)) g.add_edge(u, v, random_kind(rng));
    for (int v = 0; v < n; ++v)
        if (rng.chance(loop_p)) g.add_loop(v, random_kind(rng));
    return g;
}

inline Lists random_lists(Rng& rng, const SignedGraph& g, const SignedGraph& h, double keep_p) {
    Lists l = full_lists(g, h);
    for (int v = 0; v < g.n(); ++v) {
        Mask m = 0;
        for (int hv = 0; hv < h.n(); ++hv)
            if (rng.chance(keep_p)) m |= bit(hv);
        if (m) l.allow[v] = m;
    }
    return l;
}

}  // namespace testutil
