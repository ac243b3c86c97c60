#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sghom/graph.hpp"

namespace sghom {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Lists on a target H, one mask of allowed H-vertices per G-vertex.
struct Lists {
    std::vector<Mask> allow;
};

struct Instance {
    SignedGraph g;
    SignedGraph h;
    Lists lists;  // allow[v] over V(h); defaults to full lists

    Mask list(int v) const { return lists.allow[v]; }
};

inline Lists full_lists(const SignedGraph& g, const SignedGraph& h) {
    Lists l;
    l.allow.assign(g.n(), h.vertex_mask());
    return l;
}

// A homomorphism of signed graphs: vertex map plus the switch set witnessing
// validity per the definition (switch G, then colours map respectfully).
struct Homomorphism {
    std::vector<int> map;  // V(G) -> V(H)
    Mask switched = 0;     // subset of V(G)
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (!t.empty() && t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

inline std::optional<EdgeKind> parse_kind(const std::string& s) {
    if (s == "+") return EdgeKind::Blue;
    if (s == "-") return EdgeKind::Red;
    if (s == "+-") return EdgeKind::Bicoloured;
    return std::nullopt;
}

inline std::string kind_text(EdgeKind k) {
    switch (k) {
        case EdgeKind::Blue: return "+";
        case EdgeKind::Red: return "-";
        default: return "+-";
    }
}

}  // namespace detail

// Signed-graph text format: line-oriented, '#' comments.
//   sg 1
//   vertex <id>
//   edge <u> <v> <k>     k in {+, -, +-}, u != v
//   loop <v> <k>
inline SignedGraph parse_signed_graph(const std::string& text) {
    SignedGraph g;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++ln;
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "sg" || tok[1] != "1")
                throw ParseError(ln, "expected header 'sg 1'");
            header = true;
            continue;
        }
        try {
            if (tok[0] == "vertex" && tok.size() == 2) {
                g.add_vertex(tok[1]);
            } else if (tok[0] == "edge" && tok.size() == 4) {
                auto k = detail::parse_kind(tok[3]);
                if (!k) throw ParseError(ln, "bad edge kind '" + tok[3] + "'");
                if (tok[1] == tok[2]) throw ParseError(ln, "edge endpoints must differ");
                int u = g.add_vertex(tok[1]);
                int v = g.add_vertex(tok[2]);
                g.add_edge(u, v, *k);
            } else if (tok[0] == "loop" && tok.size() == 3) {
                auto k = detail::parse_kind(tok[2]);
                if (!k) throw ParseError(ln, "bad loop kind '" + tok[2] + "'");
                g.add_loop(g.add_vertex(tok[1]), *k);
            } else {
                throw ParseError(ln, "unrecognized line");
            }
        } catch (const InputError& e) {
            throw ParseError(ln, e.what());
        }
    }
    if (!header) throw ParseError(ln == 0 ? 1 : ln, "missing header 'sg 1'");
    return g;
}

inline std::string serialize(const SignedGraph& g) {
    std::ostringstream out;
    out << "sg 1\n";
    for (int v = 0; v < g.n(); ++v) out << "vertex " << g.name(v) << "\n";
    for (const auto& [e, k] : g.edges())
        out << "edge " << g.name(e.first) << " " << g.name(e.second) << " "
            << detail::kind_text(k) << "\n";
    for (const auto& [v, k] : g.loops())
        out << "loop " << g.name(v) << " " << detail::kind_text(k) << "\n";
    return out.str();
}

// Lists format:
//   lists 1
//   map <g-vertex> : <h-vertex> [<h-vertex> ...]
// Omitted G-vertices get the full list V(H).
inline Lists parse_lists(const std::string& text, const SignedGraph& g, const SignedGraph& h) {
    Lists l = full_lists(g, h);
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++ln;
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        if (!header) {
            if (tok.size() != 2 || tok[0] != "lists" || tok[1] != "1")
                throw ParseError(ln, "expected header 'lists 1'");
            header = true;
            continue;
        }
        if (tok.size() < 4 || tok[0] != "map" || tok[2] != ":")
            throw ParseError(ln, "expected 'map <g-vertex> : <h-vertex> ...'");
        if (!g.has_vertex(tok[1])) throw ParseError(ln, "unknown input vertex " + tok[1]);
        Mask m = 0;
        for (size_t i = 3; i < tok.size(); ++i) {
            if (!h.has_vertex(tok[i])) throw ParseError(ln, "unknown target vertex " + tok[i]);
            m |= bit(h.vertex(tok[i]));
        }
        l.allow[g.vertex(tok[1])] = m;
    }
    if (!header) throw ParseError(ln == 0 ? 1 : ln, "missing header 'lists 1'");
    return l;
}

inline std::string serialize_lists(const Lists& l, const SignedGraph& g, const SignedGraph& h) {
    std::ostringstream out;
    out << "lists 1\n";
    for (int v = 0; v < g.n(); ++v) {
        out << "map " << g.name(v) << " :";
        for_each_bit(l.allow[v], [&](int hv) { out << " " << h.name(hv); });
        out << "\n";
    }
    return out.str();
}

// Homomorphism output: one line per vertex, `map <g> -> <h> [switched]`.
inline std::string serialize_hom(const Homomorphism& f, const SignedGraph& g,
                                 const SignedGraph& h) {
    std::ostringstream out;
    for (int v = 0; v < g.n(); ++v) {
        out << "map " << g.name(v) << " -> " << h.name(f.map[v]);
        if (has(f.switched, v)) out << " switched";
        out << "\n";
    }
    return out.str();
}

}  // namespace sghom
