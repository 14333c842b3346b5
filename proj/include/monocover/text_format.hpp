#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "monocover/errors.hpp"
#include "monocover/graph.hpp"

// Graph file:
//   bipartite <n1> <n2>
//   <i> <j> <R|B>        one line per edge, V1-index i, V2-index j
// Lines starting with '#' are comments. Uncoloured files omit the third
// column on every line; r-colourings write the colour index instead of R|B.

namespace monocover {

struct GraphFile {
    BipartiteGraph graph;
    std::optional<RColouring> colouring;

    /// Requires a colouring with at most two colours (R = 0, B = 1).
    TwoColouring two_colouring() const {
        if (!colouring) throw std::invalid_argument("graph file carries no colouring");
        return colouring->to_two_colouring(graph);
    }
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
    try {
        return static_cast<std::size_t>(std::stoull(tok));
    } catch (const std::exception&) {
        throw ParseError(line, "integer out of range: '" + tok + "'");
    }
}

inline VertexId parse_vertex(const std::string& tok, std::size_t line) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw ParseError(line, "expected <part>:<index>, got '" + tok + "'");
    auto part = tok.substr(0, colon);
    if (part != "1" && part != "2") throw ParseError(line, "part must be 1 or 2 in '" + tok + "'");
    return {part == "1" ? Part::P1 : Part::P2, parse_index(tok.substr(colon + 1), line)};
}

inline std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

inline void write_vertex_list(std::ostream& out, const VertexSet& s) {
    s.for_each([&](VertexId v) { out << ' ' << to_string(v); });
}

}  // namespace detail

inline GraphFile read_graph(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> n1, n2;
    struct Row {
        std::size_t i, j;
        int colour;  // -1 uncoloured
        std::size_t line;
    };
    std::vector<Row> rows;
    bool letters = false, numbers = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string s = detail::strip_comment(raw);
        if (s.empty()) continue;
        auto tok = detail::split(s);
        if (!n1) {
            if (tok.size() != 3 || tok[0] != "bipartite") throw ParseError(line_no, "expected 'bipartite <n1> <n2>'");
            n1 = detail::parse_index(tok[1], line_no);
            n2 = detail::parse_index(tok[2], line_no);
            continue;
        }
        if (tok.size() != 2 && tok.size() != 3) throw ParseError(line_no, "expected '<i> <j> [colour]'");
        Row r{detail::parse_index(tok[0], line_no), detail::parse_index(tok[1], line_no), -1, line_no};
        if (tok.size() == 3) {
            if (tok[2] == "R" || tok[2] == "B") {
                r.colour = tok[2] == "R" ? 0 : 1;
                letters = true;
            } else {
                auto c = detail::parse_index(tok[2], line_no);
                if (c > 253) throw ParseError(line_no, "colour index too large");
                r.colour = static_cast<int>(c);
                numbers = true;
            }
        }
        rows.push_back(r);
    }
    if (!n1) throw ParseError(line_no, "missing 'bipartite' header");
    if (letters && numbers) throw ParseError(line_no, "mixes R/B labels with numeric colours");
    GraphBuilder builder(*n1, *n2);
    std::size_t coloured = 0;
    int max_colour = 1;
    for (const auto& r : rows) {
        if (r.i >= *n1 || r.j >= *n2)
            throw ParseError(r.line, "edge (" + std::to_string(r.i) + "," + std::to_string(r.j) + ") out of range");
        if (!builder.add_edge(r.i, r.j))
            throw ParseError(r.line, "duplicate edge (" + std::to_string(r.i) + "," + std::to_string(r.j) + ")");
        if (r.colour >= 0) {
            ++coloured;
            max_colour = std::max(max_colour, r.colour);
        }
    }
    if (coloured != 0 && coloured != rows.size())
        throw ParseError(line_no, "some edges are coloured and some are not");
    GraphFile file{std::move(builder).build(), std::nullopt};
    // An edgeless graph is vacuously coloured.
    if (coloured != 0 || rows.empty()) {
        RColouring rc(file.graph, static_cast<unsigned>(max_colour + 1));
        for (const auto& r : rows) rc.set(r.i, r.j, static_cast<unsigned>(r.colour));
        file.colouring = std::move(rc);
    }
    return file;
}

inline GraphFile read_graph_string(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline void write_header(std::ostream& out, const BipartiteGraph& g, const std::vector<std::string>& comments) {
    out << "bipartite " << g.n1() << ' ' << g.n2() << '\n';
    for (const auto& c : comments) out << "# " << c << '\n';
}

inline void write_graph(std::ostream& out, const BipartiteGraph& g, const std::vector<std::string>& comments = {}) {
    write_header(out, g, comments);
    for (const auto& e : g.edges()) out << e.i << ' ' << e.j << '\n';
}

inline void write_graph(std::ostream& out, const BipartiteGraph& g, const TwoColouring& c,
                        const std::vector<std::string>& comments = {}) {
    write_header(out, g, comments);
    for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << colour_char(c.colour(e)) << '\n';
}

/// r = 2 colourings are written with R/B labels, larger r with indices.
inline void write_graph(std::ostream& out, const BipartiteGraph& g, const RColouring& c,
                        const std::vector<std::string>& comments = {}) {
    write_header(out, g, comments);
    for (const auto& e : g.edges()) {
        unsigned col = c.colour(e.i, e.j);
        out << e.i << ' ' << e.j << ' ';
        if (c.colours() <= 2) out << (col == 0 ? 'R' : 'B');
        else out << col;
        out << '\n';
    }
}

inline std::string graph_to_string(const BipartiteGraph& g, const TwoColouring& c,
                                   const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    write_graph(out, g, c, comments);
    return out.str();
}

// Cover file:
//   cover <k>
//   tree <R|B>
//   vertices <part>:<index> ...
//   edges <i>-<j> ...
//   end
//   uncovered <part>:<index> ...
inline void write_cover(std::ostream& out, const TreeCover& cover) {
    out << "cover " << cover.trees.size() << '\n';
    for (const auto& t : cover.trees) {
        out << "tree " << colour_char(t.colour) << '\n' << "vertices";
        detail::write_vertex_list(out, t.vertices);
        out << '\n' << "edges";
        for (const auto& e : t.edges) out << ' ' << e.i << '-' << e.j;
        out << '\n' << "end\n";
    }
    out << "uncovered";
    detail::write_vertex_list(out, cover.uncovered);
    out << '\n';
}

inline TreeCover read_cover(std::istream& in, std::size_t n1, std::size_t n2) {
    TreeCover cover{{}, VertexSet(n1, n2)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> declared;
    bool saw_uncovered = false;
    MonoTree* open = nullptr;
    auto add_vertex = [&](VertexSet& s, const std::string& tok) {
        VertexId v = detail::parse_vertex(tok, line_no);
        if (!s.in_range(v)) throw ParseError(line_no, "vertex " + tok + " out of range");
        s.insert(v);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string s = detail::strip_comment(raw);
        if (s.empty()) continue;
        auto tok = detail::split(s);
        const std::string& key = tok[0];
        if (key == "cover" && tok.size() == 2 && !declared) {
            declared = detail::parse_index(tok[1], line_no);
        } else if (key == "tree" && tok.size() == 2 && !open) {
            if (tok[1] != "R" && tok[1] != "B") throw ParseError(line_no, "tree colour must be R or B");
            cover.trees.push_back({tok[1] == "R" ? Colour::Red : Colour::Blue, VertexSet(n1, n2), {}});
            open = &cover.trees.back();
        } else if (key == "vertices" && open) {
            for (std::size_t k = 1; k < tok.size(); ++k) add_vertex(open->vertices, tok[k]);
        } else if (key == "edges" && open) {
            for (std::size_t k = 1; k < tok.size(); ++k) {
                auto dash = tok[k].find('-');
                if (dash == std::string::npos) throw ParseError(line_no, "expected <i>-<j>");
                open->edges.push_back({detail::parse_index(tok[k].substr(0, dash), line_no),
                                       detail::parse_index(tok[k].substr(dash + 1), line_no)});
            }
        } else if (key == "end" && open) {
            open = nullptr;
        } else if (key == "uncovered" && !open) {
            saw_uncovered = true;
            for (std::size_t k = 1; k < tok.size(); ++k) add_vertex(cover.uncovered, tok[k]);
        } else {
            throw ParseError(line_no, "unexpected line '" + s + "'");
        }
    }
    if (!declared || open || !saw_uncovered) throw ParseError(line_no, "truncated cover file");
    if (*declared != cover.trees.size()) throw ParseError(line_no, "tree count does not match header");
    return cover;
}

// Partition file:
//   partition <k>
//   part <R|B> <part>:<index> ...
inline void write_partition(std::ostream& out, const MonoPartition& partition) {
    out << "partition " << partition.parts.size() << '\n';
    for (const auto& p : partition.parts) {
        out << "part " << colour_char(p.colour);
        detail::write_vertex_list(out, p.vertices);
        out << '\n';
    }
}

inline MonoPartition read_partition(std::istream& in, std::size_t n1, std::size_t n2) {
    MonoPartition partition;
    std::string raw;
    std::size_t line_no = 0;
    std::optional<std::size_t> declared;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string s = detail::strip_comment(raw);
        if (s.empty()) continue;
        auto tok = detail::split(s);
        if (tok[0] == "partition" && tok.size() == 2 && !declared) {
            declared = detail::parse_index(tok[1], line_no);
        } else if (tok[0] == "part" && tok.size() >= 2 && (tok[1] == "R" || tok[1] == "B")) {
            MonoPart part{tok[1] == "R" ? Colour::Red : Colour::Blue, VertexSet(n1, n2)};
            for (std::size_t k = 2; k < tok.size(); ++k) {
                VertexId v = detail::parse_vertex(tok[k], line_no);
                if (!part.vertices.in_range(v)) throw ParseError(line_no, "vertex " + tok[k] + " out of range");
                part.vertices.insert(v);
            }
            partition.parts.push_back(std::move(part));
        } else {
            throw ParseError(line_no, "unexpected line '" + s + "'");
        }
    }
    if (!declared || *declared != partition.parts.size()) throw ParseError(line_no, "part count does not match header");
    return partition;
}

}  // namespace monocover
