#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pprgm {

using Vertex = std::uint32_t;

// A pair of vertices, left in G1 and right in G2. Ordered: the two sides live
// in different graphs, so (a,b) and (b,a) are distinct pairs.
struct VertexPair {
    Vertex left = 0;
    Vertex right = 0;

    friend bool operator==(const VertexPair &a, const VertexPair &b) {
        return a.left == b.left && a.right == b.right;
    }
    friend bool operator<(const VertexPair &a, const VertexPair &b) {
        return a.left != b.left ? a.left < b.left : a.right < b.right;
    }
};

// Immutable undirected graph in compressed sparse form. Neighbor lists are
// strictly increasing, symmetric, with no self-loops or duplicates.
class Graph {
  public:
    Graph() = default;

    // Builds from an edge list. Self-loops are dropped, duplicates collapsed,
    // and every edge is inserted symmetrically. Endpoints must be < n.
    static Graph from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges);

    Vertex vertex_count() const { return static_cast<Vertex>(offsets_.size() - 1); }
    std::size_t edge_count() const { return adj_.size() / 2; }

    std::uint32_t degree(Vertex u) const {
        check_vertex(u);
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }

    std::span<const Vertex> neighbors(Vertex u) const {
        check_vertex(u);
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }

    bool has_edge(Vertex u, Vertex v) const;

    // Full-scan structural check: symmetry, sortedness, no self-loops.
    // Throws std::logic_error on violation.
    void validate() const;

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
    }

  private:
    void check_vertex(Vertex u) const;

    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
};

// Parse failure with 1-based line number.
struct EdgeListParseError : std::runtime_error {
    EdgeListParseError(std::size_t line, const std::string &what);
    std::size_t line;
};

// Reads "u v" lines; '#' starts a comment line; blank lines are skipped.
// Vertex ids are dense 0-based: the graph spans 0..max_id seen.
Graph load_edge_list(std::istream &in);
Graph load_edge_list_file(const std::string &path);

// Canonical form: one "u<TAB>v" line per edge with u < v, ascending.
void save_edge_list(const Graph &g, std::ostream &out);
void save_edge_list_file(const Graph &g, const std::string &path);

} // namespace pprgm
