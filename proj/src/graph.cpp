#include "pprgm/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pprgm {

void Graph::check_vertex(Vertex u) const {
    if (u >= vertex_count())
        throw std::out_of_range("vertex id " + std::to_string(u) + " out of range (n=" +
                                std::to_string(vertex_count()) + ")");
}

Graph Graph::from_edges(Vertex n, std::vector<std::pair<Vertex, Vertex>> edges) {
    for (auto &[u, v] : edges) {
        if (u >= n || v >= n)
            throw std::out_of_range("edge endpoint out of range");
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    // drop self-loops after dedup
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [](const auto &e) { return e.first == e.second; }),
                edges.end());

    Graph g;
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto &[u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (Vertex u = 0; u < n; ++u)
        g.offsets_[u + 1] = g.offsets_[u] + deg[u];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto &[u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    // edges were sorted by (min,max); per-vertex lists need a final sort since
    // a vertex mixes lower and higher neighbors
    for (Vertex u = 0; u < n; ++u)
        std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]),
                  g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u + 1]));
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::validate() const {
    const Vertex n = vertex_count();
    for (Vertex u = 0; u < n; ++u) {
        auto nb = neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] == u)
                throw std::logic_error("self-loop at vertex " + std::to_string(u));
            if (i > 0 && nb[i] <= nb[i - 1])
                throw std::logic_error("neighbor list of " + std::to_string(u) +
                                       " not strictly increasing");
            if (!has_edge(nb[i], u))
                throw std::logic_error("asymmetric edge (" + std::to_string(u) + "," +
                                       std::to_string(nb[i]) + ")");
        }
    }
}

EdgeListParseError::EdgeListParseError(std::size_t line_no, const std::string &what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

namespace {

bool parse_vertex(const std::string &tok, Vertex &out) {
    if (tok.empty())
        return false;
    std::uint64_t val = 0;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
        val = val * 10 + static_cast<std::uint64_t>(c - '0');
        if (val > 0xffffffffULL)
            return false;
    }
    out = static_cast<Vertex>(val);
    return true;
}

} // namespace

Graph load_edge_list(std::istream &in) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex max_id = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#')
            continue;
        std::string tok;
        Vertex uv[2];
        int field = 0;
        for (std::size_t i = pos; i <= line.size(); ++i) {
            if (i == line.size() || std::isspace(static_cast<unsigned char>(line[i]))) {
                if (!tok.empty()) {
                    if (field >= 2)
                        throw EdgeListParseError(line_no, "expected two fields, got more");
                    if (!parse_vertex(tok, uv[field]))
                        throw EdgeListParseError(line_no, "bad vertex id '" + tok + "'");
                    ++field;
                    tok.clear();
                }
            } else {
                tok += line[i];
            }
        }
        if (field != 2)
            throw EdgeListParseError(line_no, "expected two fields");
        edges.emplace_back(uv[0], uv[1]);
        max_id = std::max({max_id, uv[0], uv[1]});
        any = true;
    }
    return Graph::from_edges(any ? max_id + 1 : 0, std::move(edges));
}

Graph load_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph &g, std::ostream &out) {
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v : g.neighbors(u))
            if (u < v)
                out << u << '\t' << v << '\n';
}

void save_edge_list_file(const Graph &g, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    save_edge_list(g, out);
}

} // namespace pprgm
