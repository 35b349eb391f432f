#include "pprgm/ppr.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace pprgm {

namespace {

constexpr Vertex kDenseGuard = 20000;

void check_params(const PPRParams &p) {
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0,1)");
    if (!(p.r_max > 0.0))
        throw std::invalid_argument("r_max must be > 0");
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0,1)");
}

void check_dense_guard(const Graph &g) {
    if (g.vertex_count() > kDenseGuard)
        throw std::invalid_argument("graph too large for dense PPR iteration");
}

struct HeapEntry {
    double ratio;
    Vertex v;
    double residue; // residue value when this entry was created
};

struct HeapLess {
    bool operator()(const HeapEntry &a, const HeapEntry &b) const {
        if (a.ratio != b.ratio)
            return a.ratio < b.ratio;
        return a.v > b.v; // ties resolved toward the smaller vertex id
    }
};

std::vector<std::pair<Vertex, double>> sorted_entries(
    const std::unordered_map<Vertex, double> &m) {
    std::vector<std::pair<Vertex, double>> out(m.begin(), m.end());
    std::sort(out.begin(), out.end());
    return out;
}

#ifndef NDEBUG
double total_mass(const std::unordered_map<Vertex, double> &reserve,
                  const std::unordered_map<Vertex, double> &residue) {
    double s = 0;
    for (const auto &[v, x] : reserve)
        s += x;
    for (const auto &[v, x] : residue)
        s += x;
    return s;
}
#endif

} // namespace

PushResult forward_push(const Graph &g, Vertex source, const PPRParams &params) {
    check_params(params);
    if (g.degree(source) == 0)
        throw std::invalid_argument("isolated source: vertex " + std::to_string(source) +
                                    " has degree 0");

    std::unordered_map<Vertex, double> reserve, residue;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess> heap;
    residue[source] = 1.0;
    heap.push({1.0 / g.degree(source), source, 1.0});

    PushResult out;
    out.source = source;

    const double alpha = params.alpha;
    while (!heap.empty()) {
        HeapEntry top = heap.top();
        heap.pop();
        auto it = residue.find(top.v);
        if (it == residue.end() || it->second != top.residue)
            continue; // stale lazy-deleted entry
        if (!(top.ratio > params.r_max))
            break; // current maximum ratio is within threshold
        const double r = it->second;
        residue.erase(it);
        reserve[top.v] += alpha * r;
        const double share = (1.0 - alpha) * r / g.degree(top.v);
        for (Vertex u : g.neighbors(top.v)) {
            double &ru = residue[u];
            ru += share;
            heap.push({ru / g.degree(u), u, ru});
        }
        ++out.push_count;
#ifndef NDEBUG
        assert(std::abs(total_mass(reserve, residue) - 1.0) <= 1e-12);
#endif
    }

    out.reserves = sorted_entries(reserve);
    out.residues = sorted_entries(residue);

    double mass = 0;
    for (const auto &[v, x] : out.reserves)
        mass += x;
    for (const auto &[v, x] : out.residues)
        mass += x;
    if (std::abs(mass - 1.0) > 1e-12)
        throw std::logic_error("forward_push conservation violated: total mass " +
                               std::to_string(mass));
    return out;
}

std::vector<double> exact_ppr(const Graph &g, Vertex source, double alpha) {
    check_alpha(alpha);
    check_dense_guard(g);
    const Vertex n = g.vertex_count();
    if (source >= n)
        throw std::out_of_range("source out of range");

    std::vector<double> pi(n, 0.0), w(n, 0.0), next(n, 0.0);
    w[source] = 1.0;
    double weight = alpha; // alpha * (1-alpha)^t
    for (std::uint64_t t = 0; t < 2000000; ++t) {
        double wmax = 0;
        for (Vertex v = 0; v < n; ++v) {
            pi[v] += weight * w[v];
            wmax = std::max(wmax, w[v]);
        }
        if (weight * wmax < 1e-14)
            break;
        std::fill(next.begin(), next.end(), 0.0);
        for (Vertex v = 0; v < n; ++v) {
            if (w[v] == 0.0)
                continue;
            auto nb = g.neighbors(v);
            if (nb.empty()) {
                next[v] += w[v]; // absorbing
            } else {
                double share = w[v] / static_cast<double>(nb.size());
                for (Vertex u : nb)
                    next[u] += share;
            }
        }
        w.swap(next);
        weight *= 1.0 - alpha;
    }
    return pi;
}

std::vector<double> truncated_ppr(const Graph &g, Vertex source, double alpha,
                                  std::uint32_t steps) {
    check_alpha(alpha);
    check_dense_guard(g);
    const Vertex n = g.vertex_count();
    if (source >= n)
        throw std::out_of_range("source out of range");

    std::vector<double> pi(n, 0.0), w(n, 0.0), next(n, 0.0);
    w[source] = 1.0;
    double weight = alpha;
    for (std::uint32_t t = 0;; ++t) {
        for (Vertex v = 0; v < n; ++v)
            pi[v] += weight * w[v];
        if (t == steps)
            break;
        std::fill(next.begin(), next.end(), 0.0);
        for (Vertex v = 0; v < n; ++v) {
            if (w[v] == 0.0)
                continue;
            auto nb = g.neighbors(v);
            if (nb.empty()) {
                next[v] += w[v];
            } else {
                double share = w[v] / static_cast<double>(nb.size());
                for (Vertex u : nb)
                    next[u] += share;
            }
        }
        w.swap(next);
        weight *= 1.0 - alpha;
    }
    return pi;
}

FirstHitDecomposition first_hit_decomposition(const Graph &g, Vertex source,
                                              Vertex target, double alpha) {
    check_alpha(alpha);
    check_dense_guard(g);
    const Vertex n = g.vertex_count();
    if (source >= n || target >= n)
        throw std::out_of_range("vertex out of range");

    FirstHitDecomposition out;

    // pi1: walk distribution with the target absorbing; mass arriving at the
    // target at step t is the first-passage probability f^(t)
    {
        std::vector<double> w(n, 0.0), next(n, 0.0);
        w[source] = 1.0;
        double decay = 1.0; // (1-alpha)^t
        for (std::uint64_t t = 0; decay >= 1e-16; ++t) {
            out.pi1 += alpha * decay * w[target];
            w[target] = 0.0;
            double mass = 0;
            std::fill(next.begin(), next.end(), 0.0);
            for (Vertex v = 0; v < n; ++v) {
                if (w[v] == 0.0)
                    continue;
                mass += w[v];
                auto nb = g.neighbors(v);
                if (nb.empty()) {
                    next[v] += w[v];
                } else {
                    double share = w[v] / static_cast<double>(nb.size());
                    for (Vertex u : nb)
                        next[u] += share;
                }
            }
            if (mass == 0.0)
                break;
            w.swap(next);
            decay *= 1.0 - alpha;
        }
    }

    // ls: return series of the target; terms are bounded by (1-alpha)^t, so
    // the loop stops on that bound rather than on single terms (bipartite
    // graphs have zero terms at every odd t)
    {
        std::vector<double> w(n, 0.0), next(n, 0.0);
        w[target] = 1.0;
        double decay = 1.0;
        for (std::uint64_t t = 1;; ++t) {
            decay *= 1.0 - alpha;
            if (decay < 1e-15)
                break;
            std::fill(next.begin(), next.end(), 0.0);
            double mass = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (w[v] == 0.0)
                    continue;
                mass += w[v];
                auto nb = g.neighbors(v);
                if (nb.empty()) {
                    next[v] += w[v];
                } else {
                    double share = w[v] / static_cast<double>(nb.size());
                    for (Vertex u : nb)
                        next[u] += share;
                }
            }
            if (mass == 0.0)
                break;
            w.swap(next);
            out.ls += decay * w[target];
        }
    }
    return out;
}

} // namespace pprgm
