#include "pprgm/metrics.hpp"

#include <stdexcept>

namespace pprgm {

GroundTruth truth_of(const CorrelatedPair &cp) {
    GroundTruth t;
    t.present_in_both.resize(cp.base.vertex_count());
    for (Vertex v = 0; v < cp.base.vertex_count(); ++v)
        t.present_in_both[v] = cp.present_in_both(v);
    return t;
}

EvalReport evaluate(const MatchResult &result, const GroundTruth &truth,
                    const Graph &g1, const Graph &g2, bool count_seeds) {
    EvalReport rep;
    const std::size_t n = truth.present_in_both.size();
    for (const auto &m : result.matches) {
        if (m.pair.left >= g1.vertex_count() || m.pair.right >= g2.vertex_count() ||
            m.pair.left >= n || m.pair.right >= n)
            throw std::out_of_range("match row outside the shared id space");
        if (m.provenance == Provenance::Seed && !count_seeds)
            continue;
        bool correct = m.pair.left == m.pair.right &&
                       truth.present_in_both[m.pair.left];
        if (correct)
            ++rep.n_correct;
        else
            ++rep.n_wrong;
    }
    for (Vertex v = 0; v < n && v < g1.vertex_count() && v < g2.vertex_count(); ++v)
        if (truth.present_in_both[v] && g1.degree(v) >= 2 && g2.degree(v) >= 2)
            ++rep.n_ident;

    const std::uint64_t found = rep.n_correct + rep.n_wrong;
    rep.precision = found == 0 ? 0.0 : static_cast<double>(rep.n_correct) / found;
    rep.recall = rep.n_ident == 0
                     ? 0.0
                     : static_cast<double>(rep.n_correct) / static_cast<double>(rep.n_ident);
    rep.f1 = (rep.precision == 0.0 || rep.recall == 0.0)
                 ? 0.0
                 : 2.0 * rep.precision * rep.recall / (rep.precision + rep.recall);
    return rep;
}

EvalReport evaluate(const MatchResult &result, const CorrelatedPair &cp,
                    bool count_seeds) {
    return evaluate(result, truth_of(cp), cp.g1, cp.g2, count_seeds);
}

} // namespace pprgm
