#pragma once

#include <cstdint>
#include <vector>

#include "pprgm/graph.hpp"
#include "pprgm/matcher.hpp"
#include "pprgm/random_model.hpp"

namespace pprgm {

struct EvalReport {
    std::uint64_t n_correct = 0;
    std::uint64_t n_wrong = 0;
    std::uint64_t n_ident = 0; // vertices in both graphs with degree >= 2 in both
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

// Ground truth under the identity matching: flag per vertex id, set when the
// vertex is present in both sampled graphs.
struct GroundTruth {
    std::vector<char> present_in_both;
};

GroundTruth truth_of(const CorrelatedPair &cp);

// A non-seed match (u,v) counts as correct iff u == v and u is present in
// both graphs. Seed rows are excluded from the counts unless count_seeds.
EvalReport evaluate(const MatchResult &result, const GroundTruth &truth,
                    const Graph &g1, const Graph &g2, bool count_seeds = false);

EvalReport evaluate(const MatchResult &result, const CorrelatedPair &cp,
                    bool count_seeds = false);

} // namespace pprgm
