#pragma once

#include <cstdint>
#include <vector>

#include "pprgm/graph.hpp"
#include "pprgm/ppr.hpp"
#include "pprgm/random_model.hpp"

namespace pprgm {

// min(pu,pv) / (max(pu,pv) + sigma); 0 when both values are 0, regardless of
// sigma. Inputs must be >= 0.
double pair_term(double pu, double pv, double sigma);

// Score increment contributed by a matched pair with the given degrees under
// Neighbor-Expansion: both one-step labels equal alpha*(1-alpha)/degree.
double ne_increment(std::uint32_t deg_u, std::uint32_t deg_v, double alpha,
                    double sigma);

struct LabelEntry {
    std::uint32_t seed_index;
    double value;
};

// Per-vertex sparse PPR labels from one Forward-Push per seed vertex. Each
// vertex carries a list of (seed index, reserve) sorted by seed index.
// Frozen after build; read-only afterwards.
class SeedLabelStore {
  public:
    static SeedLabelStore build(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                                const PPRParams &params, int threads = 1);

    const std::vector<LabelEntry> &left_labels(Vertex u) const { return left_[u]; }
    const std::vector<LabelEntry> &right_labels(Vertex v) const { return right_[v]; }
    std::uint32_t seed_count() const { return seed_count_; }
    std::uint64_t push_count() const { return push_count_; }

  private:
    std::vector<std::vector<LabelEntry>> left_, right_;
    std::uint32_t seed_count_ = 0;
    std::uint64_t push_count_ = 0;
};

// Sum of pair_term over all seed indices labeled on both sides. A seed index
// present on only one side contributes min = 0, so the sparse intersection
// equals the dense sum; iteration walks the shorter list.
double basic_score(Vertex u, Vertex v, const SeedLabelStore &labels, double sigma);

} // namespace pprgm
