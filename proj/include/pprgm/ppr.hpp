#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pprgm/graph.hpp"

namespace pprgm {

struct PPRParams {
    double alpha = 0.3; // stopping probability, in (0,1)
    double r_max = 1e-3; // residue threshold, > 0
};

// Sparse outcome of one Forward-Push. Reserves are PPR underestimates; the
// key set of reserves is the heavy-hitter set H(source). Both lists are
// sorted by vertex id. Invariants on return:
//   sum(reserves) + sum(residues) == 1 (within 1e-12),
//   residues[u] / degree(u) <= r_max for every u.
struct PushResult {
    Vertex source = 0;
    std::vector<std::pair<Vertex, double>> reserves;
    std::vector<std::pair<Vertex, double>> residues;
    std::uint64_t push_count = 0;
};

// Forward-Push: starting from residue 1 at the source, repeatedly pick the
// vertex maximizing residue/degree (ties to the smaller id), move an alpha
// fraction of its residue to its reserve, and spread the rest uniformly over
// its neighbors, until every residue/degree ratio is <= r_max.
// Throws std::invalid_argument when the source is isolated.
PushResult forward_push(const Graph &g, Vertex source, const PPRParams &params);

// Dense PPR by iterating the decaying-walk distribution until the max-norm
// change drops below 1e-14. Degree-0 vertices are absorbing. Guarded to
// |V| <= 20000.
std::vector<double> exact_ppr(const Graph &g, Vertex source, double alpha);

// alpha * sum_{t=0..L} (1-alpha)^t q^(t), with q^(t) the t-step non-decaying
// walk distribution. Same size guard as exact_ppr.
std::vector<double> truncated_ppr(const Graph &g, Vertex source, double alpha,
                                  std::uint32_t steps);

struct FirstHitDecomposition {
    double pi1 = 0; // decaying walk terminates at target on first arrival
    double ls = 0;  // discounted return-probability series of the target
};

// Splits pi(source,target) as pi1 * (1 + ls): pi1 from first-passage
// probabilities with the target absorbing, ls the source-independent series
// sum_{t>=1} (1-alpha)^t [P^t e_target]_target.
FirstHitDecomposition first_hit_decomposition(const Graph &g, Vertex source,
                                              Vertex target, double alpha);

} // namespace pprgm
