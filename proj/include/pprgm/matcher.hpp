#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pprgm/graph.hpp"
#include "pprgm/ppr.hpp"
#include "pprgm/random_model.hpp"
#include "pprgm/scoring.hpp"

namespace pprgm {

enum class Expansion { NE, HOE };

// Postponing criteria. A candidate is matched only while it is strong:
// score strictly above gamma and strictly above (1+beta) times the score of
// every adversary candidate sharing one of its endpoints. When a round
// matches nothing, beta halves and gamma moves to (gamma+1)/2, down to the
// floors.
struct MatchCriteria {
    double beta = 1.0;
    double gamma = 1.0;
    double beta_floor = 1.0 / 128.0;
    double gamma_floor = 1.0;
};

struct MatchConfig {
    Expansion expansion = Expansion::HOE;
    double alpha = 0.3;
    std::optional<double> r_max;   // default: |S| / (2 * max(|V1|,|V2|))
    double r_prime_max = 1e-3;
    std::optional<double> sigma;   // default: 10 * r_max
    std::optional<double> beta0;   // default: 1
    std::optional<double> gamma0;  // default: |S| / 2
    double beta_floor = 1.0 / 128.0;
    double gamma_floor = 1.0;
    int threads = 1;
};

enum class Provenance { Seed, Matched };

struct MatchedPair {
    VertexPair pair;
    double score = 0;
    std::uint32_t round = 0;
    Provenance provenance = Provenance::Matched;
};

struct MatchStats {
    std::uint32_t rounds = 0;
    std::uint32_t relaxations = 0;
    std::uint64_t candidates_created = 0;
    std::uint64_t pushes = 0;
    double wall_ms = 0;
};

struct MatchResult {
    std::vector<MatchedPair> matches; // seeds first, then matches in order
    MatchStats stats;
};

// Scored cross-graph pairs under consideration, indexed by both endpoints so
// the adversaries of a pair ({u} x V2 and V1 x {v} within the set) can be
// enumerated and removed when a pair is matched.
class CandidateSet {
  public:
    bool contains(VertexPair p) const { return entries_.count(key(p)) != 0; }
    std::size_t size() const { return entries_.size(); }
    double score(VertexPair p) const { return entries_.at(key(p)); }

    // Inserts with the given initial score if absent; returns true when new.
    bool insert(VertexPair p, double score);
    void add_to_score(VertexPair p, double inc);

    // Removes every pair sharing p.left or p.right, including p itself.
    void remove_with_endpoints(VertexPair p);

    double max_adversary_score(VertexPair p) const;

    template <typename F> void for_each(F &&f) const {
        for (const auto &[k, s] : entries_)
            f(unkey(k), s);
    }

    // Full consistency audit of entries vs. both indices; throws on breakage.
    void audit() const;

  private:
    static std::uint64_t key(VertexPair p) {
        return (static_cast<std::uint64_t>(p.left) << 32) | p.right;
    }
    static VertexPair unkey(std::uint64_t k) {
        return {static_cast<Vertex>(k >> 32), static_cast<Vertex>(k & 0xffffffffULL)};
    }

    std::unordered_map<std::uint64_t, double> entries_;
    std::unordered_map<Vertex, std::unordered_set<Vertex>> by_left_, by_right_;
};

// Strong-pair test: score > gamma and score > (1+beta) * score(a) for every
// adversary a of the pair currently in the candidate set.
bool is_strong(VertexPair pair, double score, const CandidateSet &cands,
               const MatchCriteria &criteria);

// Mutable state of one PPRGM run, shared by the expansion procedures.
struct MatcherState {
    const Graph &g1;
    const Graph &g2;
    SeedLabelStore labels;
    CandidateSet cands;
    std::vector<char> matched1, matched2;
    double alpha = 0.3;
    double sigma = 0;
    double r_prime_max = 1e-3;
    std::uint64_t pushes = 0;
    std::uint64_t candidates_created = 0;

    // Inserts with the lazily computed seed-based score when absent, then
    // applies the increment.
    void upsert_candidate(VertexPair p, double increment);
    bool insert_lazy(VertexPair p);
};

// Neighbor-Expansion: credit every neighboring pair of the matched pair with
// the degree-based one-step increment.
void expand_ne(VertexPair matched, MatcherState &state);

// High-Order-Expansion: Forward-Push from both endpoints at r_prime_max and
// credit the cross product of the two heavy-hitter sets.
void expand_hoe(VertexPair matched, MatcherState &state);

MatchResult run_pprgm(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                      const MatchConfig &config);

// Classic percolation baseline: every unused matched pair spreads one mark
// to each neighboring pair; candidates reaching `threshold` marks with free
// endpoints are matched in descending mark order.
MatchResult run_baseline_pgm(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                             std::uint32_t threshold);

} // namespace pprgm
