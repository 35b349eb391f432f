#pragma once

#include <cstdint>
#include <vector>

#include "pprgm/graph.hpp"

namespace pprgm {

struct Lemma1Params {
    std::uint32_t n = 2000;
    double p = 0.002;
    double p_n = 1.0;
    double p_e = 0.9;
    std::uint32_t n_c = 40; // correct pairs planted in the matched set
    std::uint32_t n_w = 0;  // wrong pairs planted in the matched set
    std::uint64_t trials = 100000;
    std::uint64_t rng_seed = 1;
    int threads = 1;
};

// One percolation round over the planted matched set, under the simplified
// order-1 setting: plain rule "marks >= 2", postponed rule "marks >= 2 and
// above every adversary candidate by >= 1". Four scenarios: a designated
// wrong pair and a designated correct pair, each under both rules.
struct Lemma1Report {
    Lemma1Params params;

    // closed-form per-pair probabilities
    double ana_wrong_plain = 0;
    double ana_wrong_post = 0;
    double ana_correct_plain = 0;
    double ana_correct_post = 0;
    bool formula_out_of_range = false; // asymptotic forms can leave [0,1]

    // designated-pair protocol: one uniformly chosen pair per trial
    std::uint64_t des_wrong_plain = 0;
    std::uint64_t des_wrong_post = 0;
    std::uint64_t des_correct_plain = 0;
    std::uint64_t des_correct_post = 0;

    // whole-map counts: every eligible pair matched under each rule, summed
    // over trials; the with/without ratio estimator for rare events
    std::uint64_t all_wrong_plain = 0;
    std::uint64_t all_wrong_post = 0;
    std::uint64_t all_correct_plain = 0;
    std::uint64_t all_correct_post = 0;

    double emp(std::uint64_t count) const {
        return static_cast<double>(count) / static_cast<double>(params.trials);
    }
    // z-score of a designated-pair count against a closed form, using the
    // binomial standard error at the analytical rate
    double z(std::uint64_t count, double analytical) const;
};

Lemma1Report validate_lemma1(const Lemma1Params &params);

struct DistanceSignatures {
    // dist[v][k] = BFS distance from seed k to v; UINT32_MAX if unreachable
    std::vector<std::vector<std::uint32_t>> dist;
    std::vector<Vertex> giant; // vertices of the largest connected component
    bool unique_in_giant = false;
};

DistanceSignatures distance_signatures(const Graph &g, const std::vector<Vertex> &seeds);

// Repeated Lemma-2 experiment: ER(n, avg_degree/n), seed count
// ceil(log(n^3)/log(c*np/(c*np-1))), uniqueness of distance signatures
// within the giant component.
struct SignatureExperiment {
    std::uint32_t seed_count = 0;
    std::uint32_t successes = 0;
    std::uint32_t trials = 0;
};

SignatureExperiment check_signature_uniqueness(std::uint32_t n, double avg_degree,
                                               double c, std::uint32_t trials,
                                               std::uint64_t rng_seed);

struct DiscriminationCheck {
    bool distinguishable = false; // the two step-probability vectors differ
    std::uint32_t collisions = 0; // draws where the truncated PPR values met
    std::uint32_t draws = 0;
};

// Draws alpha uniformly and counts |pi^L(s,u) - pi^L(s,v)| < 1e-12 events.
// Reports indistinguishable instead when (q^(1)..q^(L)) agree for u and v.
DiscriminationCheck discrimination_check(const Graph &g, Vertex s, Vertex u, Vertex v,
                                         std::uint32_t steps, std::uint32_t alpha_draws,
                                         std::uint64_t rng_seed);

} // namespace pprgm
