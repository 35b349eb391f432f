#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "pprgm/analysis.hpp"
#include "pprgm/rng.hpp"
#include "pprgm/random_model.hpp"

using namespace pprgm;

TEST_CASE("distance signatures on the two-edge path") {
    Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
    auto sig = distance_signatures(g, {0, 2});
    REQUIRE(sig.dist.size() == 3);
    CHECK(sig.dist[0] == std::vector<std::uint32_t>{0, 2});
    CHECK(sig.dist[1] == std::vector<std::uint32_t>{1, 1});
    CHECK(sig.dist[2] == std::vector<std::uint32_t>{2, 0});
    CHECK(sig.unique_in_giant);
    CHECK(sig.giant.size() == 3);
}

TEST_CASE("a single seed cannot separate an even cycle") {
    Graph c6 = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto sig = distance_signatures(c6, {0});
    CHECK_FALSE(sig.unique_in_giant); // mirror vertices share every distance
    CHECK(sig.dist[1] == sig.dist[5]);
}

TEST_CASE("unreachable vertices carry the infinity sentinel") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    auto sig = distance_signatures(g, {0});
    CHECK(sig.dist[2][0] == UINT32_MAX);
    CHECK(sig.giant.size() == 2);
}

TEST_CASE("seed-count formula follows the lemma expression") {
    double expect = std::ceil(std::log(std::pow(300.0, 3)) / std::log(8.0 / 7.0));
    SignatureExperiment exp = check_signature_uniqueness(300, 4.0, 2.0, 1, 7);
    CHECK(exp.seed_count == static_cast<std::uint32_t>(expect));
}

TEST_CASE("signatures separate every vertex once the graph is twin-free") {
    // at np=10 degree-1 twins are essentially extinct and the formula's seed
    // count separates everything
    SignatureExperiment exp = check_signature_uniqueness(2000, 10.0, 2.0, 5, 8);
    CHECK(exp.successes == exp.trials);
}

TEST_CASE("sparse-model collisions are distance-twin classes") {
    // at np = 4 a graph carries a few leaf twins; any two vertices whose
    // neighborhoods coincide (ignoring one another) defeat every seed set
    // that misses them, so uniqueness fails through exactly such classes
    for (int t = 0; t < 3; ++t) {
        Rng rng = Rng::substream(808, t);
        Graph g = gen_er(1000, 4.0 / 1000, rng.next());
        std::vector<Vertex> ids(1000);
        for (Vertex v = 0; v < 1000; ++v)
            ids[v] = v;
        std::vector<Vertex> seeds;
        for (std::uint32_t k = 0; k < 156; ++k) {
            std::size_t j = k + rng.next_below(1000 - k);
            std::swap(ids[k], ids[j]);
            seeds.push_back(ids[k]);
        }
        auto sig = distance_signatures(g, seeds);
        if (sig.unique_in_giant)
            continue;
        std::map<std::vector<std::uint32_t>, std::vector<Vertex>> groups;
        for (Vertex v : sig.giant)
            groups[sig.dist[v]].push_back(v);
        std::size_t classes = 0;
        for (const auto &[key, vs] : groups) {
            if (vs.size() < 2)
                continue;
            ++classes;
            // certificate that no seed choice outside the class could have
            // separated the pair: every other giant vertex is equidistant
            // from both members
            auto direct = distance_signatures(g, {vs[0], vs[1]});
            for (Vertex w : sig.giant)
                if (w != vs[0] && w != vs[1])
                    CHECK(direct.dist[w][0] == direct.dist[w][1]);
        }
        CHECK(classes > 0);
    }
}

TEST_CASE("discrimination check") {
    SUBCASE("identical vertices are indistinguishable") {
        Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
        auto res = discrimination_check(g, 0, 1, 1, 3, 50, 9);
        CHECK_FALSE(res.distinguishable);
    }
    SUBCASE("distinct walk vectors never collide over random alphas") {
        Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
        auto res = discrimination_check(g, 0, 1, 2, 3, 100, 9);
        CHECK(res.distinguishable);
        CHECK(res.draws == 100);
        CHECK(res.collisions == 0);
    }
    SUBCASE("even-cycle mirror vertices are indistinguishable at every order") {
        Graph c6 =
            Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
        for (std::uint32_t L : {1u, 2u, 5u, 12u}) {
            auto res = discrimination_check(c6, 0, 1, 5, L, 20, 3);
            CHECK_FALSE(res.distinguishable);
        }
    }
}

TEST_CASE("lemma1 degenerate parameters") {
    SUBCASE("p = 0 gives zero everywhere") {
        Lemma1Params P;
        P.n = 200;
        P.p = 0.0;
        P.n_c = 10;
        P.trials = 200;
        Lemma1Report rep = validate_lemma1(P);
        CHECK(rep.ana_wrong_plain == 0.0);
        CHECK(rep.ana_correct_plain == 0.0);
        CHECK(rep.des_wrong_plain == 0);
        CHECK(rep.des_correct_plain == 0);
        CHECK(rep.all_wrong_plain == 0);
    }
    SUBCASE("pe = pn = 1 with correct seeds forbids postponed wrong matches") {
        Lemma1Params P;
        P.n = 400;
        P.p = 8.0 / 400; // dense enough that wrong pairs do get marks
        P.p_e = 1.0;
        P.p_n = 1.0;
        P.n_c = 30;
        P.n_w = 0;
        P.trials = 3000;
        Lemma1Report rep = validate_lemma1(P);
        CHECK(rep.ana_wrong_post == doctest::Approx(0.0).epsilon(1e-18));
        CHECK(rep.all_wrong_plain > 0); // the plain rule does make wrong matches
        CHECK(rep.all_wrong_post == 0); // postponing vetoes every one of them
        CHECK(rep.des_wrong_post == 0);
    }
}

TEST_CASE("lemma1 designated correct pair matches the binomial oracle") {
    // independent oracle: marks ~ Binomial(n_c, p * pe^2), P(marks >= 2)
    Lemma1Params P;
    P.n = 2000;
    P.p = 4.0 / 2000;
    P.p_e = 0.9;
    P.p_n = 1.0;
    P.n_c = 40;
    P.n_w = 0;
    P.trials = 60000;
    P.threads = 4;
    Lemma1Report rep = validate_lemma1(P);

    const double x = P.p * P.p_e * P.p_e;
    const double oracle = 1.0 - std::pow(1.0 - x, 40) - 40 * x * std::pow(1.0 - x, 39);
    const double se = std::sqrt(oracle * (1 - oracle) / static_cast<double>(P.trials));
    CHECK(std::abs(rep.emp(rep.des_correct_plain) - oracle) <= 4 * se);

    // wrong-pair veto strength: the true one-round survival under postponing
    // is about (1-pe^2)^2 (each correct counterpart re-marks through an
    // already-present base edge with probability pe per mark), well below
    // the lemma's unconditioned (1-pe^4)^2; assert the directional claim
    // that postponing cuts wrong matches by at least 10x
    REQUIRE(rep.all_wrong_plain > 200);
    double ratio = static_cast<double>(rep.all_wrong_post) /
                   static_cast<double>(rep.all_wrong_plain);
    CHECK(ratio < 0.1);
    const double cond = std::pow(1.0 - P.p_e * P.p_e, 2);
    CHECK(ratio > cond / 4);
    CHECK(ratio < cond * 4);
}

namespace {

// Full-model reference: one percolation round over graphs materialized with
// the random-model module, independent of the localized trial sampler.
struct BruteCounts {
    std::uint64_t wrong_plain = 0, wrong_post = 0;
    std::uint64_t correct_plain = 0, correct_post = 0;
};

BruteCounts brute_force_round(const Lemma1Params &P, std::uint64_t trial) {
    Rng rng = Rng::substream(P.rng_seed ^ 0xb10cULL, trial);
    Graph base = gen_er(P.n, P.p, rng.next());
    CorrelatedPair cp = sample_correlated(base, P.p_n, P.p_e, rng.next());

    std::vector<char> used_l(P.n, 0), used_r(P.n, 0);
    std::vector<VertexPair> planted;
    while (planted.size() < P.n_c) {
        Vertex v = static_cast<Vertex>(rng.next_below(P.n));
        if (used_l[v] || used_r[v] || !cp.present_in_both(v))
            continue;
        used_l[v] = used_r[v] = 1;
        planted.push_back({v, v});
    }
    while (planted.size() < static_cast<std::size_t>(P.n_c) + P.n_w) {
        Vertex a = static_cast<Vertex>(rng.next_below(P.n));
        Vertex b = static_cast<Vertex>(rng.next_below(P.n));
        if (a == b || used_l[a] || used_r[b] || !cp.kept1[a] || !cp.kept2[b])
            continue;
        used_l[a] = 1;
        used_r[b] = 1;
        planted.push_back({a, b});
    }

    std::unordered_map<std::uint64_t, std::uint32_t> marks;
    for (const auto &pr : planted)
        for (Vertex x : cp.g1.neighbors(pr.left))
            for (Vertex y : cp.g2.neighbors(pr.right))
                ++marks[(static_cast<std::uint64_t>(x) << 32) | y];

    BruteCounts out;
    for (const auto &[k, m] : marks) {
        if (m < 2)
            continue;
        Vertex x = static_cast<Vertex>(k >> 32), y = static_cast<Vertex>(k & 0xffffffffu);
        if (used_l[x] || used_r[y])
            continue;
        std::uint32_t adv = 0;
        for (const auto &[k2, m2] : marks) {
            Vertex a = static_cast<Vertex>(k2 >> 32),
                   b = static_cast<Vertex>(k2 & 0xffffffffu);
            if (used_l[a] || used_r[b] || k2 == k)
                continue;
            if (a == x || b == y)
                adv = std::max(adv, m2);
        }
        bool post = m > adv;
        if (x == y && cp.present_in_both(x)) {
            ++out.correct_plain;
            out.correct_post += post;
        } else {
            ++out.wrong_plain;
            out.wrong_post += post;
        }
    }
    return out;
}

} // namespace

TEST_CASE("localized trial sampler agrees with the full-model reference") {
    Lemma1Params P;
    P.n = 500;
    P.p = 4.0 / 500;
    P.p_e = 0.85;
    P.p_n = 0.95; // exercise the vertex-sampling path too
    P.n_c = 30;
    P.n_w = 4;
    P.trials = 6000;
    P.threads = 4;
    P.rng_seed = 21;
    Lemma1Report rep = validate_lemma1(P);

    BruteCounts bf;
    for (std::uint64_t t = 0; t < P.trials; ++t) {
        BruteCounts one = brute_force_round(P, t);
        bf.wrong_plain += one.wrong_plain;
        bf.wrong_post += one.wrong_post;
        bf.correct_plain += one.correct_plain;
        bf.correct_post += one.correct_post;
    }

    // per-trial event rates from the two routes agree within Poisson noise
    auto close = [&](std::uint64_t a, std::uint64_t b) {
        double ra = static_cast<double>(a), rb = static_cast<double>(b);
        double tol = 5.0 * std::sqrt(ra + rb + 1.0);
        CHECK(std::abs(ra - rb) <= tol);
    };
    close(rep.all_wrong_plain, bf.wrong_plain);
    close(rep.all_wrong_post, bf.wrong_post);
    close(rep.all_correct_plain, bf.correct_plain);
    close(rep.all_correct_post, bf.correct_post);
}

TEST_CASE("lemma1 is deterministic and thread-count independent") {
    Lemma1Params P;
    P.n = 500;
    P.p = 4.0 / 500;
    P.p_e = 0.8;
    P.n_c = 20;
    P.n_w = 5;
    P.trials = 2000;
    Lemma1Report a = validate_lemma1(P);
    P.threads = 4;
    Lemma1Report b = validate_lemma1(P);
    CHECK(a.des_correct_plain == b.des_correct_plain);
    CHECK(a.all_wrong_plain == b.all_wrong_plain);
    CHECK(a.all_correct_post == b.all_correct_post);
}
