#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "pprgm/matcher.hpp"
#include "pprgm/metrics.hpp"
#include "pprgm/rng.hpp"

using namespace pprgm;

namespace {

SeedSet identity_seeds(std::initializer_list<Vertex> vs) {
    SeedSet s;
    for (Vertex v : vs)
        s.pairs.push_back({v, v});
    s.correct_count = static_cast<std::uint32_t>(s.pairs.size());
    return s;
}

MatcherState make_state(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                        double alpha, double r_max, double sigma, double r_prime) {
    return MatcherState{g1,
                        g2,
                        SeedLabelStore::build(g1, g2, seeds, {alpha, r_max}),
                        {},
                        std::vector<char>(g1.vertex_count(), 0),
                        std::vector<char>(g2.vertex_count(), 0),
                        alpha,
                        sigma,
                        r_prime};
}

std::map<VertexPair, double> snapshot(const CandidateSet &c) {
    std::map<VertexPair, double> out;
    c.for_each([&](VertexPair p, double s) { out[p] = s; });
    return out;
}

} // namespace

TEST_CASE("is_strong") {
    CandidateSet c;
    MatchCriteria crit;
    crit.beta = 1.0;
    crit.gamma = 2.0;

    SUBCASE("no adversaries, score just above gamma") {
        c.insert({0, 0}, 2.001);
        CHECK(is_strong({0, 0}, 2.001, c, crit));
    }
    SUBCASE("score exactly gamma fails the strict test") {
        c.insert({0, 0}, 2.0);
        CHECK_FALSE(is_strong({0, 0}, 2.0, c, crit));
    }
    SUBCASE("adversary at the (1+beta) boundary blocks") {
        c.insert({0, 0}, 3.0);
        c.insert({0, 5}, 1.5); // (1+1) * 1.5 == 3.0 exactly
        CHECK_FALSE(is_strong({0, 0}, 3.0, c, crit));
        c.add_to_score({0, 0}, 1e-9);
        CHECK(is_strong({0, 0}, c.score({0, 0}), c, crit));
    }
    SUBCASE("adversaries on both sides are considered") {
        c.insert({0, 0}, 3.0);
        c.insert({7, 0}, 0.1);
        CHECK(is_strong({0, 0}, 3.0, c, crit));
        c.insert({0, 9}, 2.9);
        CHECK_FALSE(is_strong({0, 0}, 3.0, c, crit));
    }
}

TEST_CASE("candidate set bookkeeping") {
    CandidateSet c;
    c.insert({1, 2}, 1.0);
    c.insert({1, 3}, 2.0);
    c.insert({4, 2}, 3.0);
    c.insert({5, 6}, 4.0);
    c.audit();
    CHECK(c.size() == 4);
    CHECK(c.max_adversary_score({1, 2}) == 3.0);
    CHECK(c.max_adversary_score({5, 6}) == -1.0);

    c.remove_with_endpoints({1, 2});
    c.audit();
    CHECK(c.size() == 1);
    CHECK(c.contains({5, 6}));
    CHECK_FALSE(c.contains({1, 3}));
    CHECK_FALSE(c.contains({4, 2}));

    c.add_to_score({5, 6}, 0.5);
    CHECK(c.score({5, 6}) == 4.5);
}

TEST_CASE("expand_ne") {
    SUBCASE("degree-1 endpoints touch exactly one pair") {
        Graph g = Graph::from_edges(2, {{0, 1}});
        auto st = make_state(g, g, identity_seeds({0}), 0.3, 1e-6, 0.01, 0.1);
        st.matched1[0] = st.matched2[0] = 1;
        expand_ne({0, 0}, st);
        auto snap = snapshot(st.cands);
        REQUIRE(snap.size() == 1);
        double expect = pair_term(0.3 * 0.7, 0.3 * 0.7, 0.01);
        CHECK(snap.at({1, 1}) ==
              doctest::Approx(basic_score(1, 1, st.labels, 0.01) + expect)
                  .epsilon(1e-14));
    }
    SUBCASE("star centers of degree 3 and 2 create six pairs") {
        Graph s3 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
        Graph s2 = Graph::from_edges(3, {{0, 1}, {0, 2}});
        auto st = make_state(s3, s2, {{{0, 0}}, 1, 0}, 0.3, 1e-6, 0.0, 0.1);
        st.matched1[0] = st.matched2[0] = 1;
        expand_ne({0, 0}, st);
        auto snap = snapshot(st.cands);
        CHECK(snap.size() == 6);
        CHECK(st.candidates_created == 6);
        double inc = ne_increment(3, 2, 0.3, 0.0);
        for (const auto &[p, s] : snap)
            CHECK(s == doctest::Approx(basic_score(p.left, p.right, st.labels, 0.0) +
                                       inc)
                           .epsilon(1e-14));
    }
    SUBCASE("matched neighbors are skipped") {
        Graph s3 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
        auto st = make_state(s3, s3, identity_seeds({0}), 0.3, 1e-6, 0.0, 0.1);
        st.matched1[0] = st.matched2[0] = 1;
        st.matched1[2] = 1; // row 2 disappears from the product
        st.matched2[3] = 1; // column 3 disappears
        expand_ne({0, 0}, st);
        auto snap = snapshot(st.cands);
        CHECK(snap.size() == 4); // {1,3} x {1,2}
        CHECK_FALSE(st.cands.contains({2, 1}));
        CHECK_FALSE(st.cands.contains({1, 3}));
    }
}

TEST_CASE("expand_hoe") {
    SUBCASE("two-level push range reproduces NE exactly") {
        // r' chosen so the center and each leaf push exactly once per side
        Graph s3 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
        Graph s4 = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
        const double r_prime = 0.17;

        auto st_ne = make_state(s3, s4, {{{0, 0}}, 1, 0}, 0.3, 1e-6, 0.002, r_prime);
        st_ne.matched1[0] = st_ne.matched2[0] = 1;
        expand_ne({0, 0}, st_ne);

        auto st_hoe = make_state(s3, s4, {{{0, 0}}, 1, 0}, 0.3, 1e-6, 0.002, r_prime);
        st_hoe.matched1[0] = st_hoe.matched2[0] = 1;
        expand_hoe({0, 0}, st_hoe);

        auto a = snapshot(st_ne.cands), b = snapshot(st_hoe.cands);
        REQUIRE(a.size() == b.size());
        for (const auto &[p, s] : a) {
            REQUIRE(b.count(p) == 1);
            CHECK(b.at(p) == s); // bit-exact: same labels, same increment
        }
    }
    SUBCASE("small r' covers at least the neighboring pairs") {
        Graph g = gen_er(40, 0.1, 21);
        Vertex c = 0;
        while (g.degree(c) == 0)
            ++c;
        auto st_ne = make_state(g, g, identity_seeds({c}), 0.3, 1e-6, 0.0, 1e-5);
        st_ne.matched1[c] = st_ne.matched2[c] = 1;
        expand_ne({c, c}, st_ne);
        auto st_hoe = make_state(g, g, identity_seeds({c}), 0.3, 1e-6, 0.0, 1e-5);
        st_hoe.matched1[c] = st_hoe.matched2[c] = 1;
        expand_hoe({c, c}, st_hoe);
        auto ne_pairs = snapshot(st_ne.cands);
        for (const auto &[p, s] : ne_pairs)
            CHECK(st_hoe.cands.contains(p));
        CHECK(st_hoe.cands.size() >= ne_pairs.size());
    }
    SUBCASE("push support reaches past distance one on a path") {
        Graph path =
            Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
        PushResult pr = forward_push(path, 0, {0.3, 1e-4});
        bool beyond = false;
        for (const auto &[v, x] : pr.reserves)
            if (v >= 2)
                beyond = true;
        CHECK(beyond);
    }
}

TEST_CASE("run_pprgm seed validation") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    MatchConfig cfg;
    CHECK_THROWS_AS(static_cast<void>(run_pprgm(g, g, {}, cfg)), std::invalid_argument);

    SeedSet dup;
    dup.pairs = {{0, 0}, {0, 1}};
    CHECK_THROWS_WITH_AS(static_cast<void>(run_pprgm(g, g, dup, cfg)),
                         doctest::Contains("duplicate"), std::invalid_argument);

    Graph with_iso = Graph::from_edges(3, {{0, 1}});
    SeedSet iso = identity_seeds({2});
    CHECK_THROWS_WITH_AS(static_cast<void>(run_pprgm(with_iso, with_iso, iso, cfg)),
                         doctest::Contains("degree 0"), std::invalid_argument);
}

TEST_CASE("identical triangles with one seed never match a wrong pair") {
    Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    for (Expansion exp : {Expansion::NE, Expansion::HOE}) {
        MatchConfig cfg;
        cfg.expansion = exp;
        cfg.sigma = 0.0;
        cfg.r_max = 1e-6;
        MatchResult res = run_pprgm(k3, k3, identity_seeds({0}), cfg);
        for (const auto &m : res.matches)
            CHECK(m.pair.left == m.pair.right);
    }
}

TEST_CASE("isolated seed components leave the candidate set empty") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    SeedSet seeds = identity_seeds({0, 1, 2, 3});
    MatchConfig cfg;
    cfg.expansion = Expansion::NE;
    MatchResult res = run_pprgm(g, g, seeds, cfg);
    REQUIRE(res.matches.size() == 4);
    for (const auto &m : res.matches)
        CHECK(m.provenance == Provenance::Seed);
    CHECK(res.stats.candidates_created == 0);
    CHECK(res.stats.relaxations >= 7); // the full beta ladder ran dry
}

TEST_CASE("isomorphic ER graphs are matched with full precision") {
    Graph base = gen_er(500, 8.0 / 500, 404);
    CorrelatedPair cp = sample_correlated(base, 1.0, 1.0, 404);
    SeedSet seeds = sample_seeds(cp, 10, 0, 1, 404);
    for (Expansion exp : {Expansion::NE, Expansion::HOE}) {
        MatchConfig cfg;
        cfg.expansion = exp;
        MatchResult res = run_pprgm(cp.g1, cp.g2, seeds, cfg);
        EvalReport rep = evaluate(res, cp);
        CHECK(rep.n_wrong == 0);
        CHECK(rep.n_correct > 0);
        CHECK(rep.precision == 1.0);
    }
}

TEST_CASE("matching is injective and deterministic") {
    Graph base = gen_er(300, 7.0 / 300, 11);
    CorrelatedPair cp = sample_correlated(base, 1.0, 0.85, 11);
    SeedSet seeds = sample_seeds(cp, 8, 2, 1, 11);
    MatchConfig cfg;
    cfg.expansion = Expansion::HOE;
    MatchResult a = run_pprgm(cp.g1, cp.g2, seeds, cfg);
    MatchResult b = run_pprgm(cp.g1, cp.g2, seeds, cfg);

    REQUIRE(a.matches.size() == b.matches.size());
    for (std::size_t i = 0; i < a.matches.size(); ++i) {
        CHECK(a.matches[i].pair == b.matches[i].pair);
        CHECK(a.matches[i].score == b.matches[i].score);
        CHECK(a.matches[i].round == b.matches[i].round);
    }
    CHECK(a.stats.candidates_created == b.stats.candidates_created);

    std::set<Vertex> lefts, rights;
    for (const auto &m : a.matches) {
        CHECK(lefts.insert(m.pair.left).second);
        CHECK(rights.insert(m.pair.right).second);
    }
}

TEST_CASE("label store builds identically across thread counts") {
    Graph base = gen_er(400, 6.0 / 400, 5);
    CorrelatedPair cp = sample_correlated(base, 1.0, 0.9, 5);
    SeedSet seeds = sample_seeds(cp, 12, 0, 1, 5);
    SeedLabelStore one = SeedLabelStore::build(cp.g1, cp.g2, seeds, {0.3, 1e-3}, 1);
    SeedLabelStore four = SeedLabelStore::build(cp.g1, cp.g2, seeds, {0.3, 1e-3}, 4);
    for (Vertex v = 0; v < cp.g1.vertex_count(); ++v) {
        const auto &a = one.left_labels(v), &b = four.left_labels(v);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].seed_index == b[i].seed_index);
            CHECK(a[i].value == b[i].value);
        }
    }
}

TEST_CASE("baseline percolation") {
    Graph k3 = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    SUBCASE("third pair of the triangle gets two marks and matches") {
        MatchResult res = run_baseline_pgm(k3, k3, identity_seeds({0, 1}), 2);
        REQUIRE(res.matches.size() == 3);
        CHECK(res.matches[2].pair == VertexPair{2, 2});
        CHECK(res.matches[2].score == 2.0);
        CHECK(res.matches[2].provenance == Provenance::Matched);
    }
    SUBCASE("threshold above any possible marks leaves only seeds") {
        MatchResult res = run_baseline_pgm(k3, k3, identity_seeds({0, 1}), 10);
        CHECK(res.matches.size() == 2);
    }
}

TEST_CASE("order-1 marks mislead the baseline but not the full matcher") {
    auto fx = fixtures::misled_local_instance();

    auto marks_of = [&](VertexPair p) {
        int m = 0;
        for (const auto &s : fx.seeds.pairs)
            if (fx.g1.has_edge(s.left, p.left) && fx.g2.has_edge(s.right, p.right))
                ++m;
        return m;
    };
    CHECK(marks_of(fx.wrong) == 3);
    CHECK(marks_of(fx.right_a) == 2);
    CHECK(marks_of(fx.right_b) == 2);

    MatchResult base = run_baseline_pgm(fx.g1, fx.g2, fx.seeds, 2);
    bool base_wrong = false;
    for (const auto &m : base.matches)
        base_wrong |= m.pair == fx.wrong;
    CHECK(base_wrong);

    // high-order expansion reverses the misleading order-1 ranking at the
    // default r'_max and below; at much coarser r'_max the expansion
    // degenerates to neighbor marks and the reversal is lost
    for (double r_prime : {1e-3, 1e-4}) {
        MatchConfig cfg;
        cfg.alpha = 0.3;
        cfg.r_prime_max = r_prime;
        MatchResult res = run_pprgm(fx.g1, fx.g2, fx.seeds, cfg);
        bool got_a = false, got_b = false, got_wrong = false;
        for (const auto &m : res.matches) {
            got_a |= m.pair == fx.right_a;
            got_b |= m.pair == fx.right_b;
            got_wrong |= m.pair == fx.wrong;
        }
        CHECK(got_a);
        CHECK(got_b);
        CHECK_FALSE(got_wrong);
    }
}

TEST_CASE("postponing does not hurt precision on sampled pairs") {
    for (double pe : {0.8, 0.9}) {
        double with_post = 0, without_post = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Graph base = gen_er(300, 8.0 / 300, seed);
            CorrelatedPair cp = sample_correlated(base, 1.0, pe, seed);
            SeedSet seeds = sample_seeds(cp, 10, 0, 1, seed);
            MatchConfig strict;
            strict.expansion = Expansion::HOE;
            MatchConfig floors = strict;
            floors.beta0 = 1.0 / 128.0;
            floors.gamma0 = 1.0;
            with_post += evaluate(run_pprgm(cp.g1, cp.g2, seeds, strict), cp).precision;
            without_post +=
                evaluate(run_pprgm(cp.g1, cp.g2, seeds, floors), cp).precision;
        }
        CHECK(with_post >= without_post);
    }
}
