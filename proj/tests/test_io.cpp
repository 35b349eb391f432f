#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pprgm/io.hpp"

using namespace pprgm;

TEST_CASE("seeds round trip") {
    SeedSet seeds;
    seeds.pairs = {{3, 3}, {7, 9}, {1, 0}};
    std::ostringstream out;
    save_seeds(seeds, out);
    CHECK(out.str() == "3\t3\n7\t9\n1\t0\n");
    std::istringstream in(out.str());
    SeedSet back = load_seeds(in);
    REQUIRE(back.pairs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(back.pairs[i] == seeds.pairs[i]);
}

TEST_CASE("truth file lists identity pairs of shared vertices") {
    GroundTruth t;
    t.present_in_both = {1, 0, 1, 1};
    std::ostringstream out;
    save_truth(t, out);
    CHECK(out.str() == "0\t0\n2\t2\n3\t3\n");
    std::istringstream in(out.str());
    GroundTruth back = load_truth(in, 4);
    CHECK(back.present_in_both == t.present_in_both);
}

TEST_CASE("matches round trip with exact scores") {
    MatchResult res;
    res.matches.push_back({{0, 0}, 2.5, 0, Provenance::Seed});
    res.matches.push_back({{4, 7}, 1.0 / 3.0, 3, Provenance::Matched});
    std::ostringstream out;
    save_matches(res, out);
    std::istringstream in(out.str());
    MatchResult back = load_matches(in);
    REQUIRE(back.matches.size() == 2);
    CHECK(back.matches[0].provenance == Provenance::Seed);
    CHECK(back.matches[1].pair == VertexPair{4, 7});
    CHECK(back.matches[1].score == 1.0 / 3.0); // %.17g survives the round trip
    CHECK(back.matches[1].round == 3);
}

TEST_CASE("malformed rows are rejected") {
    std::istringstream bad_seed("1\n");
    CHECK_THROWS_AS(static_cast<void>(load_seeds(bad_seed)), std::runtime_error);
    std::istringstream bad_truth("1\t2\n");
    CHECK_THROWS_AS(static_cast<void>(load_truth(bad_truth, 4)), std::runtime_error);
    std::istringstream bad_match("1\t2\t0.5\t1\tnonsense\n");
    CHECK_THROWS_AS(static_cast<void>(load_matches(bad_match)), std::runtime_error);
}

TEST_CASE("stats report carries the deterministic counters") {
    MatchResult res;
    res.matches.push_back({{0, 0}, 1.0, 0, Provenance::Seed});
    res.matches.push_back({{1, 1}, 2.0, 1, Provenance::Matched});
    res.stats.rounds = 5;
    res.stats.relaxations = 2;
    res.stats.candidates_created = 42;
    res.stats.pushes = 99;
    res.stats.wall_ms = 123.456; // must not appear in the file
    std::ostringstream out;
    save_stats(res, out);
    CHECK(out.str() ==
          "matches=1\nseeds=1\nrounds=5\nrelaxations=2\ncandidates=42\npushes=99\n");
}
