#include "pprgm/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pprgm {

namespace {

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return in;
}

} // namespace

std::string format_score(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_seeds(const SeedSet &seeds, std::ostream &out) {
    for (const auto &p : seeds.pairs)
        out << p.left << '\t' << p.right << '\n';
}

SeedSet load_seeds(std::istream &in) {
    SeedSet seeds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        VertexPair p;
        if (!(ls >> p.left >> p.right))
            throw std::runtime_error("seeds line " + std::to_string(line_no) +
                                     ": expected two vertex ids");
        seeds.pairs.push_back(p);
    }
    return seeds;
}

void save_truth(const GroundTruth &truth, std::ostream &out) {
    for (std::size_t v = 0; v < truth.present_in_both.size(); ++v)
        if (truth.present_in_both[v])
            out << v << '\t' << v << '\n';
}

GroundTruth load_truth(std::istream &in, std::size_t id_space) {
    GroundTruth t;
    t.present_in_both.assign(id_space, 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        Vertex a, b;
        if (!(ls >> a >> b) || a != b)
            throw std::runtime_error("truth line " + std::to_string(line_no) +
                                     ": expected an identity pair");
        if (a >= t.present_in_both.size())
            t.present_in_both.resize(a + 1, 0);
        t.present_in_both[a] = 1;
    }
    return t;
}

void save_matches(const MatchResult &result, std::ostream &out) {
    for (const auto &m : result.matches)
        out << m.pair.left << '\t' << m.pair.right << '\t' << format_score(m.score)
            << '\t' << m.round << '\t'
            << (m.provenance == Provenance::Seed ? "seed" : "matched") << '\n';
}

MatchResult load_matches(std::istream &in) {
    MatchResult res;
    std::string line, prov;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        MatchedPair m;
        if (!(ls >> m.pair.left >> m.pair.right >> m.score >> m.round >> prov) ||
            (prov != "seed" && prov != "matched"))
            throw std::runtime_error("matches line " + std::to_string(line_no) +
                                     ": malformed row");
        m.provenance = prov == "seed" ? Provenance::Seed : Provenance::Matched;
        res.matches.push_back(m);
    }
    return res;
}

void save_stats(const MatchResult &result, std::ostream &out) {
    std::size_t found = 0;
    for (const auto &m : result.matches)
        if (m.provenance == Provenance::Matched)
            ++found;
    out << "matches=" << found << '\n'
        << "seeds=" << result.matches.size() - found << '\n'
        << "rounds=" << result.stats.rounds << '\n'
        << "relaxations=" << result.stats.relaxations << '\n'
        << "candidates=" << result.stats.candidates_created << '\n'
        << "pushes=" << result.stats.pushes << '\n';
}

void save_seeds_file(const SeedSet &seeds, const std::string &path) {
    auto out = open_out(path);
    save_seeds(seeds, out);
}

SeedSet load_seeds_file(const std::string &path) {
    auto in = open_in(path);
    return load_seeds(in);
}

void save_truth_file(const GroundTruth &truth, const std::string &path) {
    auto out = open_out(path);
    save_truth(truth, out);
}

GroundTruth load_truth_file(const std::string &path, std::size_t id_space) {
    auto in = open_in(path);
    return load_truth(in, id_space);
}

void save_matches_file(const MatchResult &result, const std::string &path) {
    auto out = open_out(path);
    save_matches(result, out);
}

MatchResult load_matches_file(const std::string &path) {
    auto in = open_in(path);
    return load_matches(in);
}

void save_stats_file(const MatchResult &result, const std::string &path) {
    auto out = open_out(path);
    save_stats(result, out);
}

} // namespace pprgm
