#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pprgm/matcher.hpp"
#include "pprgm/metrics.hpp"
#include "pprgm/random_model.hpp"

namespace pprgm {

// seeds.tsv: one "left<TAB>right" line per pair, correct pairs first
void save_seeds(const SeedSet &seeds, std::ostream &out);
SeedSet load_seeds(std::istream &in);
void save_seeds_file(const SeedSet &seeds, const std::string &path);
SeedSet load_seeds_file(const std::string &path);

// truth.tsv: "v<TAB>v" per vertex present in both graphs
void save_truth(const GroundTruth &truth, std::ostream &out);
GroundTruth load_truth(std::istream &in, std::size_t id_space);
void save_truth_file(const GroundTruth &truth, const std::string &path);
GroundTruth load_truth_file(const std::string &path, std::size_t id_space);

// matches.tsv: "left<TAB>right<TAB>score<TAB>round<TAB>provenance"
void save_matches(const MatchResult &result, std::ostream &out);
MatchResult load_matches(std::istream &in);
void save_matches_file(const MatchResult &result, const std::string &path);
MatchResult load_matches_file(const std::string &path);

// stats report: flat key=value lines; wall time deliberately excluded so the
// file is byte-identical across repeated runs
void save_stats(const MatchResult &result, std::ostream &out);
void save_stats_file(const MatchResult &result, const std::string &path);

std::string format_score(double v);

} // namespace pprgm
