#include "pprgm/matcher.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace pprgm {

bool CandidateSet::insert(VertexPair p, double score) {
    auto [it, inserted] = entries_.try_emplace(key(p), score);
    if (inserted) {
        by_left_[p.left].insert(p.right);
        by_right_[p.right].insert(p.left);
    }
    return inserted;
}

void CandidateSet::add_to_score(VertexPair p, double inc) {
    entries_.at(key(p)) += inc;
}

void CandidateSet::remove_with_endpoints(VertexPair p) {
    auto lit = by_left_.find(p.left);
    if (lit != by_left_.end()) {
        for (Vertex r : lit->second) {
            entries_.erase(key({p.left, r}));
            if (r != p.right) {
                auto rit = by_right_.find(r);
                rit->second.erase(p.left);
                if (rit->second.empty())
                    by_right_.erase(rit);
            }
        }
        by_left_.erase(lit);
    }
    auto rit = by_right_.find(p.right);
    if (rit != by_right_.end()) {
        for (Vertex l : rit->second) {
            entries_.erase(key({l, p.right}));
            if (l != p.left) { // p.left's bucket is already gone
                auto l2 = by_left_.find(l);
                l2->second.erase(p.right);
                if (l2->second.empty())
                    by_left_.erase(l2);
            }
        }
        by_right_.erase(rit);
    }
}

double CandidateSet::max_adversary_score(VertexPair p) const {
    double best = -1.0;
    auto lit = by_left_.find(p.left);
    if (lit != by_left_.end())
        for (Vertex r : lit->second)
            if (r != p.right)
                best = std::max(best, entries_.at(key({p.left, r})));
    auto rit = by_right_.find(p.right);
    if (rit != by_right_.end())
        for (Vertex l : rit->second)
            if (l != p.left)
                best = std::max(best, entries_.at(key({l, p.right})));
    return best;
}

void CandidateSet::audit() const {
    std::size_t indexed = 0;
    for (const auto &[l, rights] : by_left_) {
        if (rights.empty())
            throw std::logic_error("candidate audit: empty left index bucket");
        for (Vertex r : rights) {
            if (!entries_.count(key({l, r})))
                throw std::logic_error("candidate audit: left index entry not in set");
            auto rit = by_right_.find(r);
            if (rit == by_right_.end() || !rit->second.count(l))
                throw std::logic_error("candidate audit: indices disagree");
            ++indexed;
        }
    }
    if (indexed != entries_.size())
        throw std::logic_error("candidate audit: index/entry count mismatch");
    for (const auto &[k, s] : entries_) {
        if (s < 0)
            throw std::logic_error("candidate audit: negative score");
        VertexPair p = unkey(k);
        auto lit = by_left_.find(p.left);
        if (lit == by_left_.end() || !lit->second.count(p.right))
            throw std::logic_error("candidate audit: entry missing from left index");
    }
}

bool is_strong(VertexPair pair, double score, const CandidateSet &cands,
               const MatchCriteria &criteria) {
    if (!(score > criteria.gamma))
        return false;
    double adv = cands.max_adversary_score(pair);
    return adv < 0 || score > (1.0 + criteria.beta) * adv;
}

void MatcherState::upsert_candidate(VertexPair p, double increment) {
    bool created = insert_lazy(p);
    cands.add_to_score(p, increment);
    if (created)
        ++candidates_created;
}

bool MatcherState::insert_lazy(VertexPair p) {
    if (cands.contains(p))
        return false;
    cands.insert(p, basic_score(p.left, p.right, labels, sigma));
    return true;
}

void expand_ne(VertexPair matched, MatcherState &state) {
    auto n1 = state.g1.neighbors(matched.left);
    auto n2 = state.g2.neighbors(matched.right);
    if (n1.empty() || n2.empty())
        return;
    const double inc =
        ne_increment(static_cast<std::uint32_t>(n1.size()),
                     static_cast<std::uint32_t>(n2.size()), state.alpha, state.sigma);
    for (Vertex u : n1) {
        if (state.matched1[u])
            continue;
        for (Vertex v : n2) {
            if (state.matched2[v])
                continue;
            state.upsert_candidate({u, v}, inc);
        }
    }
}

void expand_hoe(VertexPair matched, MatcherState &state) {
    PPRParams params{state.alpha, state.r_prime_max};
    PushResult p1 = forward_push(state.g1, matched.left, params);
    PushResult p2 = forward_push(state.g2, matched.right, params);
    state.pushes += p1.push_count + p2.push_count;
    for (const auto &[u, pu] : p1.reserves) {
        if (state.matched1[u])
            continue;
        for (const auto &[v, pv] : p2.reserves) {
            if (state.matched2[v])
                continue;
            state.upsert_candidate({u, v}, pair_term(pu, pv, state.sigma));
        }
    }
}

namespace {

void validate_seeds(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                    bool require_degree) {
    if (seeds.pairs.empty())
        throw std::invalid_argument("empty seed set");
    std::unordered_set<Vertex> lefts, rights;
    for (const auto &p : seeds.pairs) {
        if (p.left >= g1.vertex_count() || p.right >= g2.vertex_count())
            throw std::invalid_argument("seed endpoint out of range");
        if (!lefts.insert(p.left).second || !rights.insert(p.right).second)
            throw std::invalid_argument("duplicate seed endpoint");
        if (require_degree && (g1.degree(p.left) == 0 || g2.degree(p.right) == 0))
            throw std::invalid_argument("seed with degree 0");
    }
}

struct StrongPair {
    double score;
    VertexPair pair;
};

} // namespace

MatchResult run_pprgm(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                      const MatchConfig &config) {
    auto t0 = std::chrono::steady_clock::now();
    validate_seeds(g1, g2, seeds, /*require_degree=*/true);

    const double n_seeds = static_cast<double>(seeds.pairs.size());
    // Seed pushes must run deeper than expansion pushes, so the derived
    // default keeps r_max below r_prime_max even when |S|/(2|V|) is not.
    const double r_max = config.r_max.value_or(
        std::min(n_seeds / (2.0 * std::max(g1.vertex_count(), g2.vertex_count())),
                 config.r_prime_max / 10.0));
    const double sigma = config.sigma.value_or(10.0 * r_max);

    MatcherState state{g1,
                       g2,
                       SeedLabelStore::build(g1, g2, seeds, {config.alpha, r_max},
                                             config.threads),
                       {},
                       std::vector<char>(g1.vertex_count(), 0),
                       std::vector<char>(g2.vertex_count(), 0),
                       config.alpha,
                       sigma,
                       config.r_prime_max};
    state.pushes = state.labels.push_count();

    MatchCriteria crit;
    crit.beta = config.beta0.value_or(1.0);
    crit.gamma = config.gamma0.value_or(n_seeds / 2.0);
    crit.beta_floor = config.beta_floor;
    crit.gamma_floor = config.gamma_floor;

    MatchResult res;
    std::vector<VertexPair> pending;
    for (const auto &p : seeds.pairs) {
        state.matched1[p.left] = 1;
        state.matched2[p.right] = 1;
        res.matches.push_back(
            {p, basic_score(p.left, p.right, state.labels, sigma), 0, Provenance::Seed});
        pending.push_back(p);
    }

    // per-round scratch: top-2 candidate scores per endpoint; the best
    // adversary of (u,v) is the best score at u or v other than its own entry
    std::vector<double> top1_l(g1.vertex_count()), top2_l(g1.vertex_count());
    std::vector<double> top1_r(g2.vertex_count()), top2_r(g2.vertex_count());

    std::uint32_t round = 0;
    std::vector<StrongPair> strong;
    for (;;) {
        ++round;
        for (const auto &p : pending) {
            if (config.expansion == Expansion::NE)
                expand_ne(p, state);
            else
                expand_hoe(p, state);
        }
        pending.clear();

        std::fill(top1_l.begin(), top1_l.end(), -1.0);
        std::fill(top2_l.begin(), top2_l.end(), -1.0);
        std::fill(top1_r.begin(), top1_r.end(), -1.0);
        std::fill(top2_r.begin(), top2_r.end(), -1.0);
        state.cands.for_each([&](VertexPair p, double s) {
            if (s > top1_l[p.left]) {
                top2_l[p.left] = top1_l[p.left];
                top1_l[p.left] = s;
            } else if (s > top2_l[p.left]) {
                top2_l[p.left] = s;
            }
            if (s > top1_r[p.right]) {
                top2_r[p.right] = top1_r[p.right];
                top1_r[p.right] = s;
            } else if (s > top2_r[p.right]) {
                top2_r[p.right] = s;
            }
        });

        strong.clear();
        state.cands.for_each([&](VertexPair p, double s) {
            if (!(s > crit.gamma))
                return;
            double adv_l = s == top1_l[p.left] ? top2_l[p.left] : top1_l[p.left];
            double adv_r = s == top1_r[p.right] ? top2_r[p.right] : top1_r[p.right];
            double adv = std::max(adv_l, adv_r);
            if (adv >= 0 && !(s > (1.0 + crit.beta) * adv))
                return;
            strong.push_back({s, p});
        });
        std::sort(strong.begin(), strong.end(), [](const StrongPair &a, const StrongPair &b) {
            if (a.score != b.score)
                return a.score > b.score;
            return a.pair < b.pair;
        });

        std::size_t accepted = 0;
        for (const auto &sp : strong) {
            if (state.matched1[sp.pair.left] || state.matched2[sp.pair.right])
                continue; // endpoint matched earlier this round
            state.matched1[sp.pair.left] = 1;
            state.matched2[sp.pair.right] = 1;
            state.cands.remove_with_endpoints(sp.pair);
            res.matches.push_back({sp.pair, sp.score, round, Provenance::Matched});
            pending.push_back(sp.pair);
            ++accepted;
        }

#ifndef NDEBUG
        state.cands.audit();
        state.cands.for_each([&](VertexPair p, double) {
            if (state.matched1[p.left] || state.matched2[p.right])
                throw std::logic_error("candidate with matched endpoint after round");
        });
#endif

        if (accepted == 0) {
            if (crit.beta <= crit.beta_floor && crit.gamma <= crit.gamma_floor) {
                res.stats.rounds = round;
                break;
            }
            crit.beta = std::max(crit.beta * 0.5, crit.beta_floor);
            double g = (crit.gamma + 1.0) * 0.5;
            if (g - crit.gamma_floor < 1e-9)
                g = crit.gamma_floor; // the schedule only approaches the floor
            crit.gamma = std::max(g, crit.gamma_floor);
            ++res.stats.relaxations;
        }
    }

    res.stats.candidates_created = state.candidates_created;
    res.stats.pushes = state.pushes;
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return res;
}

MatchResult run_baseline_pgm(const Graph &g1, const Graph &g2, const SeedSet &seeds,
                             std::uint32_t threshold) {
    auto t0 = std::chrono::steady_clock::now();
    if (threshold < 1)
        throw std::invalid_argument("threshold must be >= 1");
    validate_seeds(g1, g2, seeds, /*require_degree=*/false);

    std::vector<char> matched1(g1.vertex_count(), 0), matched2(g2.vertex_count(), 0);
    std::unordered_map<std::uint64_t, std::uint32_t> marks;
    auto key = [](Vertex l, Vertex r) {
        return (static_cast<std::uint64_t>(l) << 32) | r;
    };

    MatchResult res;
    std::vector<VertexPair> unused;
    for (const auto &p : seeds.pairs) {
        matched1[p.left] = 1;
        matched2[p.right] = 1;
        res.matches.push_back({p, 0.0, 0, Provenance::Seed});
        unused.push_back(p);
    }

    struct Cand {
        std::uint32_t marks;
        VertexPair pair;
    };
    std::uint32_t round = 0;
    while (!unused.empty()) {
        ++round;
        for (const auto &p : unused)
            for (Vertex a : g1.neighbors(p.left))
                for (Vertex b : g2.neighbors(p.right))
                    ++marks[key(a, b)];
        unused.clear();

        std::vector<Cand> eligible;
        for (const auto &[k, m] : marks) {
            if (m < threshold)
                continue;
            VertexPair p{static_cast<Vertex>(k >> 32),
                         static_cast<Vertex>(k & 0xffffffffULL)};
            if (matched1[p.left] || matched2[p.right])
                continue;
            eligible.push_back({m, p});
        }
        std::sort(eligible.begin(), eligible.end(), [](const Cand &a, const Cand &b) {
            if (a.marks != b.marks)
                return a.marks > b.marks;
            return a.pair < b.pair;
        });
        for (const auto &c : eligible) {
            if (matched1[c.pair.left] || matched2[c.pair.right])
                continue;
            matched1[c.pair.left] = 1;
            matched2[c.pair.right] = 1;
            res.matches.push_back(
                {c.pair, static_cast<double>(c.marks), round, Provenance::Matched});
            unused.push_back(c.pair);
        }
    }

    res.stats.rounds = round;
    res.stats.candidates_created = marks.size();
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return res;
}

} // namespace pprgm
