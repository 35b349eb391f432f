#include "pprgm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "pprgm/random_model.hpp"
#include "pprgm/rng.hpp"

namespace pprgm {

double Lemma1Report::z(std::uint64_t count, double analytical) const {
    double e = emp(count);
    if (e == analytical)
        return 0.0;
    double se = std::sqrt(std::max(analytical * (1.0 - analytical), 1e-300) /
                          static_cast<double>(params.trials));
    return (e - analytical) / se;
}

namespace {

using PairKey = std::uint64_t;
inline PairKey pair_key(Vertex l, Vertex r) {
    return (static_cast<PairKey>(l) << 32) | r;
}

// Per-trial working buffers for the one-round percolation experiment. Only
// the base edges incident to planted matched vertices matter for marks, so
// the trial samples exactly that slice of the model.
struct TrialCounters {
    std::uint64_t des_wrong_plain = 0, des_wrong_post = 0;
    std::uint64_t des_correct_plain = 0, des_correct_post = 0;
    std::uint64_t all_wrong_plain = 0, all_wrong_post = 0;
    std::uint64_t all_correct_plain = 0, all_correct_post = 0;

    void operator+=(const TrialCounters &o) {
        des_wrong_plain += o.des_wrong_plain;
        des_wrong_post += o.des_wrong_post;
        des_correct_plain += o.des_correct_plain;
        des_correct_post += o.des_correct_post;
        all_wrong_plain += o.all_wrong_plain;
        all_wrong_post += o.all_wrong_post;
        all_correct_plain += o.all_correct_plain;
        all_correct_post += o.all_correct_post;
    }
};

struct Top2 {
    std::uint32_t best = 0, second = 0;
    void feed(std::uint32_t m) {
        if (m > best) {
            second = best;
            best = m;
        } else if (m > second) {
            second = m;
        }
    }
    std::uint32_t excluding(std::uint32_t own) const {
        return own == best ? second : best;
    }
};

void run_lemma1_trial(const Lemma1Params &P, std::uint64_t trial, TrialCounters &out) {
    Rng rng = Rng::substream(P.rng_seed, trial);
    const Vertex n = P.n;

    std::vector<char> kept1, kept2;
    const bool sample_vertices = P.p_n < 1.0;
    if (sample_vertices) {
        kept1.resize(n);
        kept2.resize(n);
        for (Vertex v = 0; v < n; ++v)
            kept1[v] = rng.bernoulli(P.p_n);
        for (Vertex v = 0; v < n; ++v)
            kept2[v] = rng.bernoulli(P.p_n);
    }
    auto in1 = [&](Vertex v) { return !sample_vertices || kept1[v]; };
    auto in2 = [&](Vertex v) { return !sample_vertices || kept2[v]; };

    // plant the matched set: n_c identity pairs then n_w wrong pairs
    std::vector<char> used_l(n, 0), used_r(n, 0);
    std::vector<VertexPair> planted;
    std::uint64_t guard = 0;
    while (planted.size() < P.n_c) {
        if (++guard > 100000ULL * (P.n_c + 1))
            throw std::runtime_error("lemma1: cannot plant correct pairs");
        Vertex v = static_cast<Vertex>(rng.next_below(n));
        if (used_l[v] || used_r[v] || !in1(v) || !in2(v))
            continue;
        used_l[v] = used_r[v] = 1;
        planted.push_back({v, v});
    }
    while (planted.size() < static_cast<std::size_t>(P.n_c) + P.n_w) {
        if (++guard > 100000ULL * (P.n_c + P.n_w + 1))
            throw std::runtime_error("lemma1: cannot plant wrong pairs");
        Vertex a = static_cast<Vertex>(rng.next_below(n));
        Vertex b = static_cast<Vertex>(rng.next_below(n));
        if (a == b || used_l[a] || used_r[b] || !in1(a) || !in2(b))
            continue;
        used_l[a] = 1;
        used_r[b] = 1;
        planted.push_back({a, b});
    }

    // relevant vertices, sorted and deduplicated
    std::vector<Vertex> rel;
    for (const auto &pr : planted) {
        rel.push_back(pr.left);
        rel.push_back(pr.right);
    }
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
    std::unordered_map<Vertex, std::size_t> rel_index;
    for (std::size_t i = 0; i < rel.size(); ++i)
        rel_index.emplace(rel[i], i);

    // base edges incident to relevant vertices: the relevant-to-outside part
    // via geometric skipping, the relevant-to-relevant part edge by edge so
    // each unordered pair gets exactly one coin
    std::vector<std::vector<Vertex>> base(rel.size());
    const double log1mp = std::log1p(-P.p);
    for (std::size_t i = 0; i < rel.size(); ++i) {
        Vertex r = rel[i];
        if (P.p <= 0.0)
            break;
        std::uint64_t cur = 0;
        for (;;) {
            double skip = std::floor(std::log1p(-rng.next_double()) / log1mp);
            if (skip >= static_cast<double>(n))
                break;
            cur += static_cast<std::uint64_t>(skip);
            if (cur >= n)
                break;
            Vertex x = static_cast<Vertex>(cur);
            ++cur;
            if (x == r || rel_index.count(x))
                continue; // relevant-relevant cells handled below
            base[i].push_back(x);
        }
    }
    if (P.p > 0.0) {
        for (std::size_t i = 0; i < rel.size(); ++i)
            for (std::size_t j = i + 1; j < rel.size(); ++j)
                if (rng.bernoulli(P.p)) {
                    base[i].push_back(rel[j]);
                    base[j].push_back(rel[i]);
                }
    }

    // sampled neighborhoods: one independent edge coin per graph
    std::unordered_map<PairKey, std::pair<bool, bool>> rel_edge_coins;
    auto edge_coins = [&](Vertex a, Vertex b) {
        if (!rel_index.count(a) || !rel_index.count(b))
            return std::make_pair(rng.bernoulli(P.p_e), rng.bernoulli(P.p_e));
        PairKey k = a < b ? pair_key(a, b) : pair_key(b, a);
        auto it = rel_edge_coins.find(k);
        if (it == rel_edge_coins.end()) {
            auto coins = std::make_pair(rng.bernoulli(P.p_e), rng.bernoulli(P.p_e));
            rel_edge_coins.emplace(k, coins);
            return coins;
        }
        return it->second;
    };

    std::vector<std::vector<Vertex>> nb1(rel.size()), nb2(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
        Vertex r = rel[i];
        for (Vertex x : base[i]) {
            auto [c1, c2] = edge_coins(r, x);
            if (c1 && in1(r) && in1(x))
                nb1[i].push_back(x);
            if (c2 && in2(r) && in2(x))
                nb2[i].push_back(x);
        }
    }

    // one percolation round: every planted pair spreads one mark to each of
    // its neighboring pairs
    std::unordered_map<PairKey, std::uint32_t> marks;
    for (const auto &pr : planted) {
        const auto &la = nb1[rel_index.at(pr.left)];
        const auto &rb = nb2[rel_index.at(pr.right)];
        for (Vertex x : la)
            for (Vertex y : rb)
                ++marks[pair_key(x, y)];
    }

    // candidate universe: marked pairs with both endpoints unmatched
    auto endpoint_free = [&](Vertex x, Vertex y) { return !used_l[x] && !used_r[y]; };
    std::unordered_map<Vertex, Top2> top_l, top_r;
    for (const auto &[k, m] : marks) {
        Vertex x = static_cast<Vertex>(k >> 32), y = static_cast<Vertex>(k & 0xffffffffULL);
        if (!endpoint_free(x, y))
            continue;
        top_l[x].feed(m);
        top_r[y].feed(m);
    }

    auto max_adversary = [&](Vertex x, Vertex y, std::uint32_t own) {
        std::uint32_t best = 0;
        auto lit = top_l.find(x);
        if (lit != top_l.end())
            best = std::max(best, lit->second.excluding(own));
        auto rit = top_r.find(y);
        if (rit != top_r.end())
            best = std::max(best, rit->second.excluding(own));
        return best;
    };

    for (const auto &[k, m] : marks) {
        if (m < 2)
            continue;
        Vertex x = static_cast<Vertex>(k >> 32), y = static_cast<Vertex>(k & 0xffffffffULL);
        if (!endpoint_free(x, y))
            continue;
        bool correct = x == y && in1(x) && in2(x);
        bool post = m > max_adversary(x, y, m);
        if (correct) {
            ++out.all_correct_plain;
            if (post)
                ++out.all_correct_post;
        } else {
            ++out.all_wrong_plain;
            if (post)
                ++out.all_wrong_post;
        }
    }

    auto marks_of = [&](Vertex x, Vertex y) {
        auto it = marks.find(pair_key(x, y));
        return it == marks.end() ? 0u : it->second;
    };

    // designated wrong pair: both endpoints present, neither matched
    guard = 0;
    for (;;) {
        if (++guard > 1000000)
            break; // degenerate parameter corner; skip the designated events
        Vertex x = static_cast<Vertex>(rng.next_below(n));
        Vertex y = static_cast<Vertex>(rng.next_below(n));
        if (x == y || used_l[x] || used_r[y] || !in1(x) || !in2(y))
            continue;
        std::uint32_t m = marks_of(x, y);
        if (m >= 2) {
            ++out.des_wrong_plain;
            if (m > max_adversary(x, y, m))
                ++out.des_wrong_post;
        }
        break;
    }

    // designated correct pair
    guard = 0;
    for (;;) {
        if (++guard > 1000000)
            break;
        Vertex w = static_cast<Vertex>(rng.next_below(n));
        if (used_l[w] || used_r[w] || !in1(w) || !in2(w))
            continue;
        std::uint32_t m = marks_of(w, w);
        if (m >= 2) {
            ++out.des_correct_plain;
            if (m > max_adversary(w, w, m))
                ++out.des_correct_post;
        }
        break;
    }
}

} // namespace

Lemma1Report validate_lemma1(const Lemma1Params &P) {
    if (P.n < 2 || !(P.p >= 0 && P.p <= 1) || !(P.p_n >= 0 && P.p_n <= 1) ||
        !(P.p_e >= 0 && P.p_e <= 1))
        throw std::invalid_argument("invalid lemma1 parameters");
    if (P.trials == 0)
        throw std::invalid_argument("trials must be > 0");

    Lemma1Report rep;
    rep.params = P;

    const double nc = P.n_c, nw = P.n_w;
    const double p2 = P.p * P.p, p4 = p2 * p2;
    const double pe4 = std::pow(P.p_e, 4), pe8 = pe4 * pe4;
    const double pn2 = P.p_n * P.p_n, pn4 = pn2 * pn2;
    rep.ana_wrong_plain = (nc + nw) * (nc + nw) * p4 * pe4;
    rep.ana_wrong_post = rep.ana_wrong_plain -
                         nc * nc * p4 * pe4 * (2 * pe4 - pe8 + 2 * pn2 * pe4 - 2 * pn4 * pe4);
    rep.ana_correct_plain = nc * nc * p2 * pe4;
    rep.ana_correct_post = rep.ana_correct_plain * (1.0 - P.n * p2);
    for (double v : {rep.ana_wrong_plain, rep.ana_wrong_post, rep.ana_correct_plain,
                     rep.ana_correct_post})
        if (v < 0.0 || v > 1.0)
            rep.formula_out_of_range = true;

    const int nthreads = std::max(1, P.threads);
    std::vector<TrialCounters> partial(nthreads);
    auto worker = [&](int t) {
        TrialCounters acc;
        for (std::uint64_t i = t; i < P.trials; i += nthreads)
            run_lemma1_trial(P, i, acc);
        partial[t] = acc;
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker, t);
        for (auto &th : pool)
            th.join();
    }
    TrialCounters total;
    for (const auto &c : partial)
        total += c;

    rep.des_wrong_plain = total.des_wrong_plain;
    rep.des_wrong_post = total.des_wrong_post;
    rep.des_correct_plain = total.des_correct_plain;
    rep.des_correct_post = total.des_correct_post;
    rep.all_wrong_plain = total.all_wrong_plain;
    rep.all_wrong_post = total.all_wrong_post;
    rep.all_correct_plain = total.all_correct_plain;
    rep.all_correct_post = total.all_correct_post;
    return rep;
}

DistanceSignatures distance_signatures(const Graph &g, const std::vector<Vertex> &seeds) {
    const Vertex n = g.vertex_count();
    DistanceSignatures out;
    out.dist.assign(n, std::vector<std::uint32_t>(seeds.size(), UINT32_MAX));

    std::vector<std::uint32_t> d(n);
    std::deque<Vertex> queue;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        std::fill(d.begin(), d.end(), UINT32_MAX);
        d[seeds[k]] = 0;
        queue.clear();
        queue.push_back(seeds[k]);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex u : g.neighbors(v))
                if (d[u] == UINT32_MAX) {
                    d[u] = d[v] + 1;
                    queue.push_back(u);
                }
        }
        for (Vertex v = 0; v < n; ++v)
            out.dist[v][k] = d[v];
    }

    // largest connected component, ties to the one containing the smallest id
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::uint32_t comp_count = 0;
    std::vector<std::size_t> comp_size;
    for (Vertex v = 0; v < n; ++v) {
        if (comp[v] != UINT32_MAX)
            continue;
        std::uint32_t c = comp_count++;
        comp_size.push_back(0);
        comp[v] = c;
        queue.clear();
        queue.push_back(v);
        while (!queue.empty()) {
            Vertex x = queue.front();
            queue.pop_front();
            ++comp_size[c];
            for (Vertex u : g.neighbors(x))
                if (comp[u] == UINT32_MAX) {
                    comp[u] = c;
                    queue.push_back(u);
                }
        }
    }
    std::uint32_t giant_comp = 0;
    for (std::uint32_t c = 1; c < comp_count; ++c)
        if (comp_size[c] > comp_size[giant_comp])
            giant_comp = c;
    for (Vertex v = 0; v < n; ++v)
        if (comp[v] == giant_comp)
            out.giant.push_back(v);

    std::vector<const std::vector<std::uint32_t> *> rows;
    rows.reserve(out.giant.size());
    for (Vertex v : out.giant)
        rows.push_back(&out.dist[v]);
    std::sort(rows.begin(), rows.end(),
              [](const auto *a, const auto *b) { return *a < *b; });
    out.unique_in_giant = true;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (*rows[i] == *rows[i - 1]) {
            out.unique_in_giant = false;
            break;
        }
    return out;
}

SignatureExperiment check_signature_uniqueness(std::uint32_t n, double avg_degree,
                                               double c, std::uint32_t trials,
                                               std::uint64_t rng_seed) {
    if (n < 2 || avg_degree <= 0 || c * avg_degree <= 1.0)
        throw std::invalid_argument("need c * np > 1 for the seed-count formula");
    SignatureExperiment exp;
    exp.trials = trials;
    const double cnp = c * avg_degree;
    exp.seed_count = static_cast<std::uint32_t>(
        std::ceil(std::log(std::pow(static_cast<double>(n), 3)) /
                  std::log(cnp / (cnp - 1.0))));
    if (exp.seed_count > n)
        throw std::invalid_argument("seed-count formula exceeds n");

    for (std::uint32_t t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(rng_seed, t);
        Graph g = gen_er(n, avg_degree / n, rng.next());
        // seed set sampled without replacement
        std::vector<Vertex> ids(n);
        for (Vertex v = 0; v < n; ++v)
            ids[v] = v;
        std::vector<Vertex> seeds;
        for (std::uint32_t k = 0; k < exp.seed_count; ++k) {
            std::size_t j = k + rng.next_below(n - k);
            std::swap(ids[k], ids[j]);
            seeds.push_back(ids[k]);
        }
        if (distance_signatures(g, seeds).unique_in_giant)
            ++exp.successes;
    }
    return exp;
}

DiscriminationCheck discrimination_check(const Graph &g, Vertex s, Vertex u, Vertex v,
                                         std::uint32_t steps, std::uint32_t alpha_draws,
                                         std::uint64_t rng_seed) {
    const Vertex n = g.vertex_count();
    if (s >= n || u >= n || v >= n)
        throw std::out_of_range("vertex out of range");

    // q^(t)[u] and q^(t)[v] for t = 0..steps
    std::vector<double> qu(steps + 1, 0.0), qv(steps + 1, 0.0);
    std::vector<double> w(n, 0.0), next(n, 0.0);
    w[s] = 1.0;
    for (std::uint32_t t = 0;; ++t) {
        qu[t] = w[u];
        qv[t] = w[v];
        if (t == steps)
            break;
        std::fill(next.begin(), next.end(), 0.0);
        for (Vertex x = 0; x < n; ++x) {
            if (w[x] == 0.0)
                continue;
            auto nb = g.neighbors(x);
            if (nb.empty()) {
                next[x] += w[x];
            } else {
                double share = w[x] / static_cast<double>(nb.size());
                for (Vertex y : nb)
                    next[y] += share;
            }
        }
        w.swap(next);
    }

    DiscriminationCheck out;
    out.draws = alpha_draws;
    bool differ = false;
    for (std::uint32_t t = 1; t <= steps; ++t)
        if (qu[t] != qv[t])
            differ = true;
    out.distinguishable = differ;
    if (!differ)
        return out;

    Rng rng(rng_seed);
    for (std::uint32_t i = 0; i < alpha_draws; ++i) {
        double alpha = rng.next_double();
        double pu = 0, pv = 0, decay = 1.0;
        for (std::uint32_t t = 0; t <= steps; ++t) {
            pu += alpha * decay * qu[t];
            pv += alpha * decay * qv[t];
            decay *= 1.0 - alpha;
        }
        if (std::abs(pu - pv) < 1e-12)
            ++out.collisions;
    }
    return out;
}

} // namespace pprgm
