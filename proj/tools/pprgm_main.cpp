#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pprgm/analysis.hpp"
#include "pprgm/io.hpp"
#include "pprgm/matcher.hpp"
#include "pprgm/metrics.hpp"
#include "pprgm/ppr.hpp"
#include "pprgm/random_model.hpp"

namespace fs = std::filesystem;
using namespace pprgm;

namespace {

void manifest_line(const std::string &path, const std::string &what) {
    std::cout << "wrote " << path << " (" << what << ")\n";
}

// Presence reconstructed from files: a vertex counts as present in a sampled
// graph when it has an edge there or appears in the ground truth.
CorrelatedPair load_pair_view(const std::string &g1_path, const std::string &g2_path,
                              const std::string &truth_path) {
    CorrelatedPair cp;
    cp.g1 = load_edge_list_file(g1_path);
    cp.g2 = load_edge_list_file(g2_path);
    std::size_t n = std::max(cp.g1.vertex_count(), cp.g2.vertex_count());
    GroundTruth truth = load_truth_file(truth_path, n);
    n = std::max(n, truth.present_in_both.size());
    if (cp.g1.vertex_count() < n || cp.g2.vertex_count() < n) {
        // re-host both graphs on the full id space
        auto rehost = [&](const Graph &g) {
            std::vector<std::pair<Vertex, Vertex>> edges;
            for (Vertex u = 0; u < g.vertex_count(); ++u)
                for (Vertex v : g.neighbors(u))
                    if (u < v)
                        edges.emplace_back(u, v);
            return Graph::from_edges(static_cast<Vertex>(n), std::move(edges));
        };
        cp.g1 = rehost(cp.g1);
        cp.g2 = rehost(cp.g2);
    }
    cp.base = Graph::from_edges(static_cast<Vertex>(n), {});
    cp.kept1.assign(n, 0);
    cp.kept2.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        bool ident = v < truth.present_in_both.size() && truth.present_in_both[v];
        cp.kept1[v] = ident || cp.g1.degree(v) > 0;
        cp.kept2[v] = ident || cp.g2.degree(v) > 0;
    }
    return cp;
}

int cmd_gen_er(std::uint32_t n, double p, std::uint64_t rng_seed,
               const std::string &out) {
    Graph g = gen_er(n, p, rng_seed);
    save_edge_list_file(g, out);
    manifest_line(out, std::to_string(g.vertex_count()) + " vertices, " +
                           std::to_string(g.edge_count()) + " edges");
    return 0;
}

int cmd_gen_sample(const std::string &base_path, double p_n, double p_e,
                   std::uint64_t rng_seed, const std::string &out_dir) {
    Graph base = load_edge_list_file(base_path);
    CorrelatedPair cp = sample_correlated(base, p_n, p_e, rng_seed);
    fs::create_directories(out_dir);
    const std::string g1p = (fs::path(out_dir) / "g1.edges").string();
    const std::string g2p = (fs::path(out_dir) / "g2.edges").string();
    const std::string tp = (fs::path(out_dir) / "truth.tsv").string();
    save_edge_list_file(cp.g1, g1p);
    save_edge_list_file(cp.g2, g2p);
    save_truth_file(truth_of(cp), tp);
    manifest_line(g1p, std::to_string(cp.g1.edge_count()) + " edges");
    manifest_line(g2p, std::to_string(cp.g2.edge_count()) + " edges");
    std::size_t both = 0;
    for (Vertex v = 0; v < base.vertex_count(); ++v)
        both += cp.present_in_both(v);
    manifest_line(tp, std::to_string(both) + " shared vertices");
    return 0;
}

int cmd_gen_seeds(const std::string &dir, std::uint32_t correct, std::uint32_t wrong,
                  std::uint32_t min_degree, std::uint64_t rng_seed,
                  std::string out) {
    CorrelatedPair cp = load_pair_view((fs::path(dir) / "g1.edges").string(),
                                       (fs::path(dir) / "g2.edges").string(),
                                       (fs::path(dir) / "truth.tsv").string());
    SeedSet seeds = sample_seeds(cp, correct, wrong, min_degree, rng_seed);
    if (out.empty())
        out = (fs::path(dir) / "seeds.tsv").string();
    save_seeds_file(seeds, out);
    manifest_line(out, std::to_string(seeds.correct_count) + " correct + " +
                           std::to_string(seeds.wrong_count) + " wrong seeds");
    return 0;
}

int cmd_match(const std::string &g1_path, const std::string &g2_path,
              const std::string &seeds_path, const std::string &algorithm,
              MatchConfig cfg, std::uint32_t threshold, const std::string &out,
              const std::string &stats_path) {
    Graph g1 = load_edge_list_file(g1_path);
    Graph g2 = load_edge_list_file(g2_path);
    SeedSet seeds = load_seeds_file(seeds_path);
    for (const auto &p : seeds.pairs)
        if (p.left >= g1.vertex_count() || p.right >= g2.vertex_count())
            throw std::runtime_error("seed pair outside the graphs");

    MatchResult res;
    if (algorithm == "baseline") {
        res = run_baseline_pgm(g1, g2, seeds, threshold);
    } else {
        cfg.expansion = algorithm == "ne" ? Expansion::NE : Expansion::HOE;
        res = run_pprgm(g1, g2, seeds, cfg);
    }
    save_matches_file(res, out);
    if (!stats_path.empty())
        save_stats_file(res, stats_path);
    std::size_t found = res.matches.size() - seeds.pairs.size();
    std::cout << "matched " << found << " pairs in " << res.stats.rounds
              << " rounds, " << res.stats.candidates_created << " candidates, "
              << res.stats.pushes << " pushes, "
              << static_cast<std::uint64_t>(res.stats.wall_ms) << " ms\n";
    return 0;
}

int cmd_eval(const std::string &matches_path, const std::string &truth_path,
             const std::string &g1_path, const std::string &g2_path, bool count_seeds,
             const std::string &csv, const std::string &algorithm, double p_n,
             double p_e, std::uint32_t seeds, double wrong_frac, double time_ms,
             const std::string &stats_path) {
    Graph g1 = load_edge_list_file(g1_path);
    Graph g2 = load_edge_list_file(g2_path);
    const std::size_t n = std::max(g1.vertex_count(), g2.vertex_count());
    GroundTruth truth = load_truth_file(truth_path, n);
    MatchResult matches = load_matches_file(matches_path);
    std::uint64_t candidates = 0;
    if (!stats_path.empty()) {
        std::ifstream st(stats_path);
        if (!st)
            throw std::runtime_error("cannot open " + stats_path);
        std::string line;
        while (std::getline(st, line))
            if (line.rfind("candidates=", 0) == 0)
                candidates = std::stoull(line.substr(11));
    }
    EvalReport rep = evaluate(matches, truth, g1, g2, count_seeds);

    std::printf("n_correct  %10llu\n", static_cast<unsigned long long>(rep.n_correct));
    std::printf("n_wrong    %10llu\n", static_cast<unsigned long long>(rep.n_wrong));
    std::printf("n_ident    %10llu\n", static_cast<unsigned long long>(rep.n_ident));
    std::printf("precision  %10.4f\n", rep.precision);
    std::printf("recall     %10.4f\n", rep.recall);
    std::printf("f1         %10.4f\n", rep.f1);

    if (!csv.empty()) {
        bool fresh = !fs::exists(csv) || fs::file_size(csv) == 0;
        std::ofstream out(csv, std::ios::app);
        if (!out)
            throw std::runtime_error("cannot open " + csv);
        if (fresh)
            out << "algorithm,p_n,p_e,seeds,wrong_frac,precision,recall,f1,time_ms,"
                   "candidates\n";
        char row[256];
        std::snprintf(row, sizeof(row), "%s,%g,%g,%u,%g,%.6f,%.6f,%.6f,%g,%llu\n",
                      algorithm.c_str(), p_n, p_e, seeds, wrong_frac, rep.precision,
                      rep.recall, rep.f1, time_ms,
                      static_cast<unsigned long long>(candidates));
        out << row;
    }
    return 0;
}

int cmd_ppr_debug(const std::string &graph_path, Vertex source, double alpha,
                  double r_max) {
    Graph g = load_edge_list_file(graph_path);
    PushResult pr = forward_push(g, source, {alpha, r_max});
    // rows sorted by reserve descending, ties by vertex id
    struct Row {
        Vertex v;
        double reserve, residue;
    };
    std::vector<Row> rows;
    for (const auto &[v, x] : pr.reserves)
        rows.push_back({v, x, 0.0});
    for (const auto &[v, x] : pr.residues) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [v = v](const Row &r) { return r.v == v; });
        if (it == rows.end())
            rows.push_back({v, 0.0, x});
        else
            it->residue = x;
    }
    std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
        if (a.reserve != b.reserve)
            return a.reserve > b.reserve;
        return a.v < b.v;
    });
    for (const auto &r : rows)
        std::cout << r.v << '\t' << format_score(r.reserve) << '\t'
                  << format_score(r.residue) << '\n';
    return 0;
}

int cmd_validate_lemma1(const Lemma1Params &params) {
    Lemma1Report rep = validate_lemma1(params);
    if (rep.formula_out_of_range)
        std::cerr << "warning: a closed form left [0,1]; the formulas are asymptotic "
                     "approximations for small p\n";
    std::printf("%-28s %14s %14s %10s\n", "scenario", "empirical", "analytical", "z");
    auto row = [&](const char *name, std::uint64_t count, double ana) {
        std::printf("%-28s %14.6e %14.6e %10.3f\n", name, rep.emp(count), ana,
                    rep.z(count, ana));
    };
    row("wrong, plain", rep.des_wrong_plain, rep.ana_wrong_plain);
    row("wrong, postponing", rep.des_wrong_post, rep.ana_wrong_post);
    row("correct, plain", rep.des_correct_plain, rep.ana_correct_plain);
    row("correct, postponing", rep.des_correct_post, rep.ana_correct_post);
    std::printf("pair totals over %llu trials: wrong %llu/%llu, correct %llu/%llu "
                "(postponing/plain)\n",
                static_cast<unsigned long long>(rep.params.trials),
                static_cast<unsigned long long>(rep.all_wrong_post),
                static_cast<unsigned long long>(rep.all_wrong_plain),
                static_cast<unsigned long long>(rep.all_correct_post),
                static_cast<unsigned long long>(rep.all_correct_plain));
    if (rep.all_wrong_plain > 0)
        std::printf("wrong-match ratio with/without postponing: %.4f\n",
                    static_cast<double>(rep.all_wrong_post) /
                        static_cast<double>(rep.all_wrong_plain));
    return 0;
}

int cmd_check_signatures(std::uint32_t n, double avg_degree, double c,
                         std::uint32_t trials, std::uint64_t rng_seed) {
    SignatureExperiment exp = check_signature_uniqueness(n, avg_degree, c, trials,
                                                         rng_seed);
    std::printf("seeds %u\n", exp.seed_count);
    std::printf("unique %u/%u\n", exp.successes, exp.trials);
    std::printf("verdict %s\n", exp.successes * 10 >= exp.trials * 9 ? "unique"
                                                                     : "not-unique");
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"PPRGM seeded graph matching toolkit"};
    app.require_subcommand(1);

    // gen-er
    auto *ger = app.add_subcommand("gen-er", "Generate an Erdos-Renyi graph");
    std::uint32_t er_n = 1000;
    double er_p = 0.004;
    std::uint64_t er_seed = 1;
    std::string er_out = "base.edges";
    ger->add_option("--n", er_n, "vertex count")->required();
    ger->add_option("--p", er_p, "edge probability")->required();
    ger->add_option("--rng-seed", er_seed, "RNG seed (default 1)");
    ger->add_option("--out", er_out, "output edge file (default base.edges)");

    // gen-sample
    auto *gsm = app.add_subcommand("gen-sample",
                                   "Sample a correlated graph pair from a base graph");
    std::string gs_base = "base.edges", gs_dir = ".";
    double gs_pn = 1.0, gs_pe = 0.8;
    std::uint64_t gs_seed = 1;
    gsm->add_option("--base", gs_base, "base edge file")->required();
    gsm->add_option("--pn", gs_pn, "vertex sampling probability (default 1)");
    gsm->add_option("--pe", gs_pe, "edge sampling probability (default 0.8)");
    gsm->add_option("--rng-seed", gs_seed, "RNG seed (default 1)");
    gsm->add_option("--out-dir", gs_dir, "output directory (default .)");

    // gen-seeds
    auto *gsd = app.add_subcommand("gen-seeds", "Sample a seed set for a graph pair");
    std::string sd_dir = ".", sd_out;
    std::uint32_t sd_correct = 20, sd_wrong = 0, sd_mindeg = 1;
    std::uint64_t sd_seed = 1;
    gsd->add_option("--dir", sd_dir, "directory with g1.edges/g2.edges/truth.tsv");
    gsd->add_option("--correct", sd_correct, "number of correct seeds (default 20)");
    gsd->add_option("--wrong", sd_wrong, "number of wrong seeds (default 0)");
    gsd->add_option("--min-degree", sd_mindeg,
                    "minimum degree of correct seeds (default 1)");
    gsd->add_option("--rng-seed", sd_seed, "RNG seed (default 1)");
    gsd->add_option("--out", sd_out, "output file (default DIR/seeds.tsv)");

    // match
    auto *mt = app.add_subcommand("match", "Run a matching algorithm");
    std::string mt_g1, mt_g2, mt_seeds, mt_alg = "hoe", mt_out = "matches.tsv",
                                        mt_stats;
    MatchConfig cfg;
    double mt_rmax = -1, mt_sigma = -1, mt_beta0 = -1, mt_gamma0 = -1;
    std::uint32_t mt_T = 2;
    mt->add_option("--g1", mt_g1, "first graph")->required();
    mt->add_option("--g2", mt_g2, "second graph")->required();
    mt->add_option("--seeds", mt_seeds, "seed pairs file")->required();
    mt->add_option("--algorithm", mt_alg, "ne | hoe | baseline (default hoe)")
        ->check(CLI::IsMember({"ne", "hoe", "baseline"}));
    mt->add_option("--alpha", cfg.alpha, "stopping probability (default 0.3)");
    mt->add_option("--r-max", mt_rmax,
                   "seed push residue threshold (default |S|/(2*max(|V1|,|V2|)))");
    mt->add_option("--r-prime-max", cfg.r_prime_max,
                   "expansion push residue threshold (default 1e-3)");
    mt->add_option("--sigma", mt_sigma, "score smoothing (default 10*r_max)");
    mt->add_option("--beta0", mt_beta0, "initial beta (default 1)");
    mt->add_option("--gamma0", mt_gamma0, "initial gamma (default |S|/2)");
    mt->add_option("--beta-floor", cfg.beta_floor, "minimum beta (default 1/128)");
    mt->add_option("--gamma-floor", cfg.gamma_floor, "minimum gamma (default 1)");
    mt->add_option("--threshold", mt_T, "baseline mark threshold (default 2)");
    mt->add_option("--threads", cfg.threads, "seed-push worker threads (default 1)");
    mt->add_option("--out", mt_out, "matches output (default matches.tsv)");
    mt->add_option("--stats", mt_stats, "stats report output (optional)");

    // eval
    auto *ev = app.add_subcommand("eval", "Evaluate matches against ground truth");
    std::string ev_matches, ev_truth, ev_g1, ev_g2, ev_csv, ev_alg = "";
    bool ev_count_seeds = false;
    double ev_pn = 1, ev_pe = 1, ev_wrongfrac = 0, ev_time = 0;
    std::uint32_t ev_seeds = 0;
    ev->add_option("--matches", ev_matches, "matches.tsv")->required();
    ev->add_option("--truth", ev_truth, "truth.tsv")->required();
    ev->add_option("--g1", ev_g1, "first graph (for the degree filter)")->required();
    ev->add_option("--g2", ev_g2, "second graph")->required();
    ev->add_flag("--count-seeds", ev_count_seeds, "include seed rows in the counts");
    ev->add_option("--csv", ev_csv, "append one CSV row to this file");
    ev->add_option("--algorithm", ev_alg, "CSV column: algorithm label");
    ev->add_option("--p-n", ev_pn, "CSV column: p_n");
    ev->add_option("--p-e", ev_pe, "CSV column: p_e");
    ev->add_option("--seeds", ev_seeds, "CSV column: seed count");
    ev->add_option("--wrong-frac", ev_wrongfrac, "CSV column: wrong-seed fraction");
    ev->add_option("--time-ms", ev_time, "CSV column: wall time in ms");
    std::string ev_stats;
    ev->add_option("--stats", ev_stats, "stats report to read the candidate count from");

    // ppr-debug
    auto *pd = app.add_subcommand("ppr-debug", "Print one Forward-Push result");
    std::string pd_graph;
    std::uint32_t pd_source = 0;
    double pd_alpha = 0.3, pd_rmax = 1e-3;
    pd->add_option("--graph", pd_graph, "edge list file")->required();
    pd->add_option("--source", pd_source, "source vertex")->required();
    pd->add_option("--alpha", pd_alpha, "stopping probability (default 0.3)");
    pd->add_option("--r-max", pd_rmax, "residue threshold (default 1e-3)");

    // validate-lemma1
    auto *vl = app.add_subcommand("validate-lemma1",
                                  "Monte-Carlo check of the postponing lemma");
    Lemma1Params lp;
    vl->add_option("--n", lp.n, "model size (default 2000)");
    vl->add_option("--p", lp.p, "edge probability (default 0.002)");
    vl->add_option("--pn", lp.p_n, "vertex sampling probability (default 1)");
    vl->add_option("--pe", lp.p_e, "edge sampling probability (default 0.9)");
    vl->add_option("--nc", lp.n_c, "planted correct pairs (default 40)");
    vl->add_option("--nw", lp.n_w, "planted wrong pairs (default 0)");
    vl->add_option("--trials", lp.trials, "trials (default 100000)");
    vl->add_option("--rng-seed", lp.rng_seed, "RNG seed (default 1)");
    vl->add_option("--threads", lp.threads, "worker threads (default 1)");

    // check-signatures
    auto *cs = app.add_subcommand("check-signatures",
                                  "Distance-signature uniqueness experiment");
    std::uint32_t cs_n = 1000, cs_trials = 10;
    double cs_avg = 4.0, cs_c = 2.0;
    std::uint64_t cs_seed = 1;
    cs->add_option("--n", cs_n, "graph size (default 1000)");
    cs->add_option("--avg-degree", cs_avg, "average degree np (default 4)");
    cs->add_option("--c", cs_c, "constant c in the seed-count formula (default 2)");
    cs->add_option("--trials", cs_trials, "trials (default 10)");
    cs->add_option("--rng-seed", cs_seed, "RNG seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ger->parsed())
            return cmd_gen_er(er_n, er_p, er_seed, er_out);
        if (gsm->parsed())
            return cmd_gen_sample(gs_base, gs_pn, gs_pe, gs_seed, gs_dir);
        if (gsd->parsed())
            return cmd_gen_seeds(sd_dir, sd_correct, sd_wrong, sd_mindeg, sd_seed,
                                 sd_out);
        if (mt->parsed()) {
            if (mt_rmax > 0)
                cfg.r_max = mt_rmax;
            if (mt_sigma >= 0)
                cfg.sigma = mt_sigma;
            if (mt_beta0 > 0)
                cfg.beta0 = mt_beta0;
            if (mt_gamma0 > 0)
                cfg.gamma0 = mt_gamma0;
            return cmd_match(mt_g1, mt_g2, mt_seeds, mt_alg, cfg, mt_T, mt_out,
                             mt_stats);
        }
        if (ev->parsed())
            return cmd_eval(ev_matches, ev_truth, ev_g1, ev_g2, ev_count_seeds, ev_csv,
                            ev_alg, ev_pn, ev_pe, ev_seeds, ev_wrongfrac, ev_time,
                            ev_stats);
        if (pd->parsed())
            return cmd_ppr_debug(pd_graph, pd_source, pd_alpha, pd_rmax);
        if (vl->parsed())
            return cmd_validate_lemma1(lp);
        if (cs->parsed())
            return cmd_check_signatures(cs_n, cs_avg, cs_c, cs_trials, cs_seed);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
