#include "wml/cli.hpp"

#include "wml/census.hpp"
#include "wml/ensembles.hpp"
#include "wml/errors.hpp"
#include "wml/experiments.hpp"
#include "wml/statistics.hpp"
#include "wml/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace wml {

namespace {

using nlohmann::json;

struct Common {
    std::string graph;
    std::string ensemble = "goe";
    std::size_t d = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::string format;
    unsigned threads = 0;
};

json count_json(Count c) {
    if (fits_u64(c)) return static_cast<std::uint64_t>(c);
    return to_string(c);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) parts.push_back(cur);
    return parts;
}

template <class T>
std::vector<T> parse_grid(const std::string& text, const char* what) {
    std::vector<T> out;
    for (const std::string& tok : split(text, ',')) {
        std::size_t used = 0;
        T v{};
        try {
            if constexpr (std::is_floating_point_v<T>)
                v = std::stod(tok, &used);
            else
                v = static_cast<T>(std::stoull(tok, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.empty()) throw ParseError(std::string("bad ") + what + " entry '" + tok + "'", tok);
        out.push_back(v);
    }
    if (out.empty()) throw ParseError(std::string("empty ") + what, text);
    return out;
}

class Runner {
public:
    Runner(const std::vector<std::string>& args, std::ostream& out) : args_(args), out_(out) {}

    json meta(std::uint64_t seed) const {
        // The worker count never changes results, so it is left out of the echo.
        json echoed = json::array();
        for (std::size_t i = 0; i < args_.size(); ++i) {
            if (args_[i] == "--threads") {
                ++i;
                continue;
            }
            if (args_[i].rfind("--threads=", 0) == 0) continue;
            echoed.push_back(args_[i]);
        }
        return {{"version", WML_VERSION}, {"args", echoed}, {"seed", seed}};
    }

    void emit(const std::string& text, const std::string& path) const {
        if (path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw DomainError("cannot open output file '" + path + "'");
        f << text;
        if (!f) throw std::runtime_error("failed writing '" + path + "'");
    }

    int census_cmd(const Common& c) const {
        const Graph g = build_graph(parse_graph_spec(c.graph), c.seed);
        const SubgraphCensus cs = census(g);
        json j;
        j["meta"] = meta(c.seed);
        j["n"] = g.num_vertices();
        j["m"] = g.num_edges();
        j["oriented"] = g.is_oriented();
        for (const auto& [key, value] : census_fields(cs)) j[key] = count_json(value);
        emit(j.dump(2) + "\n", c.out);
        return exit_ok;
    }

    int kappa_cmd(const Common& c) const {
        const auto g = std::make_shared<const Graph>(build_graph(parse_graph_spec(c.graph), c.seed));
        const Ensemble ens = parse_ensemble(c.ensemble);
        if (ens == Ensemble::wishart && c.d < 1) throw DomainError("--d is required for the wishart ensemble");
        const std::uint64_t tag = ens == Ensemble::goe ? seed_tag::goe : seed_tag::wishart;
        Rng rng(derive_seed(c.seed, tag, 0));
        const MaskedMatrix m = ens == Ensemble::goe ? masked_goe(g, rng) : masked_wishart(g, c.d, rng);
        const StatisticPlan plan(*g);
        const Kappa4Breakdown k4 = plan.kappa4(m.values());
        json j;
        j["meta"] = meta(c.seed);
        j["ensemble"] = to_string(ens);
        if (ens == Ensemble::wishart) j["d"] = c.d;
        j["kappa3"] = plan.kappa3(m.values());
        j["kappa4"] = {{"c4_part", k4.c4_part}, {"p2_part", k4.p2_part}, {"e_part", k4.e_part}, {"total", k4.total}};
        if (plan.max_degree() > 0)
            j["kappa_r"] = plan.kappa_r(m.values());
        else
            j["kappa_r"] = nullptr;
        emit(j.dump(2) + "\n", c.out);
        return exit_ok;
    }

    int moments_cmd(const Common& c, const std::string& statistic) const {
        const auto g = std::make_shared<const Graph>(build_graph(parse_graph_spec(c.graph), c.seed));
        const Ensemble ens = parse_ensemble(c.ensemble);
        if (ens == Ensemble::wishart && c.d < 1) throw DomainError("--d is required for the wishart ensemble");
        if (c.trials < 2) throw DomainError("--trials must be at least 2");
        std::vector<Statistic> stats;
        if (statistic.empty() || statistic == "all") {
            stats = {Statistic::kappa3, Statistic::kappa4, Statistic::kappa4_c4, Statistic::kappa4_p2, Statistic::kappa4_e};
            if (g->num_edges() > 0) stats.push_back(Statistic::kappa_r);
        } else {
            stats = {parse_statistic(statistic)};
        }
        const std::optional<std::size_t> d = ens == Ensemble::wishart ? std::optional<std::size_t>(c.d) : std::nullopt;

        const StatisticPlan plan(*g);
        const bool need_r = std::find(stats.begin(), stats.end(), Statistic::kappa_r) != stats.end();
        if (need_r && plan.max_degree() == 0) throw InapplicableError("kappa_r needs a vertex of positive degree");
        constexpr int slots = 6;
        std::vector<double> values_out(c.trials * slots, 0.0);
        const std::uint64_t tag = ens == Ensemble::goe ? seed_tag::goe : seed_tag::wishart;
        parallel_blocks(c.trials, 256, c.threads, [&](std::size_t begin, std::size_t end, unsigned) {
            std::unique_ptr<WishartSampler> sampler;
            if (ens == Ensemble::wishart) sampler = std::make_unique<WishartSampler>(g, c.d);
            std::vector<double> v(g->num_edges());
            for (std::size_t i = begin; i < end; ++i) {
                Rng rng(derive_seed(c.seed, tag, i));
                if (sampler)
                    sampler->sample(rng, v);
                else
                    sample_goe(*g, rng, v);
                double* s = values_out.data() + i * slots;
                const Kappa4Breakdown k4 = plan.kappa4(v);
                s[0] = plan.kappa3(v);
                s[1] = k4.total;
                s[2] = k4.c4_part;
                s[3] = k4.p2_part;
                s[4] = k4.e_part;
                s[5] = need_r ? plan.kappa_r(v) : 0.0;
            }
        });

        const SubgraphCensus cs = census(*g);
        json results = json::array();
        for (Statistic st : stats) {
            const int slot = static_cast<int>(st);
            RunningMoments rm;
            std::vector<double> col(c.trials);
            for (std::size_t i = 0; i < c.trials; ++i) {
                col[i] = values_out[i * slots + slot];
                rm.add(col[i]);
            }
            double m4 = 0.0;
            for (double x : col) m4 += std::pow(x - rm.mean(), 4);
            m4 /= static_cast<double>(c.trials);
            const double var_se =
                std::sqrt(std::max(0.0, m4 - rm.variance() * rm.variance()) / static_cast<double>(c.trials));

            json r;
            r["statistic"] = to_string(st);
            r["ensemble"] = to_string(ens);
            double pmean, pvar;
            std::string mean_kind, var_kind;
            if (st == Statistic::kappa_r) {
                const KappaRLaw law = kappa_r_law(*g, d, ens);
                pmean = law.mean();
                pvar = law.variance();
                mean_kind = var_kind = "exact";
            } else {
                const MomentPrediction p = predicted_moments(cs, d, st, ens);
                pmean = p.mean;
                pvar = p.variance;
                mean_kind = to_string(p.mean_kind);
                var_kind = to_string(p.variance_kind);
                if (p.edge_constant) {
                    r["edge_constant"] = *p.edge_constant;
                    r["published_edge_constant"] = *p.published_edge_constant;
                }
            }
            r["predicted"] = {{"mean", pmean}, {"var", pvar}, {"mean_kind", mean_kind}, {"var_kind", var_kind}};
            r["empirical"] = {{"mean", rm.mean()}, {"var", rm.variance()}, {"stderr", rm.stderr_mean()}};
            r["n_trials"] = c.trials;
            json z;
            z["mean"] = rm.stderr_mean() > 0 ? (rm.mean() - pmean) / rm.stderr_mean() : 0.0;
            if (var_kind == "exact")
                z["var"] = var_se > 0 ? (rm.variance() - pvar) / var_se : 0.0;
            else
                z["var_over_bound"] = pvar > 0 ? rm.variance() / pvar : 0.0;
            r["z_scores"] = z;
            results.push_back(r);
        }
        json j;
        if (results.size() == 1) {
            j = results[0];
        } else {
            j["results"] = results;
        }
        j["meta"] = meta(c.seed);
        if (d) j["d"] = *d;
        emit(j.dump(2) + "\n", c.out);
        return exit_ok;
    }

    int verify_cmd(const Common& c, const std::string& suite) const {
        if (c.trials < 1000) throw DomainError("verify needs --trials >= 1000");
        std::vector<std::string> suites;
        if (suite == "all")
            suites = verify_suite_names();
        else
            suites = {suite};
        VerifyOptions opt;
        opt.trials = c.trials;
        opt.seed = c.seed;
        opt.threads = c.threads;
        json reports = json::array();
        bool ok = true;
        for (const std::string& s : suites) {
            const VerifyReport r = run_verify_suite(s, opt);
            ok = ok && r.passed();
            json items = json::array();
            for (const VerifyItem& it : r.items)
                items.push_back({{"name", it.name}, {"kind", to_string(it.kind)}, {"predicted", it.predicted},
                                 {"empirical", it.empirical}, {"stderr", it.std_error}, {"z", it.z},
                                 {"passed", it.passed}});
            reports.push_back({{"suite", r.suite}, {"trials", r.trials}, {"z_limit", r.z_limit}, {"passed", r.passed()},
                               {"items", items}});
        }
        json j;
        j["meta"] = meta(c.seed);
        j["passed"] = ok;
        j["suites"] = reports;
        emit(j.dump(2) + "\n", c.out);
        return ok ? exit_ok : exit_verification_failed;
    }

    int sweep_cmd(const Common& c, const SweepConfig& base, const std::string& p_grid, const std::string& d_grid,
                  const std::string& test, const std::string& gnuplot) const {
        SweepConfig cfg = base;
        cfg.p_grid = parse_grid<double>(p_grid, "p grid");
        cfg.d_grid = parse_grid<std::size_t>(d_grid, "d grid");
        cfg.test = parse_test(test);
        cfg.trials = c.trials;
        cfg.base_seed = c.seed;
        cfg.threads = c.threads;
        if (cfg.trials < 1) throw DomainError("--trials must be positive");
        const auto rows = phase_sweep(cfg);
        const std::string format = c.format.empty() ? "csv" : c.format;
        std::string text;
        if (format == "csv") {
            const json m = meta(c.seed);
            text += "# version " + m["version"].get<std::string>() + "\n";
            text += "# args " + m["args"].dump() + "\n";
            text += "# seed " + std::to_string(c.seed) + "\n";
            text += sweep_csv_header() + "\n";
            for (const SweepRow& r : rows) text += sweep_csv_row(r) + "\n";
        } else if (format == "json") {
            json arr = json::array();
            for (const SweepRow& r : rows) {
                json row = {{"family", r.family}, {"n", r.n}, {"p", r.p}, {"d", r.d}, {"test", to_string(r.test)},
                            {"inapplicable", r.inapplicable}, {"trials", r.estimate.trials}, {"seed", r.seed},
                            {"theory_threshold", r.theory_threshold}};
                row["m"] = r.m ? json(*r.m) : json(nullptr);
                if (!r.inapplicable) {
                    row["type1"] = r.estimate.type1;
                    row["type2"] = r.estimate.type2;
                    row["tv_lower"] = r.estimate.tv_lower;
                    row["stderr1"] = r.estimate.stderr1;
                    row["stderr2"] = r.estimate.stderr2;
                }
                arr.push_back(row);
            }
            text = json{{"meta", meta(c.seed)}, {"rows", arr}}.dump(2) + "\n";
        } else {
            throw ParseError("unknown format '" + format + "'", format);
        }
        emit(text, c.out);
        if (!gnuplot.empty()) {
            if (format != "csv" || c.out.empty()) throw DomainError("--emit-gnuplot needs --format csv and --out");
            std::ostringstream gp;
            gp << "# tv_lower against d, one curve per p\n"
               << "set datafile separator ','\n"
               << "set logscale x\n"
               << "set xlabel 'd'\nset ylabel 'tv lower bound'\n"
               << "set yrange [0:1]\nset key outside\n"
               << "plot for [p in '";
            for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.6g", cfg.p_grid[i]);
                gp << (i ? " " : "") << buf;
            }
            gp << "'] '" << c.out
               << "' using (strcol(4) eq p ? $5 : 1/0):9 every ::1 with linespoints title 'p='.p\n";
            std::ofstream f(gnuplot, std::ios::binary);
            if (!f) throw DomainError("cannot open gnuplot output '" + gnuplot + "'");
            f << gp.str();
        }
        return exit_ok;
    }

private:
    const std::vector<std::string>& args_;
    std::ostream& out_;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("WML_SEED")) {
        const std::string s(env);
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw ParseError("WML_SEED must be an unsigned integer", s);
        return v;
    }
    return 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Masked Wishart vs masked GOE: subgraph census, statistics and Monte Carlo checks", "wml"};
    app.require_subcommand(1);
    app.set_version_flag("--version", WML_VERSION);

    Common c;
    std::string statistic, suite = "all", p_grid, d_grid, test = "deg4", gnuplot;
    SweepConfig sweep;

    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", c.seed, "Base seed (default: $WML_SEED or 1)");
        sub->add_option("--out", c.out, "Output path (default: stdout)");
        sub->add_option("--threads", c.threads, "Worker threads (default: all cores)");
    };
    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", c.graph, "Graph spec, e.g. er:n=50,p=0.3")->required();
    };

    CLI::App* census_sub = app.add_subcommand("census", "Subgraph counts of a mask");
    add_graph(census_sub);
    add_seed(census_sub);
    census_sub->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

    CLI::App* kappa_sub = app.add_subcommand("kappa", "Statistics of one sample");
    add_graph(kappa_sub);
    add_seed(kappa_sub);
    kappa_sub->add_option("--ensemble", c.ensemble, "wishart or goe");
    kappa_sub->add_option("--d", c.d, "Wishart degrees of freedom");
    kappa_sub->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

    CLI::App* moments_sub = app.add_subcommand("moments", "Predicted vs empirical moments");
    add_graph(moments_sub);
    add_seed(moments_sub);
    moments_sub->add_option("--ensemble", c.ensemble, "wishart or goe");
    moments_sub->add_option("--d", c.d, "Wishart degrees of freedom");
    moments_sub->add_option("--trials", c.trials, "Monte Carlo trials")->required();
    moments_sub->add_option("--statistic", statistic, "kappa3, kappa4, kappa4_c4, kappa4_p2, kappa4_e, kappa_r or all");
    moments_sub->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

    CLI::App* verify_sub = app.add_subcommand("verify", "Bundled verification suites");
    add_seed(verify_sub);
    verify_sub->add_option("--suite", suite, "tables, appendixA, bartlett, kappa_laws or all");
    verify_sub->add_option("--trials", c.trials, "Monte Carlo trials (>= 1000)")->required();
    verify_sub->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));

    CLI::App* sweep_sub = app.add_subcommand("sweep", "Type I/II error over a (p, d) grid");
    add_seed(sweep_sub);
    sweep_sub->add_option("--family", sweep.family, "er, biper, kbip or complete")->required();
    sweep_sub->add_option("--n", sweep.n, "Vertex count (left side for bipartite families)")->required();
    sweep_sub->add_option("--m", sweep.m, "Right side size for bipartite families");
    sweep_sub->add_option("--p-grid", p_grid, "Comma-separated edge probabilities")->default_str("1");
    sweep_sub->add_option("--d-grid", d_grid, "Comma-separated degrees of freedom")->required();
    sweep_sub->add_option("--test", test, "deg3, deg4 or maxdeg");
    sweep_sub->add_option("--trials", c.trials, "Trials per hypothesis")->required();
    sweep_sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_sub->add_option("--emit-gnuplot", gnuplot, "Write a gnuplot script for the CSV");

    try {
        c.seed = default_seed();
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion&) {
        out << WML_VERSION << "\n";
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (p_grid.empty()) p_grid = "1";

    const Runner runner(args, out);
    try {
        if (*census_sub) return runner.census_cmd(c);
        if (*kappa_sub) return runner.kappa_cmd(c);
        if (*moments_sub) return runner.moments_cmd(c, statistic);
        if (*verify_sub) return runner.verify_cmd(c, suite);
        if (*sweep_sub) return runner.sweep_cmd(c, sweep, p_grid, d_grid, test, gnuplot);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (at '" << e.token() << "')\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InapplicableError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_verification_failed;
    }
    return exit_usage;
}

} // namespace wml
