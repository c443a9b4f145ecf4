#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccasc/cascade.hpp"
#include "ccasc/csv.hpp"
#include "ccasc/gaussian.hpp"
#include "ccasc/verify.hpp"
#include "ccasc/welfare.hpp"

namespace ccasc::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsageError = 2;

struct RunConfig {
    ModelParams params;
    std::vector<double> k_grid;
    std::vector<double> lambdas{1.0};
    std::vector<double> F_list;
    BeliefDistribution mu_grid;
    double mu = 0.5;
    double rho = 1.0;
    std::optional<double> p1;
    int horizon = 100;
    int n_paths = 1000;
    std::uint64_t seed = 0;
    double mu0 = 0.5;
    std::optional<int> fixed_theta;
    std::string output;
    std::string summary;
    std::string table;
    std::string format = "csv";

    RunConfig() {
        params.bonus = {BonusKind::Proportional, 0.0};
        for (int i = 0; i < 13; ++i) k_grid.push_back(1.2 * i / 12.0);
    }
};

// Numeric table rendered as CSV (17-digit cells) or a JSON record array.
struct OutTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::vector<double>& add_row() { return rows.emplace_back(); }

    std::string render(const std::string& format) const {
        if (format == "csv") {
            CsvWriter w;
            w.header(columns);
            for (const auto& row : rows) {
                for (double v : row) w.field(v);
                w.end_row();
            }
            return w.str();
        }
        if (format == "json") {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& row : rows) {
                nlohmann::ordered_json rec;
                for (std::size_t i = 0; i < columns.size(); ++i) {
                    if (std::isfinite(row[i])) {
                        rec[columns[i]] = row[i];
                    } else {
                        rec[columns[i]] = format_double(row[i]);  // "inf"/"-inf"
                    }
                }
                arr.push_back(rec);
            }
            return arr.dump(2) + "\n";
        }
        throw std::invalid_argument("format must be 'csv' or 'json'");
    }
};

BonusKind parse_kind(const std::string& s) {
    if (s == "proportional") return BonusKind::Proportional;
    if (s == "fixed") return BonusKind::FixedIndicator;
    throw std::invalid_argument("bonus kind must be 'proportional' or 'fixed'");
}

PopularitySource parse_mode(const std::string& s) {
    if (s == "proxy") return PopularitySource::ProxyFromBelief;
    if (s == "empirical") return PopularitySource::EmpiricalCounts;
    throw std::invalid_argument("popularity mode must be 'proxy' or 'empirical'");
}

std::vector<double> parse_grid_json(const nlohmann::json& j, const char* what) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (const auto& v : j) grid.push_back(v.get<double>());
    } else if (j.is_object()) {
        for (const auto& [key, _] : j.items()) {
            if (key != "lo" && key != "hi" && key != "n") {
                throw std::invalid_argument(std::string("unknown key '") + key + "' in " +
                                            what);
            }
        }
        const double lo = j.at("lo").get<double>();
        const double hi = j.at("hi").get<double>();
        const int n = j.at("n").get<int>();
        if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
        for (int i = 0; i < n; ++i) {
            grid.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        }
    } else {
        throw std::invalid_argument(std::string(what) + " must be an array or {lo,hi,n}");
    }
    if (grid.empty()) throw std::invalid_argument(std::string(what) + " is empty");
    return grid;
}

// Flat JSON config; unknown keys are rejected, CLI flags override afterwards.
void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_object()) throw std::invalid_argument("config root must be an object");
    for (const auto& [key, val] : doc.items()) {
        if (key == "kind") {
            cfg.params.bonus.kind = parse_kind(val.get<std::string>());
        } else if (key == "k") {
            cfg.params.bonus.k = val.get<double>();
        } else if (key == "cost_c") {
            cfg.params.cost_c = val.get<double>();
        } else if (key == "cost_F") {
            cfg.params.cost_F = val.get<double>();
        } else if (key == "rho_max") {
            cfg.params.rho_max = val.get<double>();
        } else if (key == "popularity_mode") {
            cfg.params.popularity_mode = parse_mode(val.get<std::string>());
        } else if (key == "tie_action") {
            cfg.params.uninformed_tie_action = val.get<int>();
        } else if (key == "k_grid") {
            cfg.k_grid = parse_grid_json(val, "k_grid");
        } else if (key == "lambda") {
            cfg.lambdas = {val.get<double>()};
        } else if (key == "lambda_list") {
            cfg.lambdas = parse_grid_json(val, "lambda_list");
        } else if (key == "F_list") {
            cfg.F_list = parse_grid_json(val, "F_list");
        } else if (key == "mu_grid") {
            const auto grid = parse_grid_json(val, "mu_grid");
            cfg.mu_grid.lo = grid.front();
            cfg.mu_grid.hi = grid.back();
            cfg.mu_grid.n_points = static_cast<int>(grid.size());
        } else if (key == "mu") {
            cfg.mu = val.get<double>();
        } else if (key == "rho") {
            cfg.rho = val.get<double>();
        } else if (key == "p1") {
            cfg.p1 = val.get<double>();
        } else if (key == "horizon") {
            cfg.horizon = val.get<int>();
        } else if (key == "n_paths") {
            cfg.n_paths = val.get<int>();
        } else if (key == "seed") {
            cfg.seed = val.get<std::uint64_t>();
        } else if (key == "mu0") {
            cfg.mu0 = val.get<double>();
        } else if (key == "theta") {
            cfg.fixed_theta = val.get<int>();
        } else if (key == "output") {
            cfg.output = val.get<std::string>();
        } else if (key == "summary") {
            cfg.summary = val.get<std::string>();
        } else if (key == "table") {
            cfg.table = val.get<std::string>();
        } else if (key == "format") {
            cfg.format = val.get<std::string>();
            if (cfg.format != "csv" && cfg.format != "json") {
                throw std::invalid_argument("format must be 'csv' or 'json'");
            }
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.output.empty()) {
        out << content;
    } else {
        write_file(cfg.output, content);
    }
}

std::string fd(double v) { return format_double(v); }

// --- subcommands ---------------------------------------------------------

// cutoff/threshold: point queries for (mu, k, rho).
int cmd_cutoff(const RunConfig& cfg, std::ostream& out) {
    const Popularity pop = cfg.p1 ? Popularity{*cfg.p1, PopularitySource::EmpiricalCounts}
                                  : Popularity::proxy(cfg.mu);
    const Cutoff c = posterior_cutoff(cfg.params.bonus, pop);
    out << "p1 = " << fd(pop.p1) << "\n";
    out << "delta = " << fd(bonus_differential(cfg.params.bonus, pop)) << "\n";
    out << "cutoff = " << fd(c.raw) << "\n";
    out << "cutoff_clamped = " << fd(c.clamped) << "\n";
    if (cfg.params.bonus.kind == BonusKind::Proportional) {
        const double proxy = proxy_cutoff(cfg.params.bonus.k, cfg.mu);
        out << "proxy_cutoff = " << fd(proxy) << "\n";
        out << "s_star = " << fd(signal_threshold(cfg.mu, c.raw, cfg.rho)) << "\n";
        if (proxy > 0.0 && proxy < 1.0) {
            out << "ds_star_dk = "
                << fd(threshold_k_sensitivity(cfg.mu, cfg.params.bonus.k, cfg.rho)) << "\n";
        } else {
            out << "ds_star_dk = n/a (proxy cutoff outside (0,1))\n";
        }
    } else {
        out << "s_star = " << fd(signal_threshold(cfg.mu, c.raw, cfg.rho)) << "\n";
        out << "ds_star_dk = n/a (proportional bonus only)\n";
    }
    return kOk;
}

int cmd_precision(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<double> mus = cfg.mu_grid.points();
    OutTable t;
    t.columns = {"mu", "k", "rho_star", "invests", "net_value", "s_star"};
    for (double k : cfg.k_grid) {
        const auto profile = precision_profile(k, cfg.params, mus);
        for (const EquilibriumPoint& ep : profile) {
            t.add_row() = {ep.mu,
                           ep.k,
                           ep.rho_star,
                           ep.invests ? 1.0 : 0.0,
                           ep.net_value_of_information,
                           ep.s_star};
            if (ep.hit_search_bound) {
                err << "warning: rho search bound reached at mu=" << fd(ep.mu)
                    << " k=" << fd(ep.k) << "\n";
            }
        }
    }
    emit(cfg, t.render(cfg.format), out);
    return kOk;
}

int cmd_invest_region(const RunConfig& cfg, std::ostream& out) {
    const std::vector<double> mus = cfg.mu_grid.points();
    const std::vector<double> Fs =
        cfg.F_list.empty() ? std::vector<double>{cfg.params.cost_F} : cfg.F_list;
    OutTable t;
    t.columns = {"k", "F", "mu_lo", "mu_hi"};
    for (double F : Fs) {
        ModelParams params = cfg.params;
        params.cost_F = F;
        for (double k : cfg.k_grid) {
            const InvestmentRegion region = investment_region(k, params, mus);
            for (const auto& [lo, hi] : region.intervals) {
                t.add_row() = {k, F, lo, hi};
            }
        }
    }
    emit(cfg, t.render(cfg.format), out);
    return kOk;
}

int cmd_welfare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    OutTable t;
    t.columns = {"lambda", "k", "avg", "min", "max"};
    for (double lambda : cfg.lambdas) {
        const auto curve = welfare_curve(cfg.k_grid, lambda, cfg.params, cfg.mu_grid);
        std::vector<double> values;
        for (const auto& pt : curve) {
            values.push_back(pt.aggregate.average);
            t.add_row() = {lambda, pt.k, pt.aggregate.average, pt.aggregate.min,
                           pt.aggregate.max};
        }
        if (values.size() >= 3) {
            err << "lambda=" << fd(lambda) << ": shape " << to_string(detect_shape(values))
                << "\n";
        }
    }
    emit(cfg, t.render(cfg.format), out);

    if (!cfg.table.empty()) {
        // side-by-side comparison for the light-cost calibration (lambda = 1)
        ModelParams params = cfg.params;
        params.cost_c = 0.6;
        params.cost_F = 0.06;
        OutTable cmp;
        cmp.columns = {"k",         "avg",       "min",       "max",
                       "paper_avg", "paper_min", "paper_max", "delta"};
        for (const ReferenceWelfareRow& row : reference_welfare_table()) {
            const AggregateWelfare agg = aggregate_welfare(row.k, 1.0, params, cfg.mu_grid);
            cmp.add_row() = {row.k,   agg.average, agg.min, agg.max,
                             row.avg, row.min,     row.max, agg.average - row.avg};
        }
        write_file(cfg.table, cmp.render(cfg.format));
    }
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    SimConfig sim;
    sim.params = cfg.params;
    sim.horizon = cfg.horizon;
    sim.seed = cfg.seed;
    sim.mu0 = cfg.mu0;
    sim.fixed_theta = cfg.fixed_theta;
    sim.validate();

    const EnsembleStats stats = ensemble_statistics(sim, cfg.n_paths);
    const std::string summary = ensemble_to_json(stats);
    if (cfg.summary.empty()) {
        out << summary << "\n";
    } else {
        write_file(cfg.summary, summary);
    }

    if (!cfg.output.empty()) {
        PrecisionCache cache(sim.params);
        std::vector<CascadePath> paths;
        paths.reserve(static_cast<std::size_t>(cfg.n_paths));
        for (int i = 0; i < cfg.n_paths; ++i) {
            SimConfig one = sim;
            one.seed = sim.seed + static_cast<std::uint64_t>(i);
            paths.push_back(simulate_path(one, cache));
        }
        write_file(cfg.output, paths_to_csv(paths));
    }
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::vector<std::string> checks, std::ostream& out,
               std::ostream& err) {
    VerifyContext ctx = VerifyContext::defaults();
    ctx.sim.seed = cfg.seed ? cfg.seed : ctx.sim.seed;
    if (checks.empty()) checks = all_check_ids();
    const std::vector<CheckReport> reports = run_all(ctx, checks);
    const std::string json = reports_to_json(reports, true);
    if (cfg.output.empty()) {
        out << json << "\n";
    } else {
        write_file(cfg.output, json);
    }
    for (const CheckReport& r : reports) {
        err << (r.passed ? "[ok]   " : "[FAIL] ") << r.check_id << " ("
            << r.violations.size() << " violations)\n";
    }
    return all_passed(reports) ? kOk : kCheckFailure;
}

// Runs both calibrations end to end and writes the bundle of reports.
int cmd_reproduce(const RunConfig& cfg, const std::string& out_dir, std::ostream& out,
                  std::ostream& err) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    ModelParams light;
    light.bonus = {BonusKind::Proportional, 0.0};
    light.cost_c = 0.6;
    light.cost_F = 0.06;
    ModelParams heavy = light;
    heavy.cost_F = 0.16;

    RunConfig sub = cfg;
    sub.params = light;
    sub.format = "csv";

    // equilibrium precision profiles
    sub.output = path("precision_profiles.csv");
    cmd_precision(sub, out, err);

    // investment regions for three fixed costs
    sub.output = path("invest_regions.csv");
    sub.F_list = {0.06, 0.11, 0.16};
    cmd_invest_region(sub, out);
    sub.F_list.clear();

    // welfare curves for three evaluator weights on the heavy calibration
    sub.params = heavy;
    sub.lambdas = {0.0, 0.5, 1.0};
    sub.output = path("welfare_curves.csv");
    sub.table = path("welfare_table_comparison.csv");
    cmd_welfare(sub, out, err);

    // ensemble on the light calibration with a moderate contrarian taste
    sub.params = light;
    sub.params.bonus.k = 0.4;
    sub.horizon = 100;
    sub.n_paths = 2000;
    sub.seed = cfg.seed ? cfg.seed : 12345;
    sub.output = "";
    sub.summary = path("ensemble_summary.json");
    cmd_simulate(sub, out);

    // verification verdicts
    sub.output = path("verify_report.json");
    const int verify_rc = cmd_verify(sub, {}, out, err);

    err << "reproduction bundle written to " << out_dir << "\n";
    return verify_rc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"contrarian social-learning cascade engine"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string kind_str;
    std::string mode_str;
    int threads = 0;
    int theta_flag = -1;
    std::vector<std::string> checks;
    std::string out_dir = "reproduction";

    app.add_option("--config", config_path, "flat JSON config file (flags override)");
    app.add_option("--threads", threads, "worker thread count (or env CCASC_THREADS)");

    const auto add_model_flags = [&](CLI::App* sub) {
        sub->add_option("--kind", kind_str, "bonus kind: proportional|fixed");
        sub->add_option("--k", cfg.params.bonus.k, "contrarian intensity");
        sub->add_option("--c", cfg.params.cost_c, "quadratic precision cost coefficient");
        sub->add_option("--F", cfg.params.cost_F, "fixed acquisition cost");
        sub->add_option("--rho-max", cfg.params.rho_max, "precision search bound");
        sub->add_option("--mode", mode_str, "popularity mode: proxy|empirical");
    };
    const auto add_grid_flags = [&](CLI::App* sub) {
        sub->add_option("--k-grid", cfg.k_grid, "k grid values")->expected(-1);
        sub->add_option("--mu-lo", cfg.mu_grid.lo, "belief grid lower end");
        sub->add_option("--mu-hi", cfg.mu_grid.hi, "belief grid upper end");
        sub->add_option("--mu-n", cfg.mu_grid.n_points, "belief grid points");
        sub->add_option("--format", cfg.format, "output format: csv|json");
    };

    CLI::App* cutoff = app.add_subcommand("cutoff", "posterior cutoff at (mu, k)");
    CLI::App* threshold =
        app.add_subcommand("threshold", "signal threshold and sensitivity at (mu, k, rho)");
    for (CLI::App* sub : {cutoff, threshold}) {
        add_model_flags(sub);
        sub->add_option("--mu", cfg.mu, "public belief");
        sub->add_option("--rho", cfg.rho, "signal precision");
        sub->add_option("--p1", [&cfg](const std::vector<std::string>& vals) {
            cfg.p1 = std::stod(vals.front());
            return true;
        }, "empirical popularity of action 1 (default: belief proxy)");
    }

    CLI::App* precision = app.add_subcommand("precision", "rho*(mu,k) profile CSV");
    add_model_flags(precision);
    add_grid_flags(precision);
    precision->add_option("-o,--output", cfg.output, "output CSV path (default stdout)");

    CLI::App* invest = app.add_subcommand("invest-region", "investment region endpoints CSV");
    add_model_flags(invest);
    add_grid_flags(invest);
    invest->add_option("--F-list", cfg.F_list, "fixed costs to sweep")->expected(-1);
    invest->add_option("-o,--output", cfg.output, "output CSV path (default stdout)");

    CLI::App* welfare = app.add_subcommand("welfare", "aggregate welfare curves CSV");
    add_model_flags(welfare);
    add_grid_flags(welfare);
    welfare->add_option("--lambda", cfg.lambdas, "evaluator weights")->expected(-1);
    welfare->add_option("--table", cfg.table, "also write the comparison table CSV here");
    welfare->add_option("-o,--output", cfg.output, "output CSV path (default stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo cascade ensembles");
    add_model_flags(simulate);
    simulate->add_option("--horizon", cfg.horizon, "agents per path");
    simulate->add_option("--paths", cfg.n_paths, "number of paths");
    simulate->add_option("--seed", cfg.seed, "base seed (path i uses seed+i)");
    simulate->add_option("--mu0", cfg.mu0, "initial public belief");
    simulate->add_option("--theta", theta_flag, "fix the true state (0 or 1)");
    simulate->add_option("-o,--output", cfg.output, "paths CSV file");
    simulate->add_option("--summary", cfg.summary, "summary JSON file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "run verification checks");
    std::string check_help = "check ids (default: all):";
    for (const std::string& id : all_check_ids()) check_help += " " + id;
    verify->add_option("--check", checks, check_help)->expected(-1);
    verify->add_option("--seed", cfg.seed, "ensemble seed");
    verify->add_option("-o,--output", cfg.output, "verdict JSON file (default stdout)");

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "run both calibrations end to end");
    reproduce->add_option("--out-dir", out_dir, "output directory");
    reproduce->add_option("--seed", cfg.seed, "ensemble seed");

    // The config file seeds the defaults, so it must load before flag parsing
    // assigns over it ("flags override file values").  Prescan for --config.
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) {
                config_path = args[i + 1];
            } else if (args[i].rfind("--config=", 0) == 0) {
                config_path = args[i].substr(9);
            }
        }
        if (!config_path.empty()) apply_config_file(cfg, config_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    std::vector<std::string> argv(args);
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (!kind_str.empty()) cfg.params.bonus.kind = parse_kind(kind_str);
        if (!mode_str.empty()) cfg.params.popularity_mode = parse_mode(mode_str);
        if (theta_flag != -1) cfg.fixed_theta = theta_flag;
        if (threads > 0) {
            setenv("CCASC_THREADS", std::to_string(threads).c_str(), 1);
        }
        cfg.params.validate();
        cfg.mu_grid.validate();

        if (cutoff->parsed() || threshold->parsed()) return cmd_cutoff(cfg, out);
        if (precision->parsed()) return cmd_precision(cfg, out, err);
        if (invest->parsed()) return cmd_invest_region(cfg, out);
        if (welfare->parsed()) return cmd_welfare(cfg, out, err);
        if (simulate->parsed()) return cmd_simulate(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, checks, out, err);
        if (reproduce->parsed()) return cmd_reproduce(cfg, out_dir, out, err);
        err << "error: no subcommand\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailure;
    }
}

}  // namespace ccasc::cli
