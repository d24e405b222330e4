// pursuit: command-line laboratory for the cop-vs-gambler sweep strategy.
//
// Subcommands: gen, bounds, simulate, exact, cgrid, adversary, show-sweep.
// Exit codes: 0 success, 1 usage error, 2 constant-reproduction failure,
// 3 enumeration budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pursuit/adversary.hpp"
#include "pursuit/bounds.hpp"
#include "pursuit/exact.hpp"
#include "pursuit/gambler.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/mc.hpp"
#include "pursuit/sweep.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pursuit;

constexpr int kSchemaVersion = 1;

struct graph_source {
  std::string family;
  int n = 0;
  std::string file;
  double edge_prob = 0.5;
  std::uint64_t graph_seed = 0;

  graph load() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) raise(errc::invalid_parameter, "cannot open graph file: " + file);
      std::ostringstream buf;
      buf << in.rdbuf();
      return graph::parse(buf.str());
    }
    if (family.empty())
      raise(errc::invalid_parameter, "provide --family with --n, or --graph FILE");
    return graph::generate(parse_family(family), n, graph_seed, edge_prob);
  }

  std::string label() const { return file.empty() ? family : "file:" + file; }
};

void add_graph_options(CLI::App* cmd, graph_source& src) {
  auto* fam = cmd->add_option("--family", src.family,
                              "graph family: star|path|cycle|random_tree|gnp_connected");
  auto* n = cmd->add_option("--n", src.n, "vertex count");
  auto* file = cmd->add_option("--graph", src.file, "edge-list file instead of a family");
  cmd->add_option("--edge-prob", src.edge_prob, "edge probability for gnp_connected");
  cmd->add_option("--graph-seed", src.graph_seed,
                  "seed for random graph families (default: the global seed)");
  fam->needs(n);
  file->excludes(fam);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) raise(errc::invalid_parameter, "cannot open output file: " + out_path);
  out << text;
}

std::string format_csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

json distribution_to_json(const gambler_distribution& d) {
  json arr = json::array();
  for (double p : d.probs()) arr.push_back(p);
  return arr;
}

// ---------------------------------------------------------------- bounds ---

struct gate_failure {
  std::string name;
  double got = 0.0;
  std::string expected;
};

std::vector<gate_failure> check_report(const bound_report& r, bool default_c) {
  std::vector<gate_failure> fails;
  auto within = [&](const std::string& name, double got, double want, double tol) {
    if (std::abs(got - want) > tol)
      fails.push_back({name, got, "within " + std::to_string(tol) + " of " +
                                      std::to_string(want)});
  };
  within("pair_argmax", r.pair_argmax, 0.366, 1e-4);
  within("pair_max", r.pair_max, 0.16157, 1e-4);
  within("x_star", r.x_star, 2.72912, 1e-4);
  within("f_star", r.f_star, 1.95328, 1e-4);
  within("c_star", r.c_star, 0.72912, 1e-4);
  if (default_c) {
    if (!(r.evasion_cap_value < 0.17745))
      fails.push_back({"evasion_cap", r.evasion_cap_value, "< 0.17745"});
    within("evasion_cap", r.evasion_cap_value, 0.17745, 1e-4);
    within("expected_sweeps", r.expected_sweeps, 1.21574, 1e-5);
    if (!(r.total_coeff < 1.95335))
      fails.push_back({"total_coeff", r.total_coeff, "< 1.95335"});
  }
  return fails;
}

int run_bounds(double c, bool as_json, const std::string& out_path) {
  const bound_report r = make_bound_report(c);
  std::ostringstream out;
  if (as_json) {
    json j{{"schema_version", kSchemaVersion},
           {"command", "bounds"},
           {"c", r.wait_fraction},
           {"pair_argmax", r.pair_argmax},
           {"pair_max", r.pair_max},
           {"evasion_cap", r.evasion_cap_value},
           {"case_max_evasion", r.case_max_evasion},
           {"expected_sweeps", r.expected_sweeps},
           {"e_x_coeff", r.e_x_coeff},
           {"e_y_coeff", r.e_y_coeff},
           {"total_coeff", r.total_coeff},
           {"x_star", r.x_star},
           {"f_star", r.f_star},
           {"c_star", r.c_star}};
    out << j.dump() << '\n';
  } else {
    char line[128];
    auto row = [&](const char* name, double v) {
      std::snprintf(line, sizeof(line), "%-18s %.9f\n", name, v);
      out << line;
    };
    row("c", r.wait_fraction);
    row("pair_argmax", r.pair_argmax);
    row("pair_max", r.pair_max);
    row("evasion_cap", r.evasion_cap_value);
    row("case_max_evasion", r.case_max_evasion);
    row("expected_sweeps", r.expected_sweeps);
    row("e_x_coeff", r.e_x_coeff);
    row("e_y_coeff", r.e_y_coeff);
    row("total_coeff", r.total_coeff);
    row("x_star", r.x_star);
    row("f_star", r.f_star);
    row("c_star", r.c_star);
  }
  write_output(out.str(), out_path);

  const auto fails = check_report(r, std::abs(c - 0.72912) < 1e-12);
  for (const auto& f : fails)
    std::cerr << "constant check failed: " << f.name << " = " << f.got
              << ", expected " << f.expected << '\n';
  return fails.empty() ? 0 : 2;
}

// -------------------------------------------------------------- simulate ---

json simulate_record(const graph_source& src, const graph& g,
                     const strategy_config& cfg, const std::string& dist_spec,
                     std::uint64_t trials, std::uint64_t seed,
                     const capture_estimate& est) {
  return json{{"schema_version", kSchemaVersion},
              {"command", "simulate"},
              {"graph", src.label()},
              {"n", g.n()},
              {"c", cfg.wait_fraction},
              {"root", cfg.root},
              {"resample_wait_set", cfg.resample_wait_set},
              {"resample_direction", cfg.resample_direction},
              {"dist", dist_spec},
              {"trials", trials},
              {"seed", seed},
              {"mean", est.mean},
              {"stderr", est.std_error},
              {"mean_over_n", est.mean / g.n()},
              {"min", est.min_turns},
              {"max", est.max_turns}};
}

// ----------------------------------------------------------------- main ----

int run(int argc, char** argv) {
  CLI::App app{"cop-vs-gambler pursuit laboratory"};
  app.require_subcommand(1);
  app.set_config("--config");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a family graph as an edge list");
  graph_source gen_src;
  add_graph_options(gen, gen_src);
  std::string gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--seed", gen_seed, "seed for random families")->envname("SEED");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "reproduce the analytic constants");
  double bounds_c = 0.72912;
  bool bounds_json = false;
  std::string bounds_out;
  bounds_cmd->add_option("--c", bounds_c, "wait-set fraction");
  bounds_cmd->add_flag("--json", bounds_json, "emit a JSON record");
  bounds_cmd->add_option("--out", bounds_out, "output file (default stdout)");

  // shared strategy/distribution options
  struct run_options {
    graph_source src;
    double c = 0.72912;
    int root = 0;
    std::string dist = "uniform";
    std::uint64_t seed = 0;
    std::string out;
  };

  auto add_run_options = [](CLI::App* cmd, run_options& o) {
    add_graph_options(cmd, o.src);
    cmd->add_option("--c", o.c, "wait-set fraction (default 0.72912)");
    cmd->add_option("--root", o.root, "spanning tree root");
    cmd->add_option("--dist", o.dist,
                    "gambler distribution: uniform | point:<i> | w0,w1,...");
    cmd->add_option("--seed", o.seed, "master seed")->envname("SEED");
    cmd->add_option("--out", o.out, "output file (default stdout)");
  };

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo capture-time estimate");
  run_options sim_opt;
  std::uint64_t sim_trials = 100'000;
  int sim_threads = 1;
  std::string sim_format = "ndjson";
  bool sim_freeze_wait = false;
  bool sim_freeze_direction = false;
  add_run_options(sim, sim_opt);
  sim->add_option("--trials", sim_trials, "number of trials");
  sim->add_option("--threads", sim_threads, "worker threads (does not affect output)");
  sim->add_option("--format", sim_format, "ndjson | csv");
  sim->add_flag("--freeze-wait-set", sim_freeze_wait,
                "draw the wait set once per game instead of per sweep");
  sim->add_flag("--freeze-direction", sim_freeze_direction,
                "flip the direction coin once per game instead of per sweep");

  // exact
  auto* exact_cmd = app.add_subcommand("exact", "exact expected capture time");
  run_options exact_opt;
  std::string exact_mode = "auto";
  std::uint64_t exact_budget = 1'000'000;
  int exact_samples = 100'000;
  add_run_options(exact_cmd, exact_opt);
  exact_cmd->add_option("--mode", exact_mode, "auto | enumerated | sampled");
  exact_cmd->add_option("--budget", exact_budget, "max enumerated sweep variants");
  exact_cmd->add_option("--samples", exact_samples, "sweeps drawn in sampled mode");

  // cgrid
  auto* cgrid = app.add_subcommand("cgrid", "capture-time scan over wait fractions");
  run_options cgrid_opt;
  std::string cgrid_list = "0,0.25,0.5,0.72912,0.9";
  std::uint64_t cgrid_trials = 20'000;
  int cgrid_threads = 1;
  add_run_options(cgrid, cgrid_opt);
  cgrid->get_option("--c")->description("ignored; use --c-grid");
  cgrid->add_option("--c-grid", cgrid_list, "comma-separated wait fractions");
  cgrid->add_option("--trials", cgrid_trials, "trials per grid point");
  cgrid->add_option("--threads", cgrid_threads, "worker threads (does not affect output)");

  // adversary
  auto* adv = app.add_subcommand("adversary", "search for the worst gambler");
  run_options adv_opt;
  std::string adv_objective = "evasion";
  int adv_restarts = 8;
  int adv_iters = 200;
  std::string adv_mode = "auto";
  std::uint64_t adv_budget = 1'000'000;
  int adv_samples = 2'000;
  add_run_options(adv, adv_opt);
  adv->add_option("--objective", adv_objective, "evasion | capture-time");
  adv->add_option("--restarts", adv_restarts, "multi-start count");
  adv->add_option("--iters", adv_iters, "ascent iterations per restart");
  adv->add_option("--mode", adv_mode, "auto | enumerated | sampled");
  adv->add_option("--budget", adv_budget, "max enumerated sweep variants");
  adv->add_option("--samples", adv_samples, "sweeps drawn in sampled mode");

  // show-sweep
  auto* show = app.add_subcommand("show-sweep", "emit one sweep walk as JSON");
  run_options show_opt;
  add_run_options(show, show_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) {
    gen_src.graph_seed = gen->count("--graph-seed") ? gen_src.graph_seed : gen_seed;
    write_output(gen_src.load().to_edge_list(), gen_out);
    return 0;
  }

  if (bounds_cmd->parsed()) return run_bounds(bounds_c, bounds_json, bounds_out);

  auto make_config = [](const run_options& o) {
    strategy_config cfg;
    cfg.wait_fraction = o.c;
    cfg.root = o.root;
    return cfg;
  };
  auto resolve_graph = [](CLI::App* cmd, run_options& o) {
    if (!cmd->count("--graph-seed")) o.src.graph_seed = o.seed;
    return o.src.load();
  };

  if (sim->parsed()) {
    const graph g = resolve_graph(sim, sim_opt);
    const auto d = gambler_distribution::parse(sim_opt.dist, g.n());
    strategy_config cfg = make_config(sim_opt);
    cfg.resample_wait_set = !sim_freeze_wait;
    cfg.resample_direction = !sim_freeze_direction;
    const capture_estimate est = estimate_expected_capture(
        g, cfg, d, sim_trials, sim_opt.seed, sim_threads);
    const json rec = simulate_record(sim_opt.src, g, cfg, sim_opt.dist, sim_trials,
                                     sim_opt.seed, est);
    std::ostringstream out;
    if (sim_format == "csv") {
      out << "graph,n,c,dist,trials,seed,mean,stderr,mean_over_n,min,max\n"
          << csv_field(sim_opt.src.label()) << ',' << g.n() << ','
          << format_csv_double(sim_opt.c) << ',' << csv_field(sim_opt.dist) << ','
          << sim_trials << ',' << sim_opt.seed << ','
          << format_csv_double(est.mean) << ',' << format_csv_double(est.std_error)
          << ',' << format_csv_double(est.mean / g.n()) << ',' << est.min_turns << ','
          << est.max_turns << '\n';
    } else if (sim_format == "ndjson") {
      out << rec.dump() << '\n';
    } else {
      raise(errc::invalid_parameter, "unknown format: " + sim_format);
    }
    write_output(out.str(), sim_opt.out);
    return 0;
  }

  auto pick_mode = [](const std::string& mode_name, std::uint64_t budget, int samples,
                      std::uint64_t seed, const graph& g, double c) {
    if (mode_name == "enumerated") return aggregate_mode::enumerated(budget);
    if (mode_name == "sampled") return aggregate_mode::sampled(samples, seed);
    if (mode_name != "auto")
      raise(errc::invalid_parameter, "unknown mode: " + mode_name);
    const int k = wait_set_size(g.n(), c);
    if (enumeration_size(g.n(), k, budget)) return aggregate_mode::enumerated(budget);
    return aggregate_mode::sampled(samples, seed);
  };

  if (exact_cmd->parsed()) {
    const graph g = resolve_graph(exact_cmd, exact_opt);
    const auto d = gambler_distribution::parse(exact_opt.dist, g.n());
    const aggregate_mode mode = pick_mode(exact_mode, exact_budget, exact_samples,
                                          exact_opt.seed, g, exact_opt.c);
    const strategy_config cfg = make_config(exact_opt);
    const policy_stats stats = policy_sweep_aggregate(g, cfg, d, mode);
    const exact_capture_time t = expected_capture_time(g, cfg, d, mode);
    json rec{{"schema_version", kSchemaVersion},
             {"command", "exact"},
             {"graph", exact_opt.src.label()},
             {"n", g.n()},
             {"c", exact_opt.c},
             {"distribution", distribution_to_json(d)},
             {"q_bar", stats.mean_evasion},
             {"e_len_given_evade", stats.mean_len_given_evade},
             {"e_turn_given_capture", stats.mean_turn_given_capture},
             {"expected_capture_time", t.value},
             {"expected_capture_time_over_n", t.value / g.n()},
             {"mode", stats.kind == aggregate_kind::enumerated ? "enumerated" : "sampled"},
             {"variants", stats.variants},
             {"seed", exact_opt.seed}};
    if (stats.kind == aggregate_kind::sampled)
      rec["stderr_evasion"] = stats.stderr_evasion;
    write_output(rec.dump() + "\n", exact_opt.out);
    return 0;
  }

  if (cgrid->parsed()) {
    const graph g = resolve_graph(cgrid, cgrid_opt);
    const auto d = gambler_distribution::parse(cgrid_opt.dist, g.n());
    std::ostringstream out;
    out << "graph,n,c,dist,trials,seed,mean,stderr,mean_over_n\n";
    std::stringstream tokens(cgrid_list);
    std::string token;
    while (std::getline(tokens, token, ',')) {
      if (token.empty()) raise(errc::invalid_parameter, "empty c-grid entry");
      strategy_config cfg;
      cfg.root = cgrid_opt.root;
      cfg.wait_fraction = std::stod(token);
      const capture_estimate est = estimate_expected_capture(
          g, cfg, d, cgrid_trials, cgrid_opt.seed, cgrid_threads);
      out << csv_field(cgrid_opt.src.label()) << ',' << g.n() << ',' << token << ','
          << csv_field(cgrid_opt.dist) << ',' << cgrid_trials << ',' << cgrid_opt.seed << ','
          << format_csv_double(est.mean) << ',' << format_csv_double(est.std_error)
          << ',' << format_csv_double(est.mean / g.n()) << '\n';
    }
    write_output(out.str(), cgrid_opt.out);
    return 0;
  }

  if (adv->parsed()) {
    const graph g = resolve_graph(adv, adv_opt);
    adversary_options options;
    options.restarts = adv_restarts;
    options.max_iters = adv_iters;
    options.seed = adv_opt.seed;
    options.mode =
        pick_mode(adv_mode, adv_budget, adv_samples, adv_opt.seed, g, adv_opt.c);
    const strategy_config cfg = make_config(adv_opt);
    if (adv_objective != "evasion" && adv_objective != "capture-time")
      raise(errc::invalid_parameter, "unknown objective: " + adv_objective);
    const adversary_result r = adv_objective == "capture-time"
                                   ? maximize_capture_time(g, cfg, options)
                                   : maximize_evasion(g, cfg, options);
    json rec{{"schema_version", kSchemaVersion},
             {"command", "adversary"},
             {"graph", adv_opt.src.label()},
             {"n", g.n()},
             {"c", adv_opt.c},
             {"objective", adv_objective},
             {"best_objective", r.best_objective},
             {"best_distribution", distribution_to_json(r.best_distribution)},
             {"iterations", r.iterations},
             {"restarts", r.restarts},
             {"grad_norm", r.grad_norm},
             {"mode", options.mode.kind == aggregate_kind::enumerated ? "enumerated"
                                                                      : "sampled"},
             {"seed", adv_opt.seed}};
    write_output(rec.dump() + "\n", adv_opt.out);
    return 0;
  }

  if (show->parsed()) {
    const graph g = resolve_graph(show, show_opt);
    const sweep_context ctx = make_sweep_context(g, make_config(show_opt));
    rng64 rng(show_opt.seed);
    const sweep_walk w = build_sweep(ctx, rng);
    json rec{{"schema_version", kSchemaVersion},
             {"command", "show_sweep"},
             {"graph", show_opt.src.label()},
             {"n", g.n()},
             {"c", show_opt.c},
             {"root", w.root},
             {"direction", w.direction == sweep_direction::forward ? "forward" : "backward"},
             {"wait_set", w.wait_set},
             {"visits", w.visits},
             {"seed", show_opt.seed}};
    write_output(rec.dump() + "\n", show_opt.out);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const game_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == errc::budget_exceeded ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
