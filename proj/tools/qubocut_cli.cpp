// qubocut: batch CLI for warm-started QAOA on QUBOs via Max-Cut reductions.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qubocut/experiment.hpp"
#include "qubocut/json_io.hpp"
#include "qubocut/metrics.hpp"

namespace fs = std::filesystem;
using namespace qubocut;

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == ',') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

std::vector<RunRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) records.push_back(record_from_json(Json::parse(line)));
  return records;
}

// shared experiment flags; the optional --config JSON takes precedence
struct RunFlags {
  std::string kinds = "random-continuous,random-discrete,tsp,portfolio,mis-gnp,mis-nws";
  int instances = 5;
  std::string depths = "0,1,2,3,4,5";
  std::string warmstarts = "gw2,gw3,bm2,bm3,box,uniform";
  std::string rotations = "last,first,none";
  std::string box_variants = "10,50";
  int bm_iters = 100;
  int bm_restarts = 50;
  double eta = 0.05;
  int gw_bases = 50;
  int starts = 10;
  bool inherit_best = true;
  int max_evals = 0;
  double eps = 0.1;
  int variables = 16;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int jobs = 0;
  std::string config_path;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--kinds", f.kinds, "problem kinds (csv)");
  cmd->add_option("--instances", f.instances, "instances per kind");
  cmd->add_option("--depth,--depths", f.depths, "QAOA depths to run (csv)");
  cmd->add_option("--warmstarts", f.warmstarts, "warm-start kinds (csv)");
  cmd->add_option("--rotate", f.rotations,
                  "vertex-at-top rotations: first|last|none|<index> (csv)");
  cmd->add_option("--box-restarts", f.box_variants,
                  "restart counts for the box warm-start (csv)");
  cmd->add_option("--bm-iters", f.bm_iters, "BM stochastic sweeps per restart");
  cmd->add_option("--bm-restarts", f.bm_restarts, "BM/GW restarts");
  cmd->add_option("--eta", f.eta, "BM perturbation step size");
  cmd->add_option("--gw-bases", f.gw_bases, "random frames for GW projection");
  cmd->add_option("--starts", f.starts, "optimizer starts per depth");
  cmd->add_flag("--inherit-best,!--no-inherit", f.inherit_best,
                "seed depth p from the depth p-1 winner (default on)");
  cmd->add_option("--max-evals", f.max_evals,
                  "objective evaluations per start (0 = 200*depth)");
  cmd->add_option("--eps", f.eps, "clamping epsilon for the box encoding");
  cmd->add_option("--variables", f.variables, "QUBO size per instance");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--out", f.out_dir, "output directory");
  cmd->add_option("--jobs", f.jobs, "worker threads (0 = hardware)");
  cmd->add_option("--config", f.config_path,
                  "JSON config file; values in it override flags");
}

ExperimentConfig config_from_flags(const RunFlags& f) {
  ExperimentConfig cfg;
  cfg.kinds.clear();
  for (const std::string& k : split_csv(f.kinds))
    cfg.kinds.push_back(problem_kind_from_string(k));
  cfg.instances_per_kind = f.instances;
  cfg.depths.clear();
  for (const std::string& d : split_csv(f.depths))
    cfg.depths.push_back(std::stoi(d));
  cfg.warmstarts.clear();
  for (const std::string& w : split_csv(f.warmstarts))
    cfg.warmstarts.push_back(warmstart_from_string(w));
  cfg.rotations.clear();
  for (const std::string& r : split_csv(f.rotations))
    cfg.rotations.push_back(RotationChoice::parse(r));
  cfg.box_restarts_variants.clear();
  for (const std::string& b : split_csv(f.box_variants))
    cfg.box_restarts_variants.push_back(std::stoi(b));
  cfg.relax.iterations = f.bm_iters;
  cfg.relax.restarts = f.bm_restarts;
  cfg.relax.eta = f.eta;
  cfg.relax.bases_sampled = f.gw_bases;
  cfg.opt.starts = f.starts;
  cfg.opt.inherit_best = f.inherit_best;
  cfg.opt.max_evals = f.max_evals;
  cfg.eps = f.eps;
  cfg.variables = f.variables;
  cfg.master_seed = f.seed;
  cfg.out_dir = f.out_dir;
  cfg.jobs = f.jobs;
  if (!f.config_path.empty())
    cfg = experiment_config_from_json(load_json_file(f.config_path), cfg);
  cfg.validate();
  return cfg;
}

Json instance_metadata(ProblemKind kind, std::uint64_t seed, int n) {
  switch (kind) {
    case ProblemKind::Tsp: {
      const int cities =
          std::max(3, static_cast<int>(std::lround(std::sqrt(double(n)))) + 1);
      const auto [inst, qubo] = gen_tsp(seed, cities);
      Json points = Json::array();
      for (const auto& p : inst.points)
        points.push_back(Json::array({p.x(), p.y()}));
      return Json{{"cities", cities}, {"points", points},
                  {"lambda", inst.lambda}};
    }
    case ProblemKind::Portfolio: {
      const auto [inst, qubo] = gen_portfolio(seed, n, std::max(1, n / 2));
      return Json{{"budget", inst.budget},
                  {"risk", inst.risk},
                  {"lambda", inst.lambda}};
    }
    case ProblemKind::MisGnp:
    case ProblemKind::MisNws: {
      const auto [inst, qubo] = gen_mis(
          kind == ProblemKind::MisGnp ? MisModel::Gnp : MisModel::Nws, seed, n);
      Json edges = Json::array();
      for (auto [u, v] : inst.edges) edges.push_back(Json::array({u, v}));
      return Json{{"edges", edges}, {"penalty", inst.penalty}};
    }
    default:
      return Json::object();
  }
}

int cmd_gen(const std::string& kind_name, int n, std::uint64_t seed, int count,
            const std::string& out_dir) {
  const ProblemKind kind = problem_kind_from_string(kind_name);
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t instance_seed =
        count == 1 ? seed : derive_seed(seed, "instance", kind_name, i);
    const GeneratedInstance g = generate_scaled(kind, instance_seed, n);
    Json j = instance_to_json(g);
    j["metadata"] = instance_metadata(kind, instance_seed, n);
    const fs::path path = fs::path(out_dir) / (to_string(kind) + "-" +
                                               std::to_string(instance_seed) +
                                               ".json");
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    std::cout << path.string() << "  n=" << g.qubo.size() << '\n';
  }
  return 0;
}

int cmd_relax(const std::string& in_path, const std::string& method,
              const RelaxConfig& rc, int box_restarts,
              const std::string& out_path) {
  const Qubo qubo = qubo_from_json(load_json_file(in_path));
  Json out;
  out["method"] = method;
  if (method == "box") {
    const BoxPoint p = solve_box_relaxed(qubo, box_restarts, rc.rng_seed);
    out.update(to_json(p));
    Eigen::Map<const Vector> y(p.y_c.data(), p.size());
    out["value"] = y.dot(qubo.q * y);
  } else {
    const MaxCutInstance m = qubo_to_maxcut(qubo);
    const int k = method == "bm2" || method == "gw2" ? 2 : 3;
    RelaxedEmbedding emb;
    if (method == "bm2" || method == "bm3") {
      emb = solve_bm(m, k, rc);
    } else if (method == "gw2" || method == "gw3") {
      emb = project_gw(solve_gw(m, rc), m, k, rc);
    } else {
      throw std::invalid_argument("unknown relaxation method '" + method + "'");
    }
    out.update(to_json(emb));
    out["objective"] = relaxation_objective(m, emb);
    out["offset"] = m.offset;
  }
  if (out_path.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::ofstream file(out_path);
    file << out.dump(2) << '\n';
    std::cout << out_path << '\n';
  }
  return 0;
}

int cmd_run(const RunFlags& flags) {
  const ExperimentConfig cfg = config_from_flags(flags);
  const ExperimentResult result = run_experiment(cfg);
  int failed = 0;
  for (const RunRecord& r : result.records)
    if (r.status != "ok") ++failed;
  std::cout << "records: " << result.records.size() << "  failed: " << failed
            << "\naggregate rows: " << result.table.size() << '\n';
  if (!cfg.out_dir.empty())
    std::cout << "outputs under " << cfg.out_dir << "/{instances,records,aggregates,plots}\n";
  return result.any_failed ? 1 : 0;
}

int cmd_sweep0(const RunFlags& flags, const std::string& csv_out) {
  ExperimentConfig cfg = config_from_flags(flags);
  const std::vector<VertexSweepRow> rows = vertex_sweep(cfg);
  const std::string csv = vertex_sweep_to_csv(rows);
  if (!csv_out.empty()) {
    fs::create_directories(fs::path(csv_out).parent_path().empty()
                               ? "."
                               : fs::path(csv_out).parent_path().string());
    write_text_file(csv_out, csv);
    std::cout << csv_out << '\n';
  } else {
    std::cout << csv;
  }
  return 0;
}

int cmd_hist(const std::string& kinds_csv, int instances, int variables,
             std::uint64_t seed, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::printf("%-20s %10s %10s %10s %10s\n", "kind", "mean", "median", "P_max",
              "samples");
  for (const std::string& kind_name : split_csv(kinds_csv)) {
    const ProblemKind kind = problem_kind_from_string(kind_name);
    const std::vector<double> samples =
        pooled_alpha_samples(kind, instances, seed, variables);
    const AlphaHistogram h = make_alpha_histogram(samples);
    write_text_file(
        (fs::path(out_dir) / (kind_name + "_alpha_hist.csv")).string(),
        histogram_to_csv(h));
    write_text_file(
        (fs::path(out_dir) / (kind_name + "_alpha_hist.svg")).string(),
        histogram_to_svg(h, kind_name + " alpha density"));
    std::printf("%-20s %10.4f %10.4f %10.4f %10zu\n", kind_name.c_str(),
                mean_of(samples), median_of(samples), h.peak_density,
                samples.size());
  }
  return 0;
}

int cmd_plot(const std::string& records_path, const std::string& out_dir) {
  const std::vector<RunRecord> records = load_records(records_path);
  const int written = emit_plots(records, out_dir);
  std::cout << written << " plots under " << out_dir << '\n';
  return 0;
}

int cmd_report(const std::string& records_path,
               const std::string& aggregates_path) {
  const std::vector<RunRecord> records = load_records(records_path);
  const std::vector<AggregateRow> rows = aggregate_records(records);
  std::printf("%-20s %-10s %-8s %5s %5s %12s %12s %12s %12s\n", "kind",
              "warmstart", "rotation", "p", "count", "alpha_mean", "alpha_std",
              "P_mean", "P_std");
  for (const AggregateRow& r : rows)
    std::printf("%-20s %-10s %-8s %5d %5d %12.4f %12.4f %12.4f %12.4f\n",
                r.kind.c_str(), r.warmstart.c_str(), r.rotation.c_str(),
                r.depth, r.count, r.alpha_mean, r.alpha_std, r.p_mean, r.p_std);
  int errors = 0;
  for (const RunRecord& r : records)
    if (r.status != "ok") ++errors;
  if (errors > 0) std::printf("%d records carry error status\n", errors);

  if (!aggregates_path.empty()) {
    std::ifstream in(aggregates_path);
    std::string stored((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
    if (stored != aggregates_to_csv(rows)) {
      std::fprintf(stderr, "stored aggregates do not match the records\n");
      return 1;
    }
    std::printf("stored aggregates match the records\n");
  }
  return errors > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warm-started QAOA for arbitrary QUBOs via Max-Cut reduction"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate problem instances as JSON");
  std::string gen_kind = "random-continuous", gen_out = "out/instances";
  int gen_n = 16, gen_count = 1;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind, "problem kind");
  gen->add_option("--n", gen_n, "variable count");
  gen->add_option("--seed", gen_seed, "instance seed");
  gen->add_option("--count", gen_count, "number of instances");
  gen->add_option("--out", gen_out, "output directory");

  // relax
  auto* relax = app.add_subcommand("relax", "solve a relaxation of an instance");
  std::string relax_in, relax_method = "gw2", relax_out;
  RelaxConfig relax_cfg;
  int relax_box_restarts = 50;
  relax->add_option("--in", relax_in, "instance JSON file")->required();
  relax->add_option("--method", relax_method, "bm2|bm3|gw2|gw3|box");
  relax->add_option("--bm-iters", relax_cfg.iterations, "stochastic sweeps");
  relax->add_option("--bm-restarts", relax_cfg.restarts, "restarts");
  relax->add_option("--eta", relax_cfg.eta, "perturbation step size");
  relax->add_option("--gw-bases", relax_cfg.bases_sampled, "projection frames");
  relax->add_option("--box-restarts", relax_box_restarts, "box ascent restarts");
  relax->add_option("--seed", relax_cfg.rng_seed, "rng seed");
  relax->add_option("--out", relax_out, "output file (default: stdout)");

  // run
  auto* run = app.add_subcommand("run", "run the full benchmark pipeline");
  RunFlags run_flags;
  add_run_flags(run, run_flags);

  // sweep0
  auto* sweep = app.add_subcommand(
      "sweep0", "depth-0 vertex-at-top argmax frequency table");
  RunFlags sweep_flags;
  sweep_flags.warmstarts = "gw2,gw3,bm2,bm3";
  sweep_flags.instances = 50;
  std::string sweep_csv;
  add_run_flags(sweep, sweep_flags);
  sweep->add_option("--csv", sweep_csv, "write the table to this CSV file");

  // hist
  auto* hist = app.add_subcommand("hist", "alpha distribution per problem kind");
  std::string hist_kinds =
      "random-continuous,random-discrete,tsp,portfolio,mis-gnp,mis-nws";
  int hist_instances = 50, hist_variables = 16;
  std::uint64_t hist_seed = 1;
  std::string hist_out = "out/hist";
  hist->add_option("--kinds", hist_kinds, "problem kinds (csv)");
  hist->add_option("--instances", hist_instances, "instances per kind");
  hist->add_option("--variables", hist_variables, "QUBO size per instance");
  hist->add_option("--seed", hist_seed, "master seed");
  hist->add_option("--out", hist_out, "output directory");

  // plot
  auto* plot = app.add_subcommand("plot", "render SVG curves from records");
  std::string plot_records = "out/records/records.jsonl", plot_out = "out/plots";
  plot->add_option("--records", plot_records, "records.jsonl path");
  plot->add_option("--out", plot_out, "output directory");

  // report
  auto* report = app.add_subcommand("report", "aggregate table from records");
  std::string report_records = "out/records/records.jsonl", report_aggregates;
  report->add_option("--records", report_records, "records.jsonl path");
  report->add_option("--aggregates", report_aggregates,
                     "verify against a stored aggregates.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_kind, gen_n, gen_seed, gen_count, gen_out);
    if (relax->parsed())
      return cmd_relax(relax_in, relax_method, relax_cfg, relax_box_restarts,
                       relax_out);
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep0(sweep_flags, sweep_csv);
    if (hist->parsed())
      return cmd_hist(hist_kinds, hist_instances, hist_variables, hist_seed,
                      hist_out);
    if (plot->parsed()) return cmd_plot(plot_records, plot_out);
    if (report->parsed()) return cmd_report(report_records, report_aggregates);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
