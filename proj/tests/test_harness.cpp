#include "qubocut/experiment.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace qubocut;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.kinds = {ProblemKind::RandomContinuous, ProblemKind::MisGnp};
  cfg.instances_per_kind = 2;
  cfg.variables = 6;
  cfg.depths = {0, 1};
  cfg.warmstarts = {WarmStartKind::Gw2, WarmStartKind::Box,
                    WarmStartKind::Uniform};
  cfg.rotations = {RotationChoice::last(), RotationChoice::none()};
  cfg.relax.iterations = 20;
  cfg.relax.restarts = 5;
  cfg.relax.bases_sampled = 10;
  cfg.opt.starts = 2;
  cfg.opt.max_evals = 60;
  cfg.box_restarts_variants = {3, 6};
  cfg.master_seed = 4242;
  cfg.jobs = 1;
  return cfg;
}

Json records_without_walltime(const std::vector<RunRecord>& records) {
  Json out = Json::array();
  for (const RunRecord& r : records) {
    Json j = to_json(r);
    j.erase("wall_time_ms");
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace

TEST(RunExperiment, RecordAndAggregateCounts) {
  ExperimentConfig cfg = tiny_config();
  ExperimentResult result = run_experiment(cfg);
  // variants: gw2 x 2 rotations + box x 2 variants + uniform = 5
  const std::size_t variants = 5;
  const std::size_t expected =
      cfg.kinds.size() * cfg.instances_per_kind * variants * cfg.depths.size();
  EXPECT_EQ(result.records.size(), expected);
  EXPECT_FALSE(result.any_failed);
  for (const RunRecord& r : result.records) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_GE(r.alpha, 0.0);
    EXPECT_LE(r.alpha, 1.0);
    EXPECT_GE(r.p_opt, 0.0);
    EXPECT_LE(r.p_opt, 1.0);
  }
  EXPECT_EQ(result.table.size(),
            cfg.kinds.size() * variants * cfg.depths.size());
}

TEST(RunExperiment, DeterministicAcrossRunsAndWorkerCounts) {
  ExperimentConfig cfg = tiny_config();
  ExperimentResult first = run_experiment(cfg);
  ExperimentResult second = run_experiment(cfg);
  cfg.jobs = 2;
  ExperimentResult parallel = run_experiment(cfg);
  EXPECT_EQ(records_without_walltime(first.records),
            records_without_walltime(second.records));
  EXPECT_EQ(records_without_walltime(first.records),
            records_without_walltime(parallel.records));
}

TEST(RunExperiment, DepthZeroUniformMatchesMeanEnergyRatio) {
  ExperimentConfig cfg = tiny_config();
  cfg.kinds = {ProblemKind::RandomContinuous};
  cfg.depths = {0};
  cfg.warmstarts = {WarmStartKind::Uniform};
  ExperimentResult result = run_experiment(cfg);
  ASSERT_EQ(result.records.size(), 2u);
  for (const RunRecord& r : result.records) {
    const GeneratedInstance g = generate_scaled(
        ProblemKind::RandomContinuous, r.instance_seed, cfg.variables);
    const DiagonalCost cost = build_cost_qubo(g.qubo);
    const StateVector uniform =
        statevector_from_product(uniform_state(cfg.variables));
    EXPECT_NEAR(r.alpha, approx_ratio(uniform, cost), 1e-12);
    EXPECT_TRUE(r.beta.empty());  // no optimizer at depth 0
  }
}

TEST(RunExperiment, AlphaNonDecreasingWithInheritedParams) {
  ExperimentConfig cfg = tiny_config();
  cfg.kinds = {ProblemKind::RandomContinuous};
  cfg.warmstarts = {WarmStartKind::Gw2};
  cfg.rotations = {RotationChoice::last()};
  cfg.depths = {0, 1, 2};
  ExperimentResult result = run_experiment(cfg);
  // records arrive depth-major per cell
  for (std::size_t base = 0; base < result.records.size(); base += 3) {
    EXPECT_GE(result.records[base + 1].alpha, result.records[base].alpha - 1e-6);
    EXPECT_GE(result.records[base + 2].alpha,
              result.records[base + 1].alpha - 1e-6);
  }
}

TEST(RunExperiment, WritesOutputLayout) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qubocut_harness_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = tiny_config();
  cfg.kinds = {ProblemKind::RandomContinuous};
  cfg.depths = {0};
  cfg.out_dir = dir.string();
  ExperimentResult result = run_experiment(cfg);
  EXPECT_TRUE(fs::exists(dir / "records" / "records.jsonl"));
  EXPECT_TRUE(fs::exists(dir / "aggregates" / "aggregates.csv"));
  EXPECT_TRUE(fs::exists(dir / "plots"));
  int instance_files = 0;
  for (const auto& entry : fs::directory_iterator(dir / "instances"))
    ++instance_files;
  EXPECT_EQ(instance_files, cfg.instances_per_kind);

  // aggregates recomputed from the raw records match the emitted table
  std::ifstream in(dir / "records" / "records.jsonl");
  std::vector<RunRecord> parsed;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) parsed.push_back(record_from_json(Json::parse(line)));
  EXPECT_EQ(aggregates_to_csv(aggregate_records(parsed)),
            aggregates_to_csv(result.table));
  fs::remove_all(dir);
}

TEST(RunExperiment, CellFailuresAreRecordedAndRunContinues) {
  ExperimentConfig cfg = tiny_config();
  cfg.kinds = {ProblemKind::RandomContinuous};
  cfg.warmstarts = {WarmStartKind::Uniform};
  cfg.depths = {0};
  cfg.variables = 25;  // above the statevector cap
  ExperimentResult result = run_experiment(cfg);
  EXPECT_TRUE(result.any_failed);
  ASSERT_EQ(result.records.size(), 2u);
  for (const RunRecord& r : result.records) {
    EXPECT_EQ(r.status, "error");
    EXPECT_FALSE(r.error.empty());
  }
}

TEST(Aggregates, MeanAndSampleStd) {
  std::vector<RunRecord> records;
  for (double a : {0.2, 0.4, 0.9}) {
    RunRecord r;
    r.kind = "k";
    r.warmstart = "w";
    r.rotation = "none";
    r.depth = 1;
    r.alpha = a;
    r.p_opt = a / 2.0;
    records.push_back(r);
  }
  std::vector<AggregateRow> rows = aggregate_records(records);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].count, 3);
  EXPECT_NEAR(rows[0].alpha_mean, 0.5, 1e-12);
  EXPECT_NEAR(rows[0].alpha_std, std::sqrt((0.09 + 0.01 + 0.16) / 2.0), 1e-12);
  EXPECT_NEAR(rows[0].p_mean, 0.25, 1e-12);
}

TEST(Aggregates, SingleRecordHasZeroWidthBand) {
  RunRecord r;
  r.kind = "k";
  r.warmstart = "w";
  r.rotation = "none";
  r.depth = 0;
  r.alpha = 0.7;
  r.p_opt = 0.3;
  std::vector<AggregateRow> rows = aggregate_records({r});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].count, 1);
  EXPECT_DOUBLE_EQ(rows[0].alpha_std, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].p_std, 0.0);
}

TEST(VertexSweep, RowSumsAndShape) {
  ExperimentConfig cfg = tiny_config();
  cfg.kinds = {ProblemKind::RandomContinuous};
  cfg.warmstarts = {WarmStartKind::Gw2, WarmStartKind::Bm2};
  cfg.instances_per_kind = 3;
  std::vector<VertexSweepRow> rows = vertex_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const VertexSweepRow& row : rows) {
    ASSERT_EQ(row.alpha_counts.size(),
              static_cast<std::size_t>(cfg.variables + 2));
    int alpha_total = 0, p_total = 0;
    for (int c : row.alpha_counts) alpha_total += c;
    for (int c : row.p_counts) p_total += c;
    EXPECT_EQ(alpha_total, cfg.instances_per_kind);
    EXPECT_EQ(p_total, cfg.instances_per_kind);
  }
  const std::string csv = vertex_sweep_to_csv(rows);
  EXPECT_NE(csv.find("q0"), std::string::npos);
  EXPECT_NE(csv.find(",none"), std::string::npos);
}

TEST(VertexSweep, TiesGoToLowestIndex) {
  EXPECT_EQ(detail::argmax_option({1.0, 1.0, 1.0}), 0);
  EXPECT_EQ(detail::argmax_option({0.3, 0.9, 0.9}), 1);
  EXPECT_EQ(detail::argmax_option({0.3, 0.1, 0.9}), 2);
}

TEST(EmitPlots, WritesOneFilePerKindAndMetric) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qubocut_plot_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = tiny_config();
  cfg.kinds = {ProblemKind::RandomContinuous};
  cfg.depths = {0, 1};
  ExperimentResult result = run_experiment(cfg);
  const int written = emit_plots(result.records, dir.string());
  EXPECT_EQ(written, 2);  // alpha and p_opt for one kind
  for (const char* name : {"random-continuous_alpha.svg",
                           "random-continuous_popt.svg"}) {
    std::ifstream in(dir / name);
    ASSERT_TRUE(in.good()) << name;
    std::string contents((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    EXPECT_EQ(contents.rfind("<svg", 0), 0u);
    EXPECT_NE(contents.find("polyline"), std::string::npos);
  }
  EXPECT_EQ(emit_plots({}, dir.string()), 0);
  fs::remove_all(dir);
}

TEST(JsonIo, RoundTrips) {
  Rng rng(3);
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m(j, i) = m(i, j) = rng.uniform(-1.0, 1.0);
  Qubo q(m);
  EXPECT_TRUE(qubo_from_json(to_json(q)).q == q.q);

  MaxCutInstance mc = qubo_to_maxcut(q);
  MaxCutInstance mc2 = maxcut_from_json(to_json(mc));
  EXPECT_TRUE(mc2.adjacency == mc.adjacency);
  EXPECT_EQ(mc2.offset, mc.offset);

  RelaxedEmbedding e{3, {0.1, 0.2}, {0.3, 0.4}};
  RelaxedEmbedding e2 = embedding_from_json(to_json(e));
  EXPECT_EQ(e2.k, 3);
  EXPECT_EQ(e2.theta, e.theta);
  EXPECT_EQ(e2.phi, e.phi);

  BoxPoint p{{0.25, 0.75}};
  EXPECT_EQ(box_point_from_json(to_json(p)).y_c, p.y_c);

  RunRecord r;
  r.kind = "tsp";
  r.warmstart = "gw2";
  r.rotation = "last";
  r.depth = 3;
  r.beta = {0.1, 0.2, 0.3};
  r.gamma = {1.0, 2.0, 3.0};
  r.alpha = 0.93;
  r.p_opt = 0.21;
  RunRecord r2 = record_from_json(to_json(r));
  EXPECT_EQ(to_json(r2), to_json(r));
}

TEST(JsonIo, ConfigOverridesBase) {
  ExperimentConfig base = tiny_config();
  Json patch{{"instances_per_kind", 7},
             {"kinds", Json::array({"tsp"})},
             {"relax", Json{{"eta", 0.25}}}};
  ExperimentConfig merged = experiment_config_from_json(patch, base);
  EXPECT_EQ(merged.instances_per_kind, 7);
  ASSERT_EQ(merged.kinds.size(), 1u);
  EXPECT_EQ(merged.kinds[0], ProblemKind::Tsp);
  EXPECT_DOUBLE_EQ(merged.relax.eta, 0.25);
  EXPECT_EQ(merged.relax.restarts, base.relax.restarts);  // untouched
  EXPECT_EQ(merged.master_seed, base.master_seed);

  ExperimentConfig round = experiment_config_from_json(to_json(base));
  EXPECT_EQ(to_json(round), to_json(base));
}
