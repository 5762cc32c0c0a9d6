#ifndef QUBOCUT_EXPERIMENT_HPP
#define QUBOCUT_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qubocut/json_io.hpp"
#include "qubocut/metrics.hpp"
#include "qubocut/qaoa.hpp"
#include "qubocut/relax.hpp"
#include "qubocut/svg.hpp"
#include "qubocut/warmstart.hpp"

namespace qubocut {

enum class WarmStartKind { Bm2, Bm3, Gw2, Gw3, Box, Uniform };

constexpr std::array<WarmStartKind, 6> kAllWarmStarts = {
    WarmStartKind::Bm2, WarmStartKind::Bm3,    WarmStartKind::Gw2,
    WarmStartKind::Gw3, WarmStartKind::Box,    WarmStartKind::Uniform};

inline std::string to_string(WarmStartKind w) {
  switch (w) {
    case WarmStartKind::Bm2: return "bm2";
    case WarmStartKind::Bm3: return "bm3";
    case WarmStartKind::Gw2: return "gw2";
    case WarmStartKind::Gw3: return "gw3";
    case WarmStartKind::Box: return "box";
    case WarmStartKind::Uniform: return "uniform";
  }
  return "unknown";
}

inline WarmStartKind warmstart_from_string(const std::string& s) {
  for (WarmStartKind w : kAllWarmStarts)
    if (to_string(w) == s) return w;
  throw std::invalid_argument("unknown warm-start '" + s + "'");
}

inline bool is_embedding_warmstart(WarmStartKind w) {
  return w == WarmStartKind::Bm2 || w == WarmStartKind::Bm3 ||
         w == WarmStartKind::Gw2 || w == WarmStartKind::Gw3;
}

struct ExperimentConfig {
  std::vector<ProblemKind> kinds{kAllProblemKinds.begin(),
                                 kAllProblemKinds.end()};
  int instances_per_kind = 5;
  std::vector<int> depths{0, 1, 2, 3, 4, 5};
  std::vector<WarmStartKind> warmstarts{kAllWarmStarts.begin(),
                                        kAllWarmStarts.end()};
  std::vector<RotationChoice> rotations{RotationChoice::last(),
                                        RotationChoice::first(),
                                        RotationChoice::none()};
  RelaxConfig relax;
  OptProtocol opt;
  std::vector<int> box_restarts_variants{10, 50};
  double eps = 0.1;
  int variables = 16;
  std::uint64_t master_seed = 1;
  std::string out_dir;  // empty keeps everything in memory
  int jobs = 0;         // 0 picks the hardware concurrency

  void validate() const {
    if (kinds.empty() || depths.empty() || warmstarts.empty() ||
        rotations.empty() || box_restarts_variants.empty())
      throw std::invalid_argument("ExperimentConfig: lists must be non-empty");
    if (instances_per_kind < 1)
      throw std::invalid_argument("ExperimentConfig: need at least one instance");
    if (!(eps > 0.0 && eps < 0.5))
      throw std::invalid_argument("ExperimentConfig: eps out of range");
    relax.validate();
    opt.validate();
  }
};

struct RunRecord {
  std::string kind;
  int instance_index = 0;
  std::uint64_t instance_seed = 0;
  std::string warmstart;  // includes the box variant, e.g. "box50"
  std::string rotation;
  int depth = 0;
  std::vector<double> beta;
  std::vector<double> gamma;
  double alpha = 0.0;
  double p_opt = 0.0;
  double wall_time_ms = 0.0;
  std::uint64_t cell_seed = 0;
  std::string status = "ok";
  std::string error;
};

inline Json to_json(const RunRecord& r) {
  return Json{{"kind", r.kind},
              {"instance_index", r.instance_index},
              {"instance_seed", r.instance_seed},
              {"warmstart", r.warmstart},
              {"rotation", r.rotation},
              {"depth", r.depth},
              {"beta", r.beta},
              {"gamma", r.gamma},
              {"alpha", r.alpha},
              {"p_opt", r.p_opt},
              {"wall_time_ms", r.wall_time_ms},
              {"cell_seed", r.cell_seed},
              {"status", r.status},
              {"error", r.error}};
}

inline RunRecord record_from_json(const Json& j) {
  RunRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.instance_index = j.at("instance_index").get<int>();
  r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
  r.warmstart = j.at("warmstart").get<std::string>();
  r.rotation = j.at("rotation").get<std::string>();
  r.depth = j.at("depth").get<int>();
  r.beta = j.at("beta").get<std::vector<double>>();
  r.gamma = j.at("gamma").get<std::vector<double>>();
  r.alpha = j.at("alpha").get<double>();
  r.p_opt = j.at("p_opt").get<double>();
  r.wall_time_ms = j.value("wall_time_ms", 0.0);
  r.cell_seed = j.value("cell_seed", std::uint64_t{0});
  r.status = j.value("status", "ok");
  r.error = j.value("error", "");
  return r;
}

struct AggregateRow {
  std::string kind;
  std::string warmstart;
  std::string rotation;
  int depth = 0;
  int count = 0;
  double alpha_mean = 0.0;
  double alpha_std = 0.0;
  double p_mean = 0.0;
  double p_std = 0.0;
};

// mean and sample standard deviation per (kind, warmstart, rotation, depth)
inline std::vector<AggregateRow> aggregate_records(
    const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, int>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) {
    if (r.status != "ok") continue;
    groups[{r.kind, r.warmstart, r.rotation, r.depth}].push_back(&r);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    AggregateRow row;
    std::tie(row.kind, row.warmstart, row.rotation, row.depth) = key;
    row.count = static_cast<int>(group.size());
    double asum = 0.0, psum = 0.0;
    for (const RunRecord* r : group) {
      asum += r->alpha;
      psum += r->p_opt;
    }
    row.alpha_mean = asum / row.count;
    row.p_mean = psum / row.count;
    if (row.count > 1) {
      double avar = 0.0, pvar = 0.0;
      for (const RunRecord* r : group) {
        avar += (r->alpha - row.alpha_mean) * (r->alpha - row.alpha_mean);
        pvar += (r->p_opt - row.p_mean) * (r->p_opt - row.p_mean);
      }
      row.alpha_std = std::sqrt(avar / (row.count - 1));
      row.p_std = std::sqrt(pvar / (row.count - 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string aggregates_to_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "kind,warmstart,rotation,depth,count,alpha_mean,alpha_std,p_opt_mean,"
         "p_opt_std\n";
  for (const AggregateRow& r : rows)
    out << r.kind << ',' << r.warmstart << ',' << r.rotation << ',' << r.depth
        << ',' << r.count << ',' << r.alpha_mean << ',' << r.alpha_std << ','
        << r.p_mean << ',' << r.p_std << '\n';
  return out.str();
}

// Deterministic bounded-worker parallel map: fn(i) must only write state
// owned by index i.
template <typename Fn>
void parallel_for_indexed(std::size_t count, int jobs, Fn&& fn) {
  int workers = jobs > 0 ? jobs
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<std::size_t>(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        fn(i);
    });
  for (std::thread& t : pool) t.join();
}

namespace detail {

// winning option under the sweep's tie rule: earlier options win ties
inline int argmax_option(const std::vector<double>& values,
                         double tol = kOptimumTol) {
  int best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best] + tol) best = static_cast<int>(i);
  return best;
}

struct WarmStartVariant {
  WarmStartKind warmstart;
  int box_restarts = 0;  // only for the box warm-start
  RotationChoice rotation;

  std::string label() const {
    if (warmstart == WarmStartKind::Box)
      return "box" + std::to_string(box_restarts);
    return to_string(warmstart);
  }
};

inline std::vector<WarmStartVariant> enumerate_variants(
    const ExperimentConfig& cfg) {
  std::vector<WarmStartVariant> variants;
  for (WarmStartKind w : cfg.warmstarts) {
    if (is_embedding_warmstart(w)) {
      for (const RotationChoice& r : cfg.rotations)
        variants.push_back({w, 0, r});
    } else if (w == WarmStartKind::Box) {
      for (int restarts : cfg.box_restarts_variants)
        variants.push_back({w, restarts, RotationChoice::none()});
    } else {
      variants.push_back({w, 0, RotationChoice::none()});
    }
  }
  return variants;
}

// warm-start product state plus the cost Hamiltonian it runs against:
// embedding warm-starts act on the reduced Max-Cut instance, the box and
// uniform warm-starts act on the QUBO Hamiltonian directly
inline ProductState prepare_warmstart(const WarmStartVariant& v,
                                      const Qubo& qubo,
                                      const MaxCutInstance& maxcut,
                                      const GramFactor* gw_factor,
                                      const ExperimentConfig& cfg,
                                      ProblemKind kind, int instance_index) {
  const std::string kind_name = to_string(kind);
  RelaxConfig rc = cfg.relax;
  switch (v.warmstart) {
    case WarmStartKind::Bm2:
    case WarmStartKind::Bm3: {
      const int k = v.warmstart == WarmStartKind::Bm2 ? 2 : 3;
      rc.rng_seed = derive_seed(cfg.master_seed, "bm", k, kind_name,
                                instance_index);
      RelaxedEmbedding emb = solve_bm(maxcut, k, rc);
      emb = vertex_at_top(emb, v.rotation,
                          derive_seed(cfg.master_seed, "rot", kind_name,
                                      instance_index, v.label(),
                                      v.rotation.name()));
      return encode_embedding(emb);
    }
    case WarmStartKind::Gw2:
    case WarmStartKind::Gw3: {
      const int k = v.warmstart == WarmStartKind::Gw2 ? 2 : 3;
      rc.rng_seed = derive_seed(cfg.master_seed, "gwproj", k, kind_name,
                                instance_index);
      RelaxedEmbedding emb = project_gw(*gw_factor, maxcut, k, rc);
      emb = vertex_at_top(emb, v.rotation,
                          derive_seed(cfg.master_seed, "rot", kind_name,
                                      instance_index, v.label(),
                                      v.rotation.name()));
      return encode_embedding(emb);
    }
    case WarmStartKind::Box: {
      const BoxPoint p = solve_box_relaxed(
          qubo, v.box_restarts,
          derive_seed(cfg.master_seed, "box", kind_name, instance_index,
                      v.box_restarts));
      return encode_box(p, cfg.eps);
    }
    case WarmStartKind::Uniform:
      return uniform_state(qubo.size());
  }
  throw std::logic_error("prepare_warmstart: unreachable");
}

}  // namespace detail

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<AggregateRow> table;
  bool any_failed = false;
};

inline int emit_plots(const std::vector<RunRecord>& records,
                      const std::string& dir);

// The full benchmark pipeline: generate -> relax -> encode -> evolve or
// optimize -> metrics, for every (kind, instance, warm-start, rotation,
// depth) cell. Depth p inherits the depth p-1 winner when the protocol asks
// for it. Failures mark their records and the run continues.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<int> depths = cfg.depths;
  std::sort(depths.begin(), depths.end());

  const std::vector<detail::WarmStartVariant> variants =
      detail::enumerate_variants(cfg);
  const std::size_t tasks = cfg.kinds.size() * cfg.instances_per_kind;
  const std::size_t records_per_task = variants.size() * depths.size();

  ExperimentResult result;
  result.records.resize(tasks * records_per_task);

  const bool write_files = !cfg.out_dir.empty();
  namespace fs = std::filesystem;
  if (write_files) {
    fs::create_directories(fs::path(cfg.out_dir) / "instances");
    fs::create_directories(fs::path(cfg.out_dir) / "records");
    fs::create_directories(fs::path(cfg.out_dir) / "aggregates");
    fs::create_directories(fs::path(cfg.out_dir) / "plots");
  }

  parallel_for_indexed(tasks, cfg.jobs, [&](std::size_t task) {
    const ProblemKind kind = cfg.kinds[task / cfg.instances_per_kind];
    const int index = static_cast<int>(task % cfg.instances_per_kind);
    const std::string kind_name = to_string(kind);
    const std::uint64_t instance_seed =
        derive_seed(cfg.master_seed, "instance", kind_name, index);

    RunRecord* slot = result.records.data() + task * records_per_task;
    auto fill_error = [&](std::size_t from_variant, const std::string& what) {
      for (std::size_t v = from_variant; v < variants.size(); ++v)
        for (std::size_t d = 0; d < depths.size(); ++d) {
          RunRecord& r = slot[v * depths.size() + d];
          r.kind = kind_name;
          r.instance_index = index;
          r.instance_seed = instance_seed;
          r.warmstart = variants[v].label();
          r.rotation = variants[v].rotation.name();
          r.depth = depths[d];
          r.status = "error";
          r.error = what;
        }
    };

    std::optional<GeneratedInstance> generated;
    std::optional<MaxCutInstance> maxcut;
    try {
      generated = generate_scaled(kind, instance_seed, cfg.variables);
      maxcut = qubo_to_maxcut(generated->qubo);
    } catch (const std::exception& e) {
      fill_error(0, e.what());
      return;
    }

    if (write_files) {
      Json j = instance_to_json(*generated);
      std::ofstream out(fs::path(cfg.out_dir) / "instances" /
                        (kind_name + "-" + std::to_string(instance_seed) +
                         ".json"));
      out << j.dump(2) << '\n';
    }

    bool need_qubo_cost = false, need_maxcut_cost = false, need_gw = false;
    for (const auto& v : variants) {
      if (is_embedding_warmstart(v.warmstart)) need_maxcut_cost = true;
      else need_qubo_cost = true;
      if (v.warmstart == WarmStartKind::Gw2 || v.warmstart == WarmStartKind::Gw3)
        need_gw = true;
    }
    std::optional<DiagonalCost> cost_q, cost_m;
    std::optional<GramFactor> gw_factor;
    try {
      if (need_qubo_cost) cost_q = build_cost_qubo(generated->qubo);
      if (need_maxcut_cost) cost_m = build_cost_maxcut(*maxcut);
      if (need_gw) {
        RelaxConfig rc = cfg.relax;
        rc.rng_seed = derive_seed(cfg.master_seed, "gw", kind_name, index);
        gw_factor = solve_gw(*maxcut, rc);
      }
    } catch (const std::exception& e) {
      fill_error(0, e.what());
      return;
    }

    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      const detail::WarmStartVariant& variant = variants[vi];
      const DiagonalCost& cost =
          is_embedding_warmstart(variant.warmstart) ? *cost_m : *cost_q;
      try {
        const ProductState init = detail::prepare_warmstart(
            variant, generated->qubo, *maxcut,
            gw_factor ? &*gw_factor : nullptr, cfg, kind, index);

        std::optional<QaoaParams> chained;
        for (std::size_t di = 0; di < depths.size(); ++di) {
          const int depth = depths[di];
          RunRecord& r = slot[vi * depths.size() + di];
          r.kind = kind_name;
          r.instance_index = index;
          r.instance_seed = instance_seed;
          r.warmstart = variant.label();
          r.rotation = variant.rotation.name();
          r.depth = depth;
          r.cell_seed =
              derive_seed(cfg.master_seed, "cell", kind_name, index,
                          variant.label(), variant.rotation.name(), depth);
          const auto t0 = std::chrono::steady_clock::now();
          const StateVector state = [&] {
            if (depth == 0) return evolve(init, cost, QaoaParams{});
            const OptimizeOutcome out =
                optimize(init, cost, depth, cfg.opt, r.cell_seed, chained);
            r.beta = out.params.beta;
            r.gamma = out.params.gamma;
            if (cfg.opt.inherit_best) chained = out.params;
            return evolve(init, cost, out.params);
          }();
          const MetricPair m = evaluate_metrics(state, cost);
          r.alpha = m.alpha;
          r.p_opt = m.p_opt;
          r.wall_time_ms =
              std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
        }
      } catch (const std::exception& e) {
        for (std::size_t di = 0; di < depths.size(); ++di) {
          RunRecord& r = slot[vi * depths.size() + di];
          r.kind = kind_name;
          r.instance_index = index;
          r.instance_seed = instance_seed;
          r.warmstart = variant.label();
          r.rotation = variant.rotation.name();
          r.depth = depths[di];
          r.status = "error";
          r.error = e.what();
        }
      }
    }
  });

  for (const RunRecord& r : result.records)
    if (r.status != "ok") result.any_failed = true;
  result.table = aggregate_records(result.records);

  if (write_files) {
    std::ofstream records_out(fs::path(cfg.out_dir) / "records" /
                              "records.jsonl");
    for (const RunRecord& r : result.records)
      records_out << to_json(r).dump() << '\n';
    std::ofstream agg_out(fs::path(cfg.out_dir) / "aggregates" /
                          "aggregates.csv");
    agg_out << aggregates_to_csv(result.table);
    emit_plots(result.records,
               (fs::path(cfg.out_dir) / "plots").string());
  }
  return result;
}

// Depth-0 frequency table: how often each vertex-at-top choice (every qubit
// of the reduced instance, plus no rotation) maximizes alpha or P. Ties go
// to the lowest qubit index; "none" ranks last. Only embedding warm-starts
// participate.
struct VertexSweepRow {
  ProblemKind kind;
  WarmStartKind warmstart;
  std::vector<int> alpha_counts;  // qubits 0..n, then none
  std::vector<int> p_counts;
};

inline std::vector<VertexSweepRow> vertex_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<WarmStartKind> sweeps;
  for (WarmStartKind w : cfg.warmstarts)
    if (is_embedding_warmstart(w)) sweeps.push_back(w);

  const int qubits = cfg.variables + 1;
  const int options = qubits + 1;  // every qubit, then "none"
  const std::size_t tasks = cfg.kinds.size() * cfg.instances_per_kind;

  struct TaskResult {
    std::vector<int> alpha_pick;  // per warm-start, the winning option
    std::vector<int> p_pick;
  };
  std::vector<TaskResult> picks(tasks);

  parallel_for_indexed(tasks, cfg.jobs, [&](std::size_t task) {
    const ProblemKind kind = cfg.kinds[task / cfg.instances_per_kind];
    const int index = static_cast<int>(task % cfg.instances_per_kind);
    const std::string kind_name = to_string(kind);
    const std::uint64_t instance_seed =
        derive_seed(cfg.master_seed, "instance", kind_name, index);
    const GeneratedInstance g =
        generate_scaled(kind, instance_seed, cfg.variables);
    const MaxCutInstance maxcut = qubo_to_maxcut(g.qubo);
    const DiagonalCost cost = build_cost_maxcut(maxcut);

    std::optional<GramFactor> gw_factor;
    TaskResult& out = picks[task];
    out.alpha_pick.assign(sweeps.size(), 0);
    out.p_pick.assign(sweeps.size(), 0);

    for (std::size_t wi = 0; wi < sweeps.size(); ++wi) {
      const WarmStartKind w = sweeps[wi];
      RelaxConfig rc = cfg.relax;
      RelaxedEmbedding emb;
      if (w == WarmStartKind::Bm2 || w == WarmStartKind::Bm3) {
        const int k = w == WarmStartKind::Bm2 ? 2 : 3;
        rc.rng_seed = derive_seed(cfg.master_seed, "bm", k, kind_name, index);
        emb = solve_bm(maxcut, k, rc);
      } else {
        const int k = w == WarmStartKind::Gw2 ? 2 : 3;
        if (!gw_factor) {
          RelaxConfig gw_rc = cfg.relax;
          gw_rc.rng_seed = derive_seed(cfg.master_seed, "gw", kind_name, index);
          gw_factor = solve_gw(maxcut, gw_rc);
        }
        rc.rng_seed =
            derive_seed(cfg.master_seed, "gwproj", k, kind_name, index);
        emb = project_gw(*gw_factor, maxcut, k, rc);
      }

      std::vector<double> alphas(options), probs(options);
      for (int option = 0; option < options; ++option) {
        const RotationChoice choice = option < qubits
                                          ? RotationChoice::qubit(option)
                                          : RotationChoice::none();
        const RelaxedEmbedding rotated = vertex_at_top(
            emb, choice,
            derive_seed(cfg.master_seed, "sweep-rot", kind_name, index,
                        to_string(w), option));
        const StateVector state =
            evolve(encode_embedding(rotated), cost, QaoaParams{});
        const MetricPair m = evaluate_metrics(state, cost);
        alphas[option] = m.alpha;
        probs[option] = m.p_opt;
      }
      out.alpha_pick[wi] = detail::argmax_option(alphas);
      out.p_pick[wi] = detail::argmax_option(probs);
    }
  });

  std::vector<VertexSweepRow> rows;
  for (std::size_t ki = 0; ki < cfg.kinds.size(); ++ki)
    for (std::size_t wi = 0; wi < sweeps.size(); ++wi) {
      VertexSweepRow row;
      row.kind = cfg.kinds[ki];
      row.warmstart = sweeps[wi];
      row.alpha_counts.assign(options, 0);
      row.p_counts.assign(options, 0);
      for (int i = 0; i < cfg.instances_per_kind; ++i) {
        const TaskResult& t = picks[ki * cfg.instances_per_kind + i];
        ++row.alpha_counts[t.alpha_pick[wi]];
        ++row.p_counts[t.p_pick[wi]];
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

inline std::string vertex_sweep_to_csv(const std::vector<VertexSweepRow>& rows) {
  std::ostringstream out;
  if (rows.empty()) return "";
  const int options = static_cast<int>(rows.front().alpha_counts.size());
  out << "kind,warmstart,metric";
  for (int q = 0; q + 1 < options; ++q) out << ",q" << q;
  out << ",none\n";
  for (const VertexSweepRow& row : rows) {
    out << to_string(row.kind) << ',' << to_string(row.warmstart) << ",alpha";
    for (int c : row.alpha_counts) out << ',' << c;
    out << '\n';
    out << to_string(row.kind) << ',' << to_string(row.warmstart) << ",p_opt";
    for (int c : row.p_counts) out << ',' << c;
    out << '\n';
  }
  return out.str();
}

// One SVG per (kind, metric): mean curves per warm-start/rotation with
// shaded bands of 0.25 sample standard deviations. Returns the number of
// files written; an empty record set writes nothing.
inline int emit_plots(const std::vector<RunRecord>& records,
                      const std::string& dir) {
  if (records.empty()) {
    std::fprintf(stderr, "emit_plots: no records, nothing to plot\n");
    return 0;
  }
  const std::vector<AggregateRow> rows = aggregate_records(records);
  std::vector<std::string> kinds;
  for (const AggregateRow& r : rows)
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end())
      kinds.push_back(r.kind);

  namespace fs = std::filesystem;
  fs::create_directories(dir);
  int written = 0;
  for (const std::string& kind : kinds) {
    for (const bool alpha_metric : {true, false}) {
      std::map<std::string, SvgSeries> series;
      for (const AggregateRow& r : rows) {
        if (r.kind != kind) continue;
        const std::string label = r.warmstart + "-" + r.rotation;
        SvgSeries& s = series[label];
        s.label = label;
        s.x.push_back(r.depth);
        s.y.push_back(alpha_metric ? r.alpha_mean : r.p_mean);
        s.band.push_back(0.25 * (alpha_metric ? r.alpha_std : r.p_std));
      }
      std::vector<SvgSeries> ordered;
      for (auto& [label, s] : series) ordered.push_back(std::move(s));
      const std::string metric = alpha_metric ? "alpha" : "popt";
      const std::string path =
          (fs::path(dir) / (kind + "_" + metric + ".svg")).string();
      write_text_file(
          path, render_line_chart(
                    kind + " - " + (alpha_metric ? "approximation ratio"
                                                 : "optimal sampling probability"),
                    "depth p", alpha_metric ? "alpha" : "P", ordered));
      ++written;
    }
  }
  return written;
}

inline Json to_json(const ExperimentConfig& cfg) {
  Json kinds = Json::array();
  for (ProblemKind k : cfg.kinds) kinds.push_back(to_string(k));
  Json warmstarts = Json::array();
  for (WarmStartKind w : cfg.warmstarts) warmstarts.push_back(to_string(w));
  Json rotations = Json::array();
  for (const RotationChoice& r : cfg.rotations) rotations.push_back(r.name());
  return Json{{"kinds", kinds},
              {"instances_per_kind", cfg.instances_per_kind},
              {"depths", cfg.depths},
              {"warmstarts", warmstarts},
              {"rotations", rotations},
              {"relax", to_json(cfg.relax)},
              {"opt", to_json(cfg.opt)},
              {"box_restarts_variants", cfg.box_restarts_variants},
              {"eps", cfg.eps},
              {"variables", cfg.variables},
              {"master_seed", cfg.master_seed},
              {"out_dir", cfg.out_dir},
              {"jobs", cfg.jobs}};
}

// values present in the JSON take precedence over the base config
inline ExperimentConfig experiment_config_from_json(
    const Json& j, ExperimentConfig base = {}) {
  if (j.contains("kinds")) {
    base.kinds.clear();
    for (const auto& k : j.at("kinds"))
      base.kinds.push_back(problem_kind_from_string(k.get<std::string>()));
  }
  base.instances_per_kind =
      j.value("instances_per_kind", base.instances_per_kind);
  if (j.contains("depths"))
    base.depths = j.at("depths").get<std::vector<int>>();
  if (j.contains("warmstarts")) {
    base.warmstarts.clear();
    for (const auto& w : j.at("warmstarts"))
      base.warmstarts.push_back(warmstart_from_string(w.get<std::string>()));
  }
  if (j.contains("rotations")) {
    base.rotations.clear();
    for (const auto& r : j.at("rotations"))
      base.rotations.push_back(RotationChoice::parse(r.get<std::string>()));
  }
  if (j.contains("relax"))
    base.relax = relax_config_from_json(j.at("relax"), base.relax);
  if (j.contains("opt"))
    base.opt = opt_protocol_from_json(j.at("opt"), base.opt);
  if (j.contains("box_restarts_variants"))
    base.box_restarts_variants =
        j.at("box_restarts_variants").get<std::vector<int>>();
  base.eps = j.value("eps", base.eps);
  base.variables = j.value("variables", base.variables);
  base.master_seed = j.value("master_seed", base.master_seed);
  base.out_dir = j.value("out_dir", base.out_dir);
  base.jobs = j.value("jobs", base.jobs);
  base.validate();
  return base;
}

inline std::string histogram_to_csv(const AlphaHistogram& h) {
  std::ostringstream out;
  out.precision(17);
  out << "bin_left,density\n";
  for (int b = 0; b < AlphaHistogram::kBins; ++b)
    out << static_cast<double>(b) / AlphaHistogram::kBins << ',' << h.density[b]
        << '\n';
  return out.str();
}

inline std::string histogram_to_svg(const AlphaHistogram& h,
                                    const std::string& title) {
  SvgSeries s;
  s.label = "density";
  for (int b = 0; b < AlphaHistogram::kBins; ++b) {
    s.x.push_back((b + 0.5) / AlphaHistogram::kBins);
    s.y.push_back(h.density[b]);
    s.band.push_back(0.0);
  }
  const double peak = std::max(1.0, h.peak_density);
  return render_line_chart(title, "alpha", "density", {s}, 0.0, peak);
}

}  // namespace qubocut

#endif  // QUBOCUT_EXPERIMENT_HPP
