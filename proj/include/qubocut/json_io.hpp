#ifndef QUBOCUT_JSON_IO_HPP
#define QUBOCUT_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "qubocut/problems.hpp"
#include "qubocut/qaoa.hpp"
#include "qubocut/qubo.hpp"
#include "qubocut/relax.hpp"

namespace qubocut {

using Json = nlohmann::json;

// {"n": int, "matrix": row-major array of arrays, "offset": float}
inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& rows) {
  const auto n = rows.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows.at(i).at(j).get<double>();
  return m;
}

inline Json to_json(const Qubo& q) {
  return Json{{"n", q.size()}, {"matrix", matrix_to_json(q.q)}, {"offset", 0.0}};
}

inline Qubo qubo_from_json(const Json& j) {
  Matrix m = matrix_from_json(j.at("matrix"));
  if (j.contains("n") && j.at("n").get<int>() != m.rows())
    throw std::invalid_argument("qubo_from_json: n does not match matrix");
  return Qubo(std::move(m));
}

inline Json to_json(const MaxCutInstance& m) {
  return Json{{"n", m.size()},
              {"matrix", matrix_to_json(m.adjacency)},
              {"offset", m.offset}};
}

inline MaxCutInstance maxcut_from_json(const Json& j) {
  Matrix a = matrix_from_json(j.at("matrix"));
  return MaxCutInstance(std::move(a), j.value("offset", 0.0));
}

inline Json to_json(const RelaxConfig& cfg) {
  return Json{{"iterations", cfg.iterations},
              {"restarts", cfg.restarts},
              {"eta", cfg.eta},
              {"bases_sampled", cfg.bases_sampled},
              {"seed", cfg.rng_seed}};
}

inline RelaxConfig relax_config_from_json(const Json& j, RelaxConfig cfg = {}) {
  cfg.iterations = j.value("iterations", cfg.iterations);
  cfg.restarts = j.value("restarts", cfg.restarts);
  cfg.eta = j.value("eta", cfg.eta);
  cfg.bases_sampled = j.value("bases_sampled", cfg.bases_sampled);
  cfg.rng_seed = j.value("seed", cfg.rng_seed);
  cfg.validate();
  return cfg;
}

inline Json to_json(const OptProtocol& p) {
  return Json{{"starts", p.starts},
              {"inherit_best", p.inherit_best},
              {"max_evals", p.max_evals}};
}

inline OptProtocol opt_protocol_from_json(const Json& j, OptProtocol p = {}) {
  p.starts = j.value("starts", p.starts);
  p.inherit_best = j.value("inherit_best", p.inherit_best);
  p.max_evals = j.value("max_evals", p.max_evals);
  p.validate();
  return p;
}

inline Json to_json(const RelaxedEmbedding& e) {
  Json j{{"k", e.k}, {"theta", e.theta}};
  if (e.k == 3) j["phi"] = e.phi;
  return j;
}

inline RelaxedEmbedding embedding_from_json(const Json& j) {
  RelaxedEmbedding e;
  e.k = j.at("k").get<int>();
  e.theta = j.at("theta").get<std::vector<double>>();
  e.phi = j.value("phi", std::vector<double>(e.theta.size(), 0.0));
  return e;
}

inline Json to_json(const BoxPoint& p) { return Json{{"y_c", p.y_c}}; }

inline BoxPoint box_point_from_json(const Json& j) {
  return BoxPoint{j.at("y_c").get<std::vector<double>>()};
}

inline Json instance_to_json(const GeneratedInstance& g) {
  Json j = to_json(g.qubo);
  j["kind"] = to_string(g.kind);
  j["seed"] = g.seed;
  return j;
}

}  // namespace qubocut

#endif  // QUBOCUT_JSON_IO_HPP
