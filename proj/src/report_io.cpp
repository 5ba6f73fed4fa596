#include "qaoa/report_io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qaoa::io {

namespace {

Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json regimes_json(const std::vector<Regime>& regimes) {
  Json out = Json::array();
  for (Regime r : regimes) out.push_back(to_string(r));
  return out;
}

Json limits_json(const ExperimentLimits& l) {
  return Json{{"max_qubits", l.sim.max_qubits},
              {"max_bruteforce_vertices", l.graph.max_bruteforce_vertices},
              {"max_generation_attempts", l.graph.max_generation_attempts},
              {"max_maxcut_tries", l.max_maxcut_tries}};
}

std::string f4(double x) { return fmt::format("{:.4f}", x); }

}  // namespace

Json to_json(const AngleSchedule& a) {
  return Json{{"p", a.depth()}, {"gamma", a.gamma()}, {"beta", a.beta()}};
}

Json to_json(const CensusP1& c) {
  return Json{{"w_shared2", c.w_shared2}, {"w_shared1", c.w_shared1}, {"w_shared0", c.w_shared0},
              {"f_shared2", c.f_shared2}, {"f_shared1", c.f_shared1}, {"f_shared0", c.f_shared0}};
}

Json to_json(const LocalSearchOptions& o) {
  Json j{{"tol", o.tol}, {"max_iters", o.max_iters}, {"initial_step", o.initial_step}};
  j["stop_at"] = o.stop_at ? Json(*o.stop_at) : Json(nullptr);
  return j;
}

Json to_json(const OptimizationResult& r) {
  Json trace = Json::array();
  for (const auto& t : r.restart_trace)
    trace.push_back(Json{{"start", to_json(t.start)},
                         {"converged", to_json(t.converged)},
                         {"value", t.value},
                         {"evaluations", t.evaluations}});
  return Json{{"direction", to_string(r.direction)},
              {"seed", r.seed},
              {"best_value", r.best_value},
              {"best_angles", to_json(r.best_angles)},
              {"evaluations", r.evaluations},
              {"restart_trace", std::move(trace)}};
}

Json to_json(const RegimeAngles& r) {
  return Json{{"regime", to_string(r.regime)}, {"angles", to_json(r.angles)},  {"train_n", r.train_n},
              {"train_seed", r.train_seed},    {"search_seed", r.search_seed}, {"train_value", r.train_value}};
}

Json to_json(const RegimeOptions& o) {
  return Json{{"train_n", o.train_n},
              {"restarts", o.restarts},
              {"med_train_n", o.med_train_n},
              {"med_restarts", o.med_restarts},
              {"local", to_json(o.local)},
              {"med_low_band", {o.med_low_band_lo, o.med_low_band_hi}},
              {"med_high_band", {o.med_high_band_lo, o.med_high_band_hi}}};
}

Json to_json(const ConcentrationReport& r) {
  const auto& c = r.config;
  Json config{{"p_list", c.p_list},
              {"regimes", regimes_json(c.regimes)},
              {"instances_per_cell", c.instances_per_cell},
              {"n", c.n},
              {"degree", c.degree},
              {"target_cmax", optional_int(c.target_cmax)},
              {"seed", c.seed},
              {"regime_search", to_json(c.regime)},
              {"limits", limits_json(c.limits)}};
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"p", row.p},
                        {"regime", to_string(row.source.regime)},
                        {"count", row.count},
                        {"mean", row.mean},
                        {"std", row.std},
                        {"single_sample", row.single_sample},
                        {"source", to_json(row.source)},
                        {"values", row.values}});
  Json seeds = Json::object();
  for (const auto& [p, s] : r.instance_seeds) seeds[std::to_string(p)] = s;
  return Json{{"config", std::move(config)},
              {"partial", r.partial},
              {"error", r.error},
              {"rows", std::move(rows)},
              {"instance_seeds", std::move(seeds)}};
}

Json to_json(const CorrelationExperiment& e) {
  const auto& c = e.config;
  Json config{{"n", c.n},
              {"p", c.p},
              {"degree", c.degree},
              {"instances", c.instances},
              {"target_cmax", optional_int(c.target_cmax)},
              {"regimes", regimes_json(c.regimes)},
              {"seed", c.seed},
              {"regime_search", to_json(c.regime)},
              {"limits", limits_json(c.limits)}};
  Json reports = Json::array();
  for (const auto& r : e.reports) {
    const auto& s = r.stats;
    reports.push_back(Json{{"regime", to_string(r.source.regime)},
                           {"m", s.m},
                           {"N", s.n_instances},
                           {"mean_f", s.mean_f},
                           {"var_f", s.var_f},
                           {"std_f", std::sqrt(s.var_f)},
                           {"mean_c", s.mean_c},
                           {"var_c1", s.var_c1},
                           {"corr", s.corr},
                           {"source", to_json(r.source)},
                           {"permutation_seed", r.permutation_seed},
                           {"instance_seeds", r.instance_seeds},
                           {"objectives", r.objectives}});
  }
  return Json{{"config", std::move(config)}, {"reports", std::move(reports)}};
}

Json to_json(const TransferReport& r) {
  const auto& c = r.config;
  Json config{{"n_train", c.n_train}, {"n_eval", c.n_eval},         {"p", c.p},
              {"degree", c.degree},   {"restarts", c.restarts},     {"eval_count", c.eval_count},
              {"seed", c.seed},       {"local", to_json(c.local)}, {"limits", limits_json(c.limits)}};
  return Json{{"config", std::move(config)},
              {"train_seed", r.train_seed},
              {"search_seed", r.search_seed},
              {"train_cmax", r.train_cmax},
              {"train_value", r.train_value},
              {"train_ratio", r.train_ratio},
              {"train_evaluations", r.train_evaluations},
              {"angles", to_json(r.angles)},
              {"eval_seeds", r.eval_seeds},
              {"eval_cmax", r.eval_cmax},
              {"eval_values", r.eval_values},
              {"eval_ratios", r.eval_ratios},
              {"mean_ratio", r.mean_ratio},
              {"std_ratio", r.std_ratio}};
}

Json to_json(const std::vector<LeapfrogStage>& stages) {
  Json out = Json::array();
  for (const auto& s : stages)
    out.push_back(Json{{"size", s.size},
                       {"instance_seed", s.instance_seed},
                       {"angles", to_json(s.angles)},
                       {"transferred_value", s.transferred_value},
                       {"refined_value", s.refined_value},
                       {"eval_ratios", s.eval_ratios},
                       {"mean_ratio", s.mean_ratio}});
  return out;
}

std::string to_csv(const ConcentrationReport& r) {
  std::string out = "p,regime,count,mean,std\n";
  for (const auto& row : r.rows)
    out += fmt::format("{},{},{},{},{}\n", row.p, to_string(row.source.regime), row.count, f4(row.mean), f4(row.std));
  return out;
}

std::string to_csv(const CorrelationExperiment& e) {
  std::string out = "regime,N,m,mean_f,std_f,corr\n";
  for (const auto& r : e.reports)
    out += fmt::format("{},{},{},{},{},{}\n", to_string(r.source.regime), r.stats.n_instances, r.stats.m,
                       f4(r.stats.mean_f), f4(std::sqrt(r.stats.var_f)), f4(r.stats.corr));
  return out;
}

std::string to_csv(const TransferReport& r) {
  std::string out = "n_train,n_eval,p,train_ratio,eval_count,mean_ratio,std_ratio\n";
  out += fmt::format("{},{},{},{},{},{},{}\n", r.config.n_train, r.config.n_eval, r.config.p, f4(r.train_ratio),
                     r.eval_ratios.size(), f4(r.mean_ratio), f4(r.std_ratio));
  return out;
}

std::string to_csv(const std::vector<LeapfrogStage>& stages) {
  std::string out = "size,transferred_value,refined_value,mean_ratio\n";
  for (const auto& s : stages)
    out += fmt::format("{},{},{},{}\n", s.size, f4(s.transferred_value), f4(s.refined_value), f4(s.mean_ratio));
  return out;
}

std::string landscape_csv(const std::vector<double>& grid, int resolution) {
  std::string out;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      if (j > 0) out += ',';
      out += f4(grid[static_cast<std::size_t>(i * resolution + j)]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qaoa::io
