#include "doctest.h"

#include <cmath>
#include <numeric>

#include <omp.h>

#include "qaoa/errors.hpp"
#include "qaoa/experiments.hpp"

using namespace qaoa;

namespace {

EdgeExpectationMatrix from_columns(const std::vector<std::vector<double>>& cols) {
  EdgeExpectationMatrix mat(static_cast<int>(cols.front().size()), static_cast<int>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t e = 0; e < cols[k].size(); ++e) mat.at(static_cast<int>(e), static_cast<int>(k)) = cols[k][e];
  return mat;
}

// Cheap settings shared by the small end-to-end runs below.
ExperimentLimits small_limits() {
  ExperimentLimits l;
  l.max_maxcut_tries = 500;
  return l;
}

RegimeOptions small_regime() {
  RegimeOptions o;
  o.train_n = 8;
  o.restarts = 4;
  o.local.max_iters = 400;
  return o;
}

}  // namespace

TEST_CASE("correlation_stats hand-evaluated example") {
  const auto s = correlation_stats(from_columns({{0, 0}, {1, 1}}));
  CHECK(s.mean_f == 1.0);
  CHECK(s.var_f == 2.0);
  CHECK(s.mean_c == 0.5);
  CHECK(s.var_c1 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.corr == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.m == 2);
  CHECK(s.n_instances == 2);
}

TEST_CASE("correlation_stats algebra") {
  SUBCASE("var_f = m var_c1 gives zero correlation") {
    // F = 0, 1: var_f = 1/2. Entries 0,0,1,0: mean 1/4, var_c1 = 0.75 / 3.
    const auto s = correlation_stats(from_columns({{0, 0}, {1, 0}}));
    CHECK(s.var_f == 0.5);
    CHECK(s.var_c1 == 0.25);
    CHECK(s.corr == 0.0);
  }
  SUBCASE("constant F hits the lower bound") {
    const auto s = correlation_stats(from_columns({{1, 0}, {0, 1}}));
    CHECK(s.var_f == 0.0);
    CHECK(s.corr == doctest::Approx(-1.0));
  }
  SUBCASE("degenerate and malformed inputs") {
    CHECK_THROWS_AS(correlation_stats(from_columns({{0.5, 0.5}, {0.5, 0.5}})), DegenerateVarianceError);
    CHECK_THROWS_AS(correlation_stats(from_columns({{0.5, 0.5}})), ParameterError);
    CHECK_THROWS_AS(correlation_stats(from_columns({{0.5}, {0.2}})), ParameterError);
  }
  SUBCASE("lower bound on random tables") {
    Rng rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
      const int m = 2 + t % 9, n = 2 + t % 5;
      std::vector<std::vector<double>> cols(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
      for (auto& c : cols)
        for (auto& x : c) x = u(rng);
      const auto s = correlation_stats(from_columns(cols));
      CHECK(s.var_f >= 0.0);
      CHECK(s.var_c1 > 0.0);
      CHECK(s.corr >= -1.0 / (m - 1) - 1e-12);
    }
  }
}

TEST_CASE("build_expectation_matrix") {
  Rng rng(2);
  std::vector<Graph> graphs;
  for (int k = 0; k < 4; ++k) graphs.push_back(gen_regular(12, 3, rng));
  const AngleSchedule a({0.3, 0.9}, {0.6, 0.2});
  const auto mat = build_expectation_matrix(graphs, a, 99);
  CHECK(mat.num_edges() == 18);
  CHECK(mat.num_instances() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(mat.column_sum(k) - objective(graphs[static_cast<std::size_t>(k)], a)) < 1e-9);
    for (int e = 0; e < 18; ++e) CHECK((mat.at(e, k) >= -1e-12 && mat.at(e, k) <= 1 + 1e-12));
  }
  // Column k uses its own permutation stream.
  Rng r1 = substream(99, "permutation", 1);
  const auto col1 = edge_expectations(permute_edge_labels(graphs[1], r1), a);
  for (int e = 0; e < 18; ++e) CHECK(mat.at(e, 1) == col1[static_cast<std::size_t>(e)]);

  const auto zero = build_expectation_matrix(graphs, AngleSchedule::zeros(3), 1);
  for (int k = 0; k < 4; ++k)
    for (int e = 0; e < 18; ++e) CHECK(std::abs(zero.at(e, k) - 0.5) < 1e-12);

  graphs.push_back(gen_regular(10, 3, rng));
  CHECK_THROWS_AS(build_expectation_matrix(graphs, a, 1), ParameterError);
}

TEST_CASE("correlation is invariant under edge relabeling") {
  Rng rng(6);
  std::vector<Graph> graphs;
  for (int k = 0; k < 8; ++k) graphs.push_back(gen_regular(12, 3, rng));
  const AngleSchedule a({0.5, 1.1, 0.2}, {0.4, 0.3, 0.9});
  const auto base = correlation_stats(build_expectation_matrix(graphs, a, 1));
  for (std::uint64_t seed : {2, 3, 4}) {
    const auto s = correlation_stats(build_expectation_matrix(graphs, a, seed));
    CHECK(std::abs(s.corr - base.corr) < 1e-12);
    CHECK(std::abs(s.var_c1 - base.var_c1) < 1e-12);
  }
}

TEST_CASE("sample_stats") {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto s = sample_stats(xs);
  CHECK(s.mean == 2.5);
  CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  const std::vector<double> one{7};
  CHECK(sample_stats(one).std == 0.0);
}

TEST_CASE("regime names") {
  for (auto r : all_regimes()) CHECK(parse_regime(to_string(r)) == r);
  CHECK(parse_regime("med-high") == Regime::MedHigh);
  CHECK(parse_regime("MedLow") == Regime::MedLow);
  CHECK_THROWS_AS(parse_regime("medium"), ConfigError);
}

TEST_CASE("small concentration run") {
  ConcentrationConfig c;
  c.p_list = {1, 2};
  c.instances_per_cell = 6;
  c.n = 12;
  c.target_cmax = std::nullopt;
  c.seed = 3;
  c.regime = small_regime();
  c.limits = small_limits();
  const auto r = concentration_table(c);
  REQUIRE_FALSE(r.partial);
  REQUIRE(r.rows.size() == 6);
  for (int p : c.p_list) {
    double low = 0, rnd = 0, high = 0;
    for (const auto& row : r.rows) {
      if (row.p != p) continue;
      CHECK(row.count == 6);
      CHECK(row.std >= 0.0);
      CHECK((row.mean >= 0.0 && row.mean <= 18.0));
      CHECK_FALSE(row.single_sample);
      const auto& v = row.values;
      CHECK(std::abs(std::accumulate(v.begin(), v.end(), 0.0) / 6 - row.mean) < 1e-12);
      if (row.source.regime == Regime::Low) low = row.mean;
      if (row.source.regime == Regime::Random) rnd = row.mean;
      if (row.source.regime == Regime::High) high = row.mean;
    }
    CHECK(low < rnd);
    CHECK(rnd < high);
    CHECK(r.instance_seeds.at(p).size() == 6);
  }

  SUBCASE("single instance") {
    c.instances_per_cell = 1;
    c.p_list = {1};
    const auto one = concentration_table(c);
    for (const auto& row : one.rows) {
      CHECK(row.single_sample);
      CHECK(row.std == 0.0);
    }
  }
  SUBCASE("same seed, same report, any thread count") {
    omp_set_num_threads(1);
    c.p_list = {2};
    const auto a = concentration_table(c);
    omp_set_num_threads(3);
    const auto b = concentration_table(c);
    omp_set_num_threads(omp_get_num_procs());
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].values == b.rows[i].values);
      CHECK(a.rows[i].source.angles == b.rows[i].source.angles);
    }
  }
  SUBCASE("impossible target yields a partial report") {
    c.target_cmax = 18;
    c.limits.max_maxcut_tries = 3;
    c.regime.train_n = 12;
    const auto bad = concentration_table(c);
    CHECK(bad.partial);
    CHECK(bad.error.find("no graph with MaxCut 18") != std::string::npos);
  }
}

TEST_CASE("med regimes land in their bands on the training instance") {
  auto opts = small_regime();
  opts.med_train_n = 8;
  opts.med_restarts = 8;
  for (auto regime : {Regime::MedLow, Regime::MedHigh}) {
    const auto ra = find_regime_angles(regime, 3, 3, std::nullopt, 20, 4, opts, small_limits());
    const double m = 12;
    const double lo = regime == Regime::MedLow ? opts.med_low_band_lo : opts.med_high_band_lo;
    const double hi = regime == Regime::MedLow ? opts.med_low_band_hi : opts.med_high_band_hi;
    CHECK(ra.train_value >= lo * m - 1e-9);
    CHECK(ra.train_value <= hi * m + 1e-9);
    Rng rng(ra.train_seed);
    CHECK(std::abs(objective(gen_regular(8, 3, rng), ra.angles) - ra.train_value) < 1e-9);
  }
}

TEST_CASE("small transfer run") {
  TransferConfig c;
  c.n_train = 8;
  c.n_eval = 10;
  c.p = 2;
  c.restarts = 4;
  c.eval_count = 4;
  c.seed = 9;
  const auto r = transfer_experiment(c);
  CHECK(r.eval_ratios.size() == 4);
  CHECK(r.train_ratio > 0.5);
  CHECK(r.train_ratio <= 1.0);
  for (double x : r.eval_ratios) CHECK((x >= 0.0 && x <= 1.0));
  CHECK(r.std_ratio >= 0.0);
  // The training instance scored the same way reproduces the training ratio.
  const Graph train = toss_instance(8, 3, std::nullopt, r.train_seed, {});
  CHECK(std::abs(evaluate_ratio(train, r.angles) - r.train_ratio) < 1e-12);

  c.n_eval = 27;
  CHECK_THROWS_AS(transfer_experiment(c), ResourceError);
}

TEST_CASE("mcdiarmid_bound") {
  CHECK(mcdiarmid_bound(0.0, 10, 1.0) == 1.0);
  CHECK(mcdiarmid_bound(std::sqrt(5.0), 10, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(mcdiarmid_bound(20.0, 190, 1.0) == doctest::Approx(0.01484).epsilon(1e-3));
  CHECK(mcdiarmid_bound(20.0, 190, 1.0) == doctest::Approx(std::exp(-80.0 / 19.0)));
  CHECK_THROWS_AS(mcdiarmid_bound(-1.0, 10, 1.0), ParameterError);
  CHECK_THROWS_AS(mcdiarmid_bound(1.0, 0, 1.0), ParameterError);
  CHECK_THROWS_AS(mcdiarmid_bound(1.0, 10, 0.0), ParameterError);
}
