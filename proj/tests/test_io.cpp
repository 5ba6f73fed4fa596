#include "doctest.h"

#include <clocale>
#include <sstream>

#include "qaoa/errors.hpp"
#include "qaoa/report_io.hpp"

using namespace qaoa;

TEST_CASE("angle files round-trip exactly") {
  Rng rng(12);
  for (int p = 1; p <= 8; ++p) {
    const auto a = random_angles(p, rng);
    const auto back = parse_angle_json(to_angle_json(a));
    CHECK(back == a);  // bitwise: doubles survive the text form
  }
  const auto a = parse_angle_json(R"({"p": 2, "gamma": [0.1, 7.0], "beta": [-0.2, 0.3]})");
  CHECK(a.depth() == 2);
  CHECK(a.gamma()[1] == doctest::Approx(7.0 - 2 * 3.141592653589793));
  CHECK_THROWS_AS(parse_angle_json(R"({"p": 1, "gamma": [0.1], "beta": [0.2], "extra": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_angle_json(R"({"p": 2, "gamma": [0.1], "beta": [0.2]})"), ConfigError);
  CHECK_THROWS_AS(parse_angle_json(R"({"p": 1, "gamma": [0.1]})"), ConfigError);
  CHECK_THROWS_AS(parse_angle_json("not json"), ConfigError);
}

TEST_CASE("JSON documents keep full precision") {
  const double x = 0.1 + 0.2;
  const io::Json j = io::to_json(AngleSchedule({x}, {1.0 / 3.0}));
  const auto back = io::Json::parse(j.dump());
  CHECK(back["gamma"][0].get<double>() == x);
  CHECK(back["beta"][0].get<double>() == 1.0 / 3.0);
}

TEST_CASE("CSV uses four decimals and ignores the locale") {
  ConcentrationReport r;
  ConcentrationRow row;
  row.p = 3;
  row.source.regime = Regime::High;
  row.count = 25;
  row.mean = 23.41996;
  row.std = 0.12345;
  r.rows.push_back(row);
  const std::string want = "p,regime,count,mean,std\n3,High,25,23.4200,0.1235\n";
  CHECK(io::to_csv(r) == want);
  if (std::setlocale(LC_ALL, "de_DE.UTF-8") != nullptr) {
    CHECK(io::to_csv(r) == want);
    std::setlocale(LC_ALL, "C");
  }
  CHECK(io::landscape_csv({1, 2, 3, 4.5}, 2) == "1.0000,2.0000\n3.0000,4.5000\n");
}

TEST_CASE("optimization results serialize their trace") {
  Rng rng(3);
  const QaoaInstance inst(gen_regular(8, 3, rng));
  const auto r = multistart(inst, 1, 4, {3, Direction::Minimize, {}});
  const auto j = io::to_json(r);
  CHECK(j["direction"] == "minimize");
  CHECK(j["restart_trace"].size() == 3);
  CHECK(j["best_value"].get<double>() == r.best_value);
  CHECK(j["evaluations"].get<long long>() == r.evaluations);
  CHECK(j.dump() == io::to_json(multistart(inst, 1, 4, {3, Direction::Minimize, {}})).dump());
}
