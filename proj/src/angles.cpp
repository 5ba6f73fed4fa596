#include "qaoa/angles.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "qaoa/errors.hpp"

namespace qaoa {

double reduce_angle(double x, double period) {
  if (!std::isfinite(x)) throw ParameterError("angle is not finite");
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  // fmod of a tiny negative number can round up to exactly one period.
  if (r >= period) r = 0.0;
  return r;
}

AngleSchedule::AngleSchedule(std::vector<double> gamma, std::vector<double> beta)
    : gamma_(std::move(gamma)), beta_(std::move(beta)) {
  if (gamma_.size() != beta_.size()) throw ParameterError("angle schedule: gamma and beta lengths differ");
  if (gamma_.empty()) throw ParameterError("angle schedule: depth must be at least 1");
  for (double& g : gamma_) g = reduce_angle(g, 2.0 * std::numbers::pi);
  for (double& b : beta_) b = reduce_angle(b, std::numbers::pi);
}

AngleSchedule AngleSchedule::from_flat(std::span<const double> flat) {
  if (flat.size() % 2 != 0) throw ParameterError("angle schedule: flat vector has odd length");
  const std::size_t p = flat.size() / 2;
  return AngleSchedule({flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p)},
                       {flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end()});
}

AngleSchedule AngleSchedule::zeros(int p) {
  if (p < 1) throw ParameterError("angle schedule: depth must be at least 1");
  return AngleSchedule(std::vector<double>(static_cast<std::size_t>(p), 0.0),
                       std::vector<double>(static_cast<std::size_t>(p), 0.0));
}

std::vector<double> AngleSchedule::flat() const {
  std::vector<double> out = gamma_;
  out.insert(out.end(), beta_.begin(), beta_.end());
  return out;
}

std::string to_angle_json(const AngleSchedule& a) {
  nlohmann::ordered_json j;
  j["p"] = a.depth();
  j["gamma"] = a.gamma();
  j["beta"] = a.beta();
  return j.dump(2) + "\n";
}

AngleSchedule parse_angle_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& [key, _] : j.items())
      if (key != "p" && key != "gamma" && key != "beta")
        throw ConfigError("angle file: unknown field '" + key + "'");
    auto gamma = j.at("gamma").get<std::vector<double>>();
    auto beta = j.at("beta").get<std::vector<double>>();
    if (j.at("p").get<int>() != static_cast<int>(gamma.size()))
      throw ConfigError("angle file: p does not match the number of angles");
    return AngleSchedule(std::move(gamma), std::move(beta));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("angle file: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("angle file: ") + e.what());
  }
}

}  // namespace qaoa
