#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qaoa {

/// QAOA control parameters for depth p. gamma is kept in [0, 2pi) and beta
/// in [0, pi); both periods are exact for integer-valued MaxCut costs.
class AngleSchedule {
 public:
  AngleSchedule() = default;
  AngleSchedule(std::vector<double> gamma, std::vector<double> beta);

  /// Unpacks (gamma_1..gamma_p, beta_1..beta_p).
  static AngleSchedule from_flat(std::span<const double> flat);
  static AngleSchedule zeros(int p);

  int depth() const noexcept { return static_cast<int>(gamma_.size()); }
  const std::vector<double>& gamma() const noexcept { return gamma_; }
  const std::vector<double>& beta() const noexcept { return beta_; }
  std::vector<double> flat() const;

  friend bool operator==(const AngleSchedule&, const AngleSchedule&) = default;

 private:
  std::vector<double> gamma_;
  std::vector<double> beta_;
};

double reduce_angle(double x, double period);

/// Angle files are JSON objects {"p": .., "gamma": [..], "beta": [..]} in radians.
std::string to_angle_json(const AngleSchedule& a);
AngleSchedule parse_angle_json(const std::string& text);

}  // namespace qaoa
