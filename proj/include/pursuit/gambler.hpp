#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pursuit/errors.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/rng.hpp"

namespace pursuit {

// Time-independent distribution over the n vertices; the gambler draws a
// fresh vertex from it every turn. Probabilities are normalized on
// construction (survival products downstream are sensitive to drift in the
// sum). Immutable after construction; sampling needs a caller-owned rng.
class gambler_distribution {
public:
  gambler_distribution() = default;

  static gambler_distribution uniform(int n);

  // Throws negative_weight / all_zero_weights / invalid_parameter.
  static gambler_distribution from_weights(std::span<const double> weights);

  static gambler_distribution point_mass(int n, vertex_t v);

  // "uniform", "point:<i>", or comma-separated weights ("1,0,2.5,1").
  static gambler_distribution parse(std::string_view text, int n);

  int n() const { return static_cast<int>(p_.size()); }
  double prob(vertex_t v) const { return p_[v]; }
  std::span<const double> probs() const { return p_; }

  // Inverse-CDF over the precomputed cumulative table.
  vertex_t sample(rng64& rng) const;

private:
  explicit gambler_distribution(std::vector<double> p);

  std::vector<double> p_;
  std::vector<double> cum_;
};

}  // namespace pursuit
