#include "pursuit/gambler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

namespace pursuit {

gambler_distribution::gambler_distribution(std::vector<double> p) : p_(std::move(p)) {
  cum_.resize(p_.size());
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    running += p_[i];
    cum_[i] = running;
    if (p_[i] > 0.0) last_positive = i;
  }
  // Close the table against rounding in the partial sums; pinning from the
  // last positive entry on keeps zero-probability tail vertices unreachable.
  for (std::size_t i = last_positive; i < cum_.size(); ++i) cum_[i] = 1.0;
}

gambler_distribution gambler_distribution::uniform(int n) {
  if (n < 1) raise(errc::invalid_parameter, "distribution needs n >= 1");
  return gambler_distribution(std::vector<double>(n, 1.0 / n));
}

gambler_distribution gambler_distribution::from_weights(std::span<const double> weights) {
  if (weights.empty()) raise(errc::invalid_parameter, "empty weight vector");
  long double total = 0.0L;
  for (double w : weights) {
    if (std::isnan(w) || w < 0.0)
      raise(errc::negative_weight, "weights must be nonnegative");
    if (!std::isfinite(w))
      raise(errc::invalid_parameter, "weights must be finite");
    total += w;
  }
  if (total <= 0.0L) raise(errc::all_zero_weights, "weights sum to zero");
  std::vector<double> p(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    p[i] = static_cast<double>(weights[i] / total);
  return gambler_distribution(std::move(p));
}

gambler_distribution gambler_distribution::point_mass(int n, vertex_t v) {
  if (n < 1 || v < 0 || v >= n)
    raise(errc::invalid_parameter, "point mass vertex out of range");
  std::vector<double> p(n, 0.0);
  p[v] = 1.0;
  return gambler_distribution(std::move(p));
}

gambler_distribution gambler_distribution::parse(std::string_view text, int n) {
  if (text == "uniform") return uniform(n);
  constexpr std::string_view kPoint = "point:";
  if (text.substr(0, kPoint.size()) == kPoint) {
    std::string_view idx = text.substr(kPoint.size());
    long long v = -1;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), v);
    if (ec != std::errc{} || ptr != idx.data() + idx.size())
      raise(errc::invalid_parameter, "bad point mass spec: " + std::string(text));
    return point_mass(n, static_cast<vertex_t>(v));
  }
  std::vector<double> w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string token(text.substr(pos, comma - pos));
    if (token.empty())
      raise(errc::invalid_parameter, "bad weight list: " + std::string(text));
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      raise(errc::invalid_parameter, "bad weight: " + token);
    }
    if (used != token.size()) raise(errc::invalid_parameter, "bad weight: " + token);
    w.push_back(value);
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  if (static_cast<int>(w.size()) != n)
    raise(errc::invalid_parameter,
          "weight list has " + std::to_string(w.size()) + " entries, graph has " +
              std::to_string(n) + " vertices");
  return from_weights(w);
}

vertex_t gambler_distribution::sample(rng64& rng) const {
  const double u = rng.next_double();
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  if (it == cum_.end()) --it;
  return static_cast<vertex_t>(it - cum_.begin());
}

}  // namespace pursuit
