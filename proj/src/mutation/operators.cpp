#include "fmutest/mutation/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"
#include "fmutest/signal/pcg32.hpp"

namespace fmutest::mutation {

std::string_view to_string(Operator op) noexcept {
  switch (op) {
    case Operator::Mirror: return "mirror";
    case Operator::RandomUniform: return "random_uniform";
    case Operator::Crossover: return "crossover";
    case Operator::Polynomial: return "polynomial";
  }
  return "unknown";
}

std::optional<Operator> parse_operator(std::string_view text) noexcept {
  if (text == "mirror") return Operator::Mirror;
  if (text == "random_uniform" || text == "uniform") return Operator::RandomUniform;
  if (text == "crossover") return Operator::Crossover;
  if (text == "polynomial") return Operator::Polynomial;
  return std::nullopt;
}

namespace {

void require_bounds(double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(Errc::DegenerateBounds,
                "bounds [" + format_real(lo) + ", " + format_real(hi) + "] have no width");
  }
}

}  // namespace

std::vector<double> mutate_mirror(const std::vector<double>& y, double lo, double hi) {
  require_bounds(lo, hi);
  std::vector<double> out(y.size());
  std::transform(y.begin(), y.end(), out.begin(),
                 [&](double v) { return std::clamp(lo + hi - v, lo, hi); });
  return out;
}

std::vector<double> mutate_random_uniform(const std::vector<double>& y, double lo, double hi,
                                          std::size_t a, std::size_t b, std::uint64_t seed,
                                          std::uint64_t stream, double* drawn) {
  if (!(a <= b && b < y.size())) {
    throw Error(Errc::InvalidConfig, "random_uniform range [" + std::to_string(a) + ", " +
                                         std::to_string(b) + "] outside the series");
  }
  signal::Pcg32 rng(seed, stream);
  const double v = std::clamp(rng.uniform(lo, hi), std::min(lo, hi), std::max(lo, hi));
  if (drawn != nullptr) *drawn = v;
  std::vector<double> out = y;
  std::fill(out.begin() + static_cast<std::ptrdiff_t>(a),
            out.begin() + static_cast<std::ptrdiff_t>(b) + 1, v);
  return out;
}

std::pair<std::vector<double>, std::vector<double>> mutate_crossover(const std::vector<double>& y1,
                                                                     const std::vector<double>& y2,
                                                                     std::size_t c) {
  if (y1.size() != y2.size()) {
    throw Error(Errc::LengthMismatch, "crossover of series with lengths " +
                                          std::to_string(y1.size()) + " and " +
                                          std::to_string(y2.size()));
  }
  if (c == 0 || c >= y1.size()) {
    throw Error(Errc::InvalidConfig, "crossover site " + std::to_string(c) + " out of range");
  }
  std::pair<std::vector<double>, std::vector<double>> out{y1, y2};
  std::copy(y2.begin() + static_cast<std::ptrdiff_t>(c), y2.end(),
            out.first.begin() + static_cast<std::ptrdiff_t>(c));
  std::copy(y1.begin() + static_cast<std::ptrdiff_t>(c), y1.end(),
            out.second.begin() + static_cast<std::ptrdiff_t>(c));
  return out;
}

double polynomial_delta(double u, double eta) noexcept {
  const double p = 1.0 / (1.0 + eta);
  if (u < 0.5) return std::pow(2.0 * u, p) - 1.0;
  return 1.0 - std::pow(2.0 * (1.0 - u), p);
}

std::vector<double> mutate_polynomial(const std::vector<double>& y, double lo, double hi,
                                      double eta, std::uint64_t seed, std::uint64_t stream) {
  require_bounds(lo, hi);
  if (!(eta > 0.0)) throw Error(Errc::InvalidConfig, "eta must be positive");
  signal::Pcg32 rng(seed, stream);
  std::vector<double> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double delta = polynomial_delta(rng.uniform01(), eta);
    out[k] = std::clamp(y[k] + delta * (hi - lo), lo, hi);
  }
  return out;
}

}  // namespace fmutest::mutation
