#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace fmutest::mutation {

enum class Operator { Mirror, RandomUniform, Crossover, Polynomial };

std::string_view to_string(Operator op) noexcept;
/// Accepts the canonical names plus "uniform" for random_uniform.
std::optional<Operator> parse_operator(std::string_view text) noexcept;

constexpr double kDefaultEta = 20.0;

/// y'_k = lo + hi - y_k. Throws Error{DegenerateBounds} when lo >= hi.
std::vector<double> mutate_mirror(const std::vector<double>& y, double lo, double hi);

/// Replaces samples a..b (inclusive) with one value drawn from [lo, hi].
/// Requires a <= b < y.size(); `drawn` receives the value when non-null.
std::vector<double> mutate_random_uniform(const std::vector<double>& y, double lo, double hi,
                                          std::size_t a, std::size_t b, std::uint64_t seed,
                                          std::uint64_t stream = 0, double* drawn = nullptr);

/// Swaps the tails from sample c on. Requires 0 < c < size (c = N swaps the
/// last sample). Throws Error{LengthMismatch} for unequal lengths.
std::pair<std::vector<double>, std::vector<double>> mutate_crossover(const std::vector<double>& y1,
                                                                     const std::vector<double>& y2,
                                                                     std::size_t c);

/// Polynomial perturbation offset for a uniform draw u in [0, 1).
double polynomial_delta(double u, double eta) noexcept;

/// y'_k = clamp(y_k + delta_k (hi - lo), lo, hi), one draw per sample.
std::vector<double> mutate_polynomial(const std::vector<double>& y, double lo, double hi,
                                      double eta, std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace fmutest::mutation
