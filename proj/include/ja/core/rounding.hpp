#pragma once

#include <cstdint>

namespace ja {

// Exact non-negative rational. A zero denominator is never stored; callers
// that divide by an empty count get 0/1 from ratio().
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction ratio(std::int64_t num, std::int64_t den);

  Fraction operator+(const Fraction& other) const;
  Fraction operator/(std::int64_t divisor) const;
  bool operator==(const Fraction& other) const = default;

  double to_double() const { return static_cast<double>(num) / den; }
};

// num/den rounded half-up to `decimals` places using integer arithmetic only,
// so ties such as 0.125 -> 0.13 are never lost to binary representation.
double round_half_up(Fraction value, int decimals);

// Half-up rounding for values that are not exact rationals (means of
// per-video accuracies). A relative nudge absorbs representation error on
// inputs that are exact decimal ties.
double round_half_up(double value, int decimals);

// 2PR/(P+R), or 0 when P+R == 0.
double harmonic_mean(double precision, double recall);

}  // namespace ja
