#include "ja/core/rounding.hpp"

#include <cmath>
#include <numeric>

#include "ja/error.hpp"

namespace ja {
namespace {

std::int64_t pow10(int decimals) {
  std::int64_t p = 1;
  for (int i = 0; i < decimals; ++i) p *= 10;
  return p;
}

}  // namespace

Fraction Fraction::ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return Fraction{0, 1};
  if (num < 0 || den < 0) throw invalid_input("negative ratio");
  const std::int64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

Fraction Fraction::operator+(const Fraction& other) const {
  const std::int64_t g = std::gcd(den, other.den);
  const std::int64_t lcm = den / g * other.den;
  return ratio(num * (lcm / den) + other.num * (lcm / other.den), lcm);
}

Fraction Fraction::operator/(std::int64_t divisor) const {
  return ratio(num, den * divisor);
}

double round_half_up(Fraction value, int decimals) {
  const std::int64_t scale = pow10(decimals);
  // floor(num * scale / den + 1/2) == floor((2 * num * scale + den) / (2 * den))
  const std::int64_t scaled =
      (2 * value.num * scale + value.den) / (2 * value.den);
  return static_cast<double>(scaled) / static_cast<double>(scale);
}

double round_half_up(double value, int decimals) {
  const double scale = static_cast<double>(pow10(decimals));
  const double scaled = value * scale;
  const double nudge = std::fabs(scaled) * 1e-12;
  return std::floor(scaled + 0.5 + nudge) / scale;
}

double harmonic_mean(double precision, double recall) {
  const double sum = precision + recall;
  if (sum <= 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

}  // namespace ja
