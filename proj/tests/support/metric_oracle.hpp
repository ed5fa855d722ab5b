#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "ja/core/types.hpp"

namespace ja::testing {

// Brute-force metric counter used as an oracle: counts pairs directly and
// rounds with floor(x * 100 + 0.5) plus a tolerance far below the smallest
// gap between a metric and a rounding tie.
struct OracleMetrics {
  std::array<double, 3> precision{}, recall{}, f1{};
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
};

inline double oracle_round2(double x) {
  return std::floor(x * 100.0 + 0.5 + 1e-9) / 100.0;
}

inline OracleMetrics oracle_metrics(const std::vector<Label>& reference,
                                    const std::vector<Label>& predicted) {
  OracleMetrics m;
  double sp = 0, sr = 0, sf = 0;
  for (int c = 0; c < 3; ++c) {
    const Label label = static_cast<Label>(c);
    int tp = 0, npred = 0, nref = 0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
      tp += reference[i] == label && predicted[i] == label;
      npred += predicted[i] == label;
      nref += reference[i] == label;
    }
    const double p = npred ? static_cast<double>(tp) / npred : 0.0;
    const double r = nref ? static_cast<double>(tp) / nref : 0.0;
    const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    m.precision[c] = oracle_round2(p);
    m.recall[c] = oracle_round2(r);
    m.f1[c] = oracle_round2(f);
    sp += p;
    sr += r;
    sf += f;
  }
  m.macro_precision = oracle_round2(sp / 3);
  m.macro_recall = oracle_round2(sr / 3);
  m.macro_f1 = oracle_round2(sf / 3);
  return m;
}

}  // namespace ja::testing
