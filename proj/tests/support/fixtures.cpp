#include "support/fixtures.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace ja::testing {
namespace {

constexpr Label S = Label::kStrong;
constexpr Label M = Label::kModerate;
constexpr Label P = Label::kPoor;

}  // namespace

std::vector<std::array<Label, 3>> table3_label_matrix() {
  // Multiplicities solved offline as a small integer program over the 27
  // possible label triples; the marginals are checked again in the tests.
  const std::vector<std::pair<std::array<Label, 3>, int>> recipe = {
      {{S, S, S}, 136}, {{S, M, M}, 19}, {{M, S, M}, 36}, {{M, S, P}, 23},
      {{M, M, S}, 14},  {{M, M, M}, 340}, {{M, M, P}, 18}, {{M, P, M}, 41},
      {{P, M, M}, 1},   {{P, P, P}, 10},
  };
  std::vector<std::array<Label, 3>> rows;
  for (const auto& [triple, count] : recipe) {
    rows.insert(rows.end(), static_cast<std::size_t>(count), triple);
  }
  std::mt19937_64 rng(638);
  std::shuffle(rows.begin(), rows.end(), rng);
  return rows;
}

std::vector<std::array<Label, 3>> random_label_matrix(std::size_t rows,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<std::array<Label, 3>> out(rows);
  for (auto& row : out) {
    for (auto& cell : row) cell = static_cast<Label>(pick(rng));
  }
  return out;
}

const std::vector<int>& synthetic_video_segment_counts() {
  // 13 clips under a minute, 11 between one and five minutes, one of
  // 5-10 minutes and one over ten minutes.
  static const std::vector<int> counts = {
      10, 11, 12, 12, 12, 12, 11, 10, 12, 12, 12, 11, 12,   // < 1 min
      14, 18, 20, 22, 24, 26, 28, 30, 16, 19, 22,           // 1-5 min
      110,                                                  // 5-10 min
      140,                                                  // > 10 min
  };
  return counts;
}

const std::vector<AccuracyFixture>& table4_action_fixture() {
  static const std::vector<AccuracyFixture> fixture = {
      // twelve perfect videos
      {3, 6}, {4, 8}, {5, 10}, {2, 4}, {6, 12}, {3, 6},
      {4, 8}, {5, 10}, {2, 4}, {3, 6}, {4, 8}, {5, 10},
      // the two middle order statistics, 53/56 each
      {28, 53}, {28, 53},
      // the lower half
      {4, 5},    // 5/8
      {3, 4},    // 2/3
      {5, 7},    // 7/10
      {7, 10},   // 5/7
      {2, 3},    // 3/4
      {2, 3},    // 3/4
      {13, 20},  // 10/13
      {9, 14},   // 7/9
      {5, 8},    // 4/5
      {5, 8},    // 4/5
      {3, 5},    // 5/6
      {15, 22},  // 11/15
  };
  return fixture;
}

}  // namespace ja::testing
