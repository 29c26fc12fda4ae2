#pragma once

// Seeded generators shared by the property tests and the acceptance suite.

#include "modcert/entropy.hpp"
#include "modcert/modgroup.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace modcert::testing {

inline GeneratorWord random_st_word(std::mt19937_64& rng, int max_length) {
  std::uniform_int_distribution<int> length(0, max_length);
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Letter> letters;
  const int n = length(rng);
  for (int i = 0; i < n; ++i) {
    const int k = pick(rng);
    letters.push_back({k < 2 ? Generator::S : Generator::T, (k % 2) ? -1 : 1});
  }
  return GeneratorWord(Alphabet::ST, std::move(letters));
}

/// Rejection-samples a matrix with entries in [-bound, bound] and det +-1.
inline GroupElement random_unimodular(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> entry(-bound, bound);
  for (;;) {
    const long a = entry(rng), b = entry(rng), c = entry(rng), d = entry(rng);
    const long det = a * d - b * c;
    if (det == 1 || det == -1) return GroupElement::from_entries(a, b, c, d);
  }
}

/// Random rational joint on a subset of an (rows x cols) grid, rows and
/// cols in [1, max_side]. Roughly a third of the cells are dropped from the
/// support and some kept cells get weight 0.
inline RationalJoint random_rational_joint(std::mt19937_64& rng, long max_side) {
  std::uniform_int_distribution<long> side(1, max_side);
  std::uniform_int_distribution<int> die(0, 5);
  std::uniform_int_distribution<long> weight(1, 20);
  for (;;) {
    const long rows = side(rng), cols = side(rng);
    std::vector<long> raw;
    std::vector<std::pair<long, long>> support;
    for (long r = 0; r < rows; ++r) {
      for (long c = 0; c < cols; ++c) {
        const int roll = die(rng);
        if (roll <= 1) continue;  // hole in the support
        support.emplace_back(r, c);
        raw.push_back(roll == 2 ? 0 : weight(rng));
      }
    }
    const long total = std::accumulate(raw.begin(), raw.end(), 0L);
    if (total == 0) continue;
    std::vector<JointCell<Rational>> cells;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      cells.push_back({support[i].first, support[i].second, make_rational(raw[i], total)});
    }
    return RationalJoint::from_cells(std::move(cells));
  }
}

inline RealJoint to_real(const RationalJoint& j) {
  std::vector<JointCell<double>> cells;
  double total = 0.0;
  for (const auto& c : j.cells()) {
    cells.push_back({c.row, c.col, c.weight.get_d()});
    total += cells.back().weight;
  }
  for (auto& c : cells) c.weight /= total;
  return RealJoint::from_cells(std::move(cells));
}

}  // namespace modcert::testing
