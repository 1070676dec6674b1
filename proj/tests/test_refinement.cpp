#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "resonance/refinement.hpp"
#include "resonance/schottky.hpp"

using namespace resonance;

namespace {

std::vector<int> alphabet(int q) {
  std::vector<int> out;
  for (int k = -q; k <= q; ++k) {
    if (k != 0) out.push_back(k);
  }
  return out;
}

// Direct definition: all (w_1..w_n, l) with w_{k+1} != -w_k and l != w_n.
std::set<Word> brute_force_words(int q, int n) {
  const auto letters = alphabet(q);
  std::set<Word> out;
  std::vector<std::size_t> digit(static_cast<std::size_t>(n) + 1, 0);
  for (;;) {
    Word w;
    for (int i = 0; i < n; ++i) w.letters.push_back(letters[digit[static_cast<std::size_t>(i)]]);
    w.tail = letters[digit.back()];
    bool ok = true;
    for (int i = 1; i < n; ++i) ok = ok && w.letters[i] != -w.letters[i - 1];
    if (n > 0) ok = ok && w.tail != w.letters.back();
    if (ok) out.insert(w);
    std::size_t pos = 0;
    while (pos < digit.size() && ++digit[pos] == letters.size()) digit[pos++] = 0;
    if (pos == digit.size()) break;
  }
  return out;
}

Word word(std::vector<int> letters, int tail) { return Word{std::move(letters), tail}; }

// Pattern of a displayed matrix whose rows and columns follow `order`.
std::set<std::pair<std::size_t, std::size_t>> displayed_pattern(
    const std::vector<Word>& order, const std::vector<std::vector<int>>& rows, int q, int n) {
  const auto words = index_set(q, n);
  std::map<Word, std::size_t> position;
  for (std::size_t i = 0; i < words.size(); ++i) position[words[i]] = i;
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] != 0) out.emplace(position.at(order[r]), position.at(order[c]));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("word sets for q = 2") {
  const auto w0 = index_set(2, 0);
  REQUIRE(w0.size() == 4);
  CHECK(w0[0] == word({}, -2));
  CHECK(w0[1] == word({}, -1));
  CHECK(w0[2] == word({}, 1));
  CHECK(w0[3] == word({}, 2));
  CHECK(index_set(2, 1).size() == 12);
  CHECK(index_set(3, 2).size() == 150);
}

TEST_CASE("index_set equals the brute-force word set") {
  for (int q = 1; q <= 4; ++q) {
    for (int n = 0; n <= 4; ++n) {
      const auto words = index_set(q, n);
      const std::set<Word> unique(words.begin(), words.end());
      CHECK(unique.size() == words.size());
      CHECK(unique == brute_force_words(q, n));
      CHECK(words.size() == index_set_size(q, n));
      for (const auto& w : words) CHECK(w.admissible(q));
    }
  }
}

TEST_CASE("refined intervals") {
  const auto cyl = hyperbolic_cylinder(4.0);
  const auto i1 = refined_interval(cyl, word({}, 1));
  CHECK(i1.center == cyl.interval(1).center);
  CHECK(i1.radius == cyl.interval(1).radius);
  CHECK(cyl.interval(-1).contains(refined_interval(cyl, word({1}, -1))));
  CHECK_FALSE(word({1}, -1).admissible(1) == word({1}, 1).admissible(1));

  const auto x = three_funnel(10, 10, 10);
  for (int n = 1; n <= 3; ++n) {
    const auto words = index_set(2, n);
    std::vector<Interval> intervals;
    for (const auto& w : words) {
      intervals.push_back(refined_interval(x, w));
      CHECK(x.interval(-w.letters.front()).contains(intervals.back()));
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.center < b.center; });
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      CHECK(intervals[i - 1].gap_to(intervals[i]) > 0.0);
    }
  }
}

TEST_CASE("block partners") {
  const auto row = block_partners(2, word({2}, 1));
  const std::set<Word> got(row.begin(), row.end());
  const std::set<Word> expected{word({-1}, -2), word({1}, -2), word({2}, -2)};
  CHECK(got == expected);
  std::map<Word, int> coefficient;
  for (const auto& w : row) coefficient[w] = block_coefficient(w);
  CHECK(coefficient[word({2}, -2)] == -2);
  CHECK(coefficient[word({1}, -2)] == -1);
  CHECK(coefficient[word({-1}, -2)] == 1);

  const auto level0 = block_partners(2, word({}, 1));
  const std::set<Word> got0(level0.begin(), level0.end());
  CHECK(got0 == std::set<Word>{word({}, -2), word({}, 1), word({}, 2)});

  for (int q = 1; q <= 3; ++q) {
    for (int n = 0; n <= 3; ++n) {
      for (const auto& v : index_set(q, n)) {
        const auto partners = block_partners(q, v);
        CHECK(partners.size() == static_cast<std::size_t>(2 * q - 1));
        for (const auto& w : partners) CHECK(w.admissible(q));
      }
      CHECK(sparsity_pattern(q, n).size() == index_set_size(q, n) * (2 * q - 1));
    }
  }
}

TEST_CASE("sparsity matches the displayed level-0 matrix") {
  const std::vector<Word> order{word({}, -2), word({}, -1), word({}, 1), word({}, 2)};
  const std::vector<std::vector<int>> rows{
      {-2, -1, 1, 0}, {-2, -1, 0, 2}, {-2, 0, 1, 2}, {0, -1, 1, 2}};
  const auto pattern = sparsity_pattern(2, 0);
  const std::set<std::pair<std::size_t, std::size_t>> got(pattern.begin(), pattern.end());
  CHECK(got == displayed_pattern(order, rows, 2, 0));
  // Entries are tau_s(S_w) in column w.
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      if (rows[r][c] != 0) CHECK(block_coefficient(order[c]) == rows[r][c]);
    }
  }
}

TEST_CASE("sparsity matches the displayed level-1 matrix") {
  // Function vector order f_{a,b} on S_a.I_b as displayed.
  const std::vector<Word> order{word({2}, 1),   word({2}, -2),  word({2}, -1), word({1}, -2),
                                word({1}, -1),  word({1}, 2),   word({-1}, -2), word({-1}, 1),
                                word({-1}, 2),  word({-2}, 1),  word({-2}, 2), word({-2}, -1)};
  const std::vector<int> r1{0, -2, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0};
  const std::vector<int> r2{0, 0, -2, 0, -1, 0, 0, 0, 0, 0, 0, 2};
  const std::vector<int> r3{-2, 0, 0, 0, 0, 0, 0, 1, 0, 2, 0, 0};
  const std::vector<int> r4{0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 2, 0};
  const std::vector<std::vector<int>> rows{r1, r1, r1, r2, r2, r2, r3, r3, r3, r4, r4, r4};
  const auto pattern = sparsity_pattern(2, 1);
  const std::set<std::pair<std::size_t, std::size_t>> got(pattern.begin(), pattern.end());
  CHECK(got == displayed_pattern(order, rows, 2, 1));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] != 0) CHECK(block_coefficient(order[c]) == rows[r][c]);
    }
  }
}

TEST_CASE("charts reproduce the affine coordinate of I_w") {
  // Oracle: endpoints of I_w and the lifted point in 50 digits.
  using Big = boost::multiprecision::cpp_bin_float_50;
  const auto x = three_funnel(10, 10, 10);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& w : index_set(2, n)) {
      const auto chart = refined_chart(x, w);
      const auto lift = lift_maps(x, w);
      const Interval& base = x.interval(w.tail);
      auto lifted = [&](Big y) {
        for (const auto& g : lift) y = act(g, y);
        return y;
      };
      const Big lo = lifted(Big(base.lo()));
      const Big hi = lifted(Big(base.hi()));
      for (double u : {-0.8, 0.0, 0.6}) {
        const Big y = lifted(Big(chart.from_unit(u)));
        const Big affine = (2 * y - lo - hi) / (hi - lo);
        CHECK(std::abs(static_cast<double>(affine) - u) < 1e-12);
      }
    }
  }
}

TEST_CASE("chart transition is T_w^{-1} g T_v") {
  const auto x = three_funnel(7, 7, 7);
  for (const auto& v : index_set(2, 1)) {
    for (const auto& w : block_partners(2, v)) {
      const auto transition = chart_transition(x, v, w);
      const auto g = pullback_map(x, w);
      const double base = x.interval(v.tail).from_unit(0.3);
      double y = base;
      for (const auto& m : lift_maps(x, v)) y = m.apply(y);
      double back = g.apply(y);
      for (int letter : w.letters) back = x.generator(-letter).apply(back);
      CHECK(transition.apply(base) == doctest::Approx(back).epsilon(1e-9));
    }
  }
}
