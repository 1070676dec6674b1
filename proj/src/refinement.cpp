#include "resonance/refinement.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include "resonance/errors.hpp"

namespace resonance {

bool Word::admissible(int q) const {
  auto in_alphabet = [q](int k) { return k != 0 && k >= -q && k <= q; };
  if (!in_alphabet(tail)) return false;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (!in_alphabet(letters[k])) return false;
    if (k > 0 && letters[k] == -letters[k - 1]) return false;
  }
  return letters.empty() || tail != letters.back();
}

std::ostream& operator<<(std::ostream& os, const Word& w) {
  os << "(";
  for (int k : w.letters) os << k << ",";
  return os << w.tail << ")";
}

std::string to_string(const Word& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

std::vector<Word> index_set(int q, int n) {
  if (q < 1 || n < 0) throw Error(ErrorCode::InvalidParameter, "index_set needs q >= 1, n >= 0");

  std::vector<int> alphabet;
  for (int k = -q; k <= q; ++k) {
    if (k != 0) alphabet.push_back(k);
  }

  std::vector<Word> words;
  for (int k : alphabet) words.push_back(Word{{}, k});

  for (int level = 1; level <= n; ++level) {
    // At level 1 the new letter must differ from l; afterwards it must not
    // cancel the current first letter.
    const int sign = level < 2 ? 1 : -1;
    std::vector<Word> next;
    next.reserve(words.size() * alphabet.size());
    for (const Word& w : words) {
      for (int k : alphabet) {
        if (sign * k == w.first()) continue;
        Word extended;
        extended.letters.reserve(w.letters.size() + 1);
        extended.letters.push_back(k);
        extended.letters.insert(extended.letters.end(), w.letters.begin(), w.letters.end());
        extended.tail = w.tail;
        next.push_back(std::move(extended));
      }
    }
    words = std::move(next);
  }
  return words;
}

std::size_t index_set_size(int q, int n) {
  std::size_t size = 2 * static_cast<std::size_t>(q);
  for (int i = 0; i < n; ++i) size *= static_cast<std::size_t>(2 * q - 1);
  return size;
}

Interval refined_interval(const SchottkyData& data, const Word& w) {
  Interval interval = data.interval(w.tail);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    interval = map_interval(data.generator(*it), interval);
  }
  return interval;
}

std::vector<Word> block_partners(int q, const Word& v) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(2 * q - 1));
  if (v.level() == 0) {
    for (int k = -q; k <= q; ++k) {
      if (k != 0 && k != -v.tail) out.push_back(Word{{}, k});
    }
    return out;
  }
  const std::size_t n = v.level();
  for (int w1 = -q; w1 <= q; ++w1) {
    if (w1 == 0 || w1 == -v.letters.front()) continue;
    Word w;
    w.letters.reserve(n);
    w.letters.push_back(w1);
    w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end() - 1);
    w.tail = -v.letters.back();
    out.push_back(std::move(w));
  }
  return out;
}

int block_coefficient(const Word& w) {
  return w.level() == 0 ? w.tail : -w.letters.front();
}

MoebiusTransform pullback_map(const SchottkyData& data, const Word& w) {
  return data.generator(-block_coefficient(w));
}

std::vector<MoebiusTransform> lift_maps(const SchottkyData& data, const Word& w) {
  std::vector<MoebiusTransform> out;
  out.reserve(w.level());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.push_back(data.generator(*it));
  return out;
}

MoebiusTransform chart_transition(const SchottkyData& data, const Word& v, const Word& w) {
  if (v.level() == 0) return pullback_map(data, w);
  return data.generator(v.letters.back());
}

std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(int q, int n) {
  const auto words = index_set(q, n);
  std::map<Word, std::size_t> position;
  for (std::size_t i = 0; i < words.size(); ++i) position.emplace(words[i], i);

  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(words.size() * static_cast<std::size_t>(2 * q - 1));
  for (std::size_t row = 0; row < words.size(); ++row) {
    for (const Word& w : block_partners(q, words[row])) {
      out.emplace_back(row, position.at(w));
    }
  }
  return out;
}

}  // namespace resonance
