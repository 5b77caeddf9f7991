#include "decider_lab/oracles.hpp"

#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "decider_lab/machines.hpp"

namespace decider_lab::oracles {

using machines::paren::LP;
using machines::paren::RP;

std::int64_t left_minus_right(const tm::Word& word, std::size_t i) {
  if (i > word.size()) throw std::out_of_range("left_minus_right: prefix longer than word");
  std::int64_t d = 0;
  for (std::size_t j = 0; j < i; ++j) d += word[j] == LP ? 1 : -1;
  return d;
}

bool never_more_right_than_left(const tm::Word& word, std::size_t i) {
  if (i > word.size()) throw std::out_of_range("never_more_right_than_left: prefix longer than word");
  std::int64_t d = 0;
  for (std::size_t j = 0; j < i; ++j) {
    d += word[j] == LP ? 1 : -1;
    if (d < 0) return false;
  }
  return true;
}

tm::Decision oracle_parentheses(const tm::Word& word) {
  std::size_t i = 0;
  std::int64_t d = 0;
  while (i < word.size() && d >= 0) {
    d += word[i] == LP ? 1 : -1;
    ++i;
  }
  return d == 0 ? tm::Decision::Accept : tm::Decision::Reject;
}

bool cfg_member(const tm::Word& word) {
  const std::size_t n = word.size();
  // derives[i][j]: S =>* word[i..j)
  std::vector<std::vector<char>> derives(n + 1, std::vector<char>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) derives[i][i] = 1;
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      bool ok = len >= 2 && word[i] == LP && word[j - 1] == RP && derives[i + 1][j - 1];
      for (std::size_t m = i + 1; !ok && m < j; ++m) ok = derives[i][m] && derives[m][j];
      derives[i][j] = ok;
    }
  }
  return derives[0][n];
}

std::int64_t power(std::int64_t b, std::uint32_t k) {
  std::int64_t r = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("power: result exceeds int64");
  }
  return r;
}

bool is_power_of_2(std::uint64_t n) {
  for (std::uint32_t k = 0; k <= 62; ++k) {
    const auto p = static_cast<std::uint64_t>(power(2, k));
    if (p == n) return true;
    if (p > n) return false;
  }
  return n == (std::uint64_t{1} << 63);
}

bool oracle_sipser_m2(std::uint64_t n) {
  if (n == 0) return false;
  std::uint64_t s = n;
  while (s % 2 == 0) s /= 2;
  return s == 1;
}

PowerLemmas standard_power_lemmas() {
  PowerLemmas l;
  l.zero = [](std::uint64_t) { return !is_power_of_2(0); };
  l.even = [](std::uint64_t n) { return n % 2 != 0 || is_power_of_2(n) == is_power_of_2(n / 2); };
  l.odd = [](std::uint64_t n) {
    return is_power_of_2(1) && (n % 2 == 0 || is_power_of_2(n) == (n == 1));
  };
  l.definition = [](std::uint64_t n) {
    static const std::set<std::uint64_t> powers = [] {
      std::set<std::uint64_t> s;
      std::uint64_t p = 1;
      for (int k = 0; k < 64; ++k, p *= 2) s.insert(p);
      return s;
    }();
    return is_power_of_2(n) == (powers.count(n) == 1);
  };
  return l;
}

LemmaReport check_power_lemmas(std::uint64_t max_n, const PowerLemmas& lemmas) {
  if (max_n < 2) throw std::invalid_argument("check_power_lemmas: max_n must be at least 2");
  LemmaReport report;
  auto fail = [&](const char* name, std::uint64_t n) {
    report.passed = false;
    report.failed_lemma = name;
    report.counterexample = n;
    return report;
  };
  if (!lemmas.zero(0)) return fail("zero", 0);
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    if (!lemmas.even(n)) return fail("even", n);
    if (!lemmas.odd(n)) return fail("odd", n);
    if (!lemmas.definition(n)) return fail("definition", n);
    ++report.checked;
  }
  return report;
}

}  // namespace decider_lab::oracles
