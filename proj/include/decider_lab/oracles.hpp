// Reference deciders and specification predicates for both languages.
//
// Parentheses words are tm::Word over {LP, RP} (machines::paren::Input);
// unary words 0^n are passed as their length n.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "decider_lab/tm_core.hpp"

namespace decider_lab::oracles {

/// #LP - #RP over the first i symbols. Throws std::out_of_range if i > |word|.
std::int64_t left_minus_right(const tm::Word& word, std::size_t i);

/// left_minus_right(word, j) >= 0 for every j in [0, i].
bool never_more_right_than_left(const tm::Word& word, std::size_t i);

/// Single left-to-right scan with a running difference; stops early once it goes negative.
tm::Decision oracle_parentheses(const tm::Word& word);

/// Membership in S -> (S) | SS | eps by substring dynamic programming.
/// Independent of the counting characterisation above.
bool cfg_member(const tm::Word& word);

/// b^k. Throws std::overflow_error if the result leaves int64.
std::int64_t power(std::int64_t b, std::uint32_t k);

/// There is a k with n == power(2, k).
bool is_power_of_2(std::uint64_t n);

/// Halve while even, accept iff what remains is 1; zero is rejected outright.
bool oracle_sipser_m2(std::uint64_t n);

/// The three lemmas as checkable statements over n.
struct PowerLemmas {
  std::function<bool(std::uint64_t)> zero;  // !isPowerOf2(0); n is ignored
  std::function<bool(std::uint64_t)> even;  // n even ==> (isPowerOf2(n) <==> isPowerOf2(n/2))
  std::function<bool(std::uint64_t)> odd;   // isPowerOf2(1) && (n odd ==> (isPowerOf2(n) <==> n == 1))
  std::function<bool(std::uint64_t)> definition;  // is_power_of_2 agrees with enumerated powers
};

PowerLemmas standard_power_lemmas();

struct LemmaReport {
  bool passed = true;
  std::uint64_t checked = 0;
  std::optional<std::string> failed_lemma;
  std::optional<std::uint64_t> counterexample;
};

/// Checks every lemma for all n <= max_n (max_n >= 2), stopping at the first failure.
LemmaReport check_power_lemmas(std::uint64_t max_n, const PowerLemmas& lemmas = standard_power_lemmas());

}  // namespace decider_lab::oracles
