#pragma once

// Words in the standard generators of the pure mapping class group of a
// graph in ladder normal form: loop swaps, word maps, loop shifts and
// compactly supported substitutions.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmap/freegroup.hpp"

namespace pmap {

// Exchanges the loops in A with the loops in B, paired in sorted order.
struct LoopSwap {
  std::vector<Gen> a;
  std::vector<Gen> b;
};

// Drags an interval on a ray or tree edge around the loop word w. Acts
// trivially on loop generators; its effect is kept in the record.
struct WordMap {
  FreeWord word;
  int interval = 0;
};

// Shift of the bi-infinite ladder `ladder` by `exponent` steps.
struct LoopShift {
  int ladder = 1;
  std::int64_t exponent = 1;
};

// Automorphism of finitely many loops, with its inverse.
struct CompactSubst {
  WindowedSubstitution forward;
  WindowedSubstitution backward;
  std::string label;
};

using Generator = std::variant<LoopSwap, WordMap, LoopShift, CompactSubst>;

Generator inverse(Generator const& g);
std::string to_string(Generator const& g);
WindowedSubstitution semantics(Generator const& g);

// Letters apply right to left: [g1, g2] is g1 after g2.
struct MappingClassWord {
  std::vector<Generator> letters;

  MappingClassWord inverse() const;
  MappingClassWord operator*(MappingClassWord const& o) const;
  std::string to_string() const;
};

// Element written as (word maps on intervals) after (core substitution).
struct MappingClass {
  WindowedSubstitution core;
  std::map<int, FreeWord> record;  // interval -> accumulated word

  friend bool operator==(MappingClass const&, MappingClass const&) = default;
  std::string to_string() const;
};

MappingClass compose_word(MappingClassWord const& w);

// Checks every letter against a graph with `ladders` shift ladders.
void validate_word(MappingClassWord const& w, int ladders);

enum class NielsenKind { tau, sigma, lambda, rho };

// On loops gi, gj: tau gi -> gi^-1; sigma swaps gi and gj;
// lambda gi -> gj gi; rho gi -> gi gj.
CompactSubst nielsen_on(NielsenKind kind, Gen gi, Gen gj);

// Same on the plain generators x_1..x_n; 1 <= i != j <= n.
CompactSubst nielsen_generator(NielsenKind kind, int i, int j, int n);

// tau_i (1<=i<=n), sigma_{i,i+1}, and tau_2 after lambda_12 (n >= 2).
std::vector<CompactSubst> afv_set(int n);
// Same generating involutions acting on the given ordered loops.
std::vector<CompactSubst> afv_set_on(std::vector<Gen> const& loops);

// Syntax: letters separated by whitespace, each optionally raised to a
// power "^k":
//   shift(i)  swap({l.p,...},{l.p,...})  wm(<free word>, I<k>)
//   flip(l.p)  transp(l.p,l.p)  lnielsen(l.p,l.p)  rnielsen(l.p,l.p)
MappingClassWord parse_mapping_class_word(std::string_view text);

}  // namespace pmap
