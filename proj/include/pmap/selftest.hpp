#pragma once

// Oracle-agreement suite: a graph catalog with frozen expectations, random
// instance generators (fixed seeds) and the nine acceptance checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pmap/cech.hpp"
#include "pmap/classify.hpp"
#include "pmap/endspace.hpp"
#include "pmap/flux.hpp"
#include "pmap/graphmodel.hpp"
#include "pmap/mcgelems.hpp"

namespace pmap {

struct CatalogEntry {
  std::string name;
  GraphDescriptor graph;
  CoarseKind expected;
  bool residually_finite;
  bool tits_map;
};

std::vector<CatalogEntry> catalog();

// Label the classification table assigns to a cell; `lasso` marks the
// rank-one one-ended graph. Throws NACell for the empty cells.
CoarseKind table_label(TableCell const& cell, bool lasso);

using Rng = std::mt19937_64;

// Valid expression of nesting depth <= depth.
EndSpaceExpr random_end_space(Rng& rng, int depth = 3);
FreeWord random_free_word(Rng& rng, int ladders, int max_len,
                          std::int64_t pos_range = 3);
Generator random_generator(Rng& rng, int ladders);
MappingClassWord random_word(Rng& rng, int ladders, int max_len);
// Union of a random subset of the nonempty cylinders at the given width.
Clopen random_clopen(Rng& rng, EndSpaceExpr const& e, unsigned width);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

CriterionResult check_table(std::uint64_t seed);
CriterionResult check_h1_rank(std::uint64_t seed);
CriterionResult check_flux_oracle(std::uint64_t seed);
CriterionResult check_splitting(std::uint64_t seed);
CriterionResult check_flux_algebra(std::uint64_t seed);
CriterionResult check_cech_basis(std::uint64_t seed);
CriterionResult check_generator_laws(std::uint64_t seed);
CriterionResult check_witnesses(std::uint64_t seed);
CriterionResult check_predicates(std::uint64_t seed);

std::vector<CriterionResult> run_selftest(std::uint64_t seed = 20240601);

}  // namespace pmap
