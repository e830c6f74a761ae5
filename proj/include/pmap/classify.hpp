#pragma once

// Coarse geometry of the pure mapping class group: CB, CB-generated,
// locally CB, and the first integral cohomology rank.

#include <cstdint>
#include <string>
#include <vector>

#include "pmap/endspace.hpp"
#include "pmap/graphmodel.hpp"

namespace pmap {

enum class CoarseKind {
  cb,
  cb_generated_not_cb,
  locally_cb_not_cb_generated,
  not_locally_cb
};
std::string to_string(CoarseKind k);

struct CoarseClass {
  CoarseKind kind;
  // The clause that decided each level, in order.
  std::vector<std::string> witness;
};

CoarseClass classify_coarse(GraphDescriptor const& g);

enum class RankColumn { r_zero, r_finite, n_one, n_finite, n_infinite };
std::string to_string(RankColumn c);

struct TableCell {
  RankColumn column;
  TClass row;
  friend bool operator==(TableCell const&, TableCell const&) = default;
  std::string to_string() const;
};

// Throws NACell for finite rank with infinitely many infinite-ended trees,
// and DomainError when the tree list contradicts the end space.
TableCell table_cell(GraphDescriptor const& g);

// 0 when at most one end is accumulated by loops, n-1 for n of them,
// aleph0 for infinitely many.
Cardinality h1_rank(GraphDescriptor const& g);

struct LoopLabel {
  char family;  // 'a' Loch Ness loops, 'b' Millipede loops
  std::uint64_t summand;
  std::uint64_t index;
  std::string to_string() const;  // "a_{1,1}"
};

struct WordMapEntry {
  LoopLabel loop;
  std::uint64_t ray;
};

struct SwapEntry {
  LoopLabel first;
  LoopLabel second;
};

struct GeneratingSet {
  WedgeCounts wedge;
  std::vector<WordMapEntry> word_maps;   // one per ray
  std::vector<SwapEntry> swaps;          // one per pair of monster summands
  std::vector<std::uint64_t> shifts;    // basis indices of the loop shifts
};

// For the wedge of r rays, l Loch Ness and m Millipede monsters (not a
// single bare monster). Throws NotCBGenerated otherwise.
GeneratingSet build_generating_set(WedgeCounts const& c);
GeneratingSet build_generating_set(GraphDescriptor const& g);

}  // namespace pmap
