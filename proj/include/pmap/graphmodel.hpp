#pragma once

// Locally finite graphs up to proper homotopy, described by rank, end space
// and optionally the trees hanging off the core graph.
//
// File format, one key per line ('#' starts a comment):
//   rank = <n | inf>
//   ends = <end space expression>
//   tree = <end space expression> x <multiplicity | inf>     (repeatable)

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmap/endspace.hpp"

namespace pmap {

struct TreeComponent {
  EndSpaceExpr ends;
  std::optional<std::uint64_t> multiplicity;  // nullopt: countably many
};

class GraphDescriptor {
 public:
  // rank == nullopt means infinite rank. Throws UsageError when the ends
  // are invalid or infinite rank disagrees with having loop-accumulated ends.
  GraphDescriptor(std::optional<std::uint64_t> rank, EndSpaceExpr ends,
                  std::optional<std::vector<TreeComponent>> trees = {});

  std::optional<std::uint64_t> rank() const { return rank_; }
  bool infinite_rank() const { return !rank_; }
  EndSpaceExpr const& ends() const { return ends_; }
  std::optional<EndSpaceExpr> marked_ends() const {
    return marked_subspace(ends_);
  }
  std::optional<std::vector<TreeComponent>> const& standard_form() const {
    return trees_;
  }

  std::string to_string() const;  // in file format

 private:
  std::optional<std::uint64_t> rank_;
  EndSpaceExpr ends_;
  std::optional<std::vector<TreeComponent>> trees_;
};

GraphDescriptor parse_graph_descriptor(std::string_view text);
// Missing file is a UsageError.
GraphDescriptor load_graph_descriptor(std::string const& path);

struct CharacteristicTriple {
  std::optional<std::uint64_t> rank;
  Cardinality ends;
  Cardinality marked;
  std::string to_string() const;  // "(inf, aleph0, 1)"
  friend bool operator==(CharacteristicTriple const&,
                         CharacteristicTriple const&) = default;
};

CharacteristicTriple characteristic_triple(GraphDescriptor const& g);

// Number of components of the complement of the core with infinitely many
// ends: none, finitely many, or infinitely many.
enum class TClass { zero, finite, infinite };
std::string to_string(TClass t);

TClass t_class(GraphDescriptor const& g);
std::optional<TClass> t_class_from_standard_form(GraphDescriptor const& g);
// Disagreements between the tree list and the end space.
std::vector<std::string> standard_form_issues(GraphDescriptor const& g);

enum class Summand { loop, ray, loch_ness, millipede };
std::string to_string(Summand s);

struct WedgeCounts {
  std::uint64_t r = 0;  // rays
  std::uint64_t l = 0;  // Loch Ness monsters
  std::uint64_t m = 0;  // Millipede monsters
  std::uint64_t k = 0;  // loops
  friend bool operator==(WedgeCounts const&, WedgeCounts const&) = default;
  std::string to_string() const;
};

struct WedgeDecomposition {
  WedgeCounts raw;        // read off the top-level summands of the ends
  WedgeCounts canonical;  // rays absorbed into the first Millipede
  std::vector<std::pair<Summand, std::uint64_t>> summands() const;
};

// nullopt when the graph is not such a wedge.
std::optional<WedgeDecomposition> wedge_decomposition(GraphDescriptor const& g);
GraphDescriptor wedge_graph(WedgeCounts const& c);

struct PMapType {
  enum class Kind { trivial, out, aut, semidirect };
  Kind kind;
  std::uint64_t n = 0;
  std::uint64_t e = 0;
  std::string to_string() const;
  friend bool operator==(PMapType const&, PMapType const&) = default;
};

// Rank n with e ends, or a tree.
PMapType pmap_isomorphism_type(std::uint64_t n, std::uint64_t e);
// Throws NotFiniteType for infinite rank, or infinitely many ends with
// positive rank.
PMapType pmap_isomorphism_type(GraphDescriptor const& g);

}  // namespace pmap
