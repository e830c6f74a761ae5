#pragma once

// Residual finiteness, Tits alternative, the end-indexed group of free group
// valued functions, and relation checks for the wreath and Grigorchuk
// embeddings.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmap/cech.hpp"
#include "pmap/freegroup.hpp"
#include "pmap/graphmodel.hpp"

namespace pmap {

bool is_residually_finite(GraphDescriptor const& g);
bool satisfies_tits_alternative_pmap(GraphDescriptor const& g);
bool satisfies_tits_alternative_map(GraphDescriptor const& g);

// Locally constant map from the end space to a free group, trivial at the
// base end. Stored on the coarsest cylinder partition.
class REl {
 public:
  using Cell = std::pair<Address, FreeWord>;

  // Cells must partition E. Throws UsageError otherwise, or when the base
  // end is not sent to the identity.
  REl(EndSpaceExpr e, EndPoint base, std::vector<Cell> cells);
  static REl identity(EndSpaceExpr e, EndPoint base);

  EndSpaceExpr const& expr() const { return expr_; }
  EndPoint const& base() const { return base_; }
  std::vector<Cell> const& cells() const { return cells_; }

  FreeWord value_at(EndPoint const& p) const;
  REl inverse() const;

  friend bool operator==(REl const& a, REl const& b) {
    return a.cells_ == b.cells_ && a.base_ == b.base_ && a.expr_ == b.expr_;
  }
  std::string to_string() const;

 private:
  EndSpaceExpr expr_;
  EndPoint base_;
  std::vector<Cell> cells_;
};

// Pointwise product.
REl r_multiply(REl const& a, REl const& b);

// Restriction to finitely many ends (which must include the base end), as an
// element over the finite end space sum(pt, ..., pt) in the given order.
REl forgetful(REl const& a, std::vector<EndPoint> const& ends);

// An end where the two values do not commute, if any.
std::optional<EndPoint> find_noncommuting_end(REl const& a, REl const& b);

struct RelationReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool holds() const { return failures.empty(); }
};

// On the line of n-petal roses: h^m g = g' h^m for every generating
// involution g of the block at i and its translate g' at i+m.
RelationReport wreath_relation_check(int n, int m, std::int64_t i);

// Leaf permutations of the Grigorchuk generators a, b, c, d on the level-1
// through level-depth binary trees hung along a ray.
struct GrigorchukTruncation {
  int depth = 0;
  // perms[g][level-1][leaf] for g in a, b, c, d
  std::array<std::vector<std::vector<std::uint32_t>>, 4> perms;
};

GrigorchukTruncation grigorchuk_truncation(int depth);
// Substitution of loops: ladder = tree level, position = leaf index.
WindowedSubstitution grigorchuk_substitution(GrigorchukTruncation const& t,
                                             int generator);
// a^2 = b^2 = c^2 = d^2 = bcd = 1 on every tree up to depth.
RelationReport grigorchuk_relation_check(int depth);

}  // namespace pmap
