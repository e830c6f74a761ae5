#pragma once

// Flux homomorphisms of graphs with finitely many ends accumulated by loops,
// in the ladder model: one bi-infinite ladder of loops per basis element of
// the clopen algebra of those ends, ladder i running from the complement of
// A_i into A_i. Ladder 0 holds loops that no shift moves.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pmap/cech.hpp"
#include "pmap/graphmodel.hpp"
#include "pmap/mcgelems.hpp"

namespace pmap {

class FluxContext {
 public:
  // depth defaults to the separating depth when the marked ends are finite,
  // and is required otherwise.
  explicit FluxContext(GraphDescriptor g,
                       std::optional<unsigned> depth = std::nullopt);

  GraphDescriptor const& graph() const { return graph_; }
  // Ends accumulated by loops; nullopt for finite rank.
  std::optional<EndSpaceExpr> const& marked() const { return marked_; }
  // Requires marked().
  BasisFamily const& basis() const;
  int ladders() const { return static_cast<int>(ends_plus_.size()); }

  // Ends toward which ladder i (1-based) runs in the positive and negative
  // direction.
  EndPoint const& ladder_end(int i, bool positive) const;

  Clopen basis_clopen(int i) const;  // A_i as a clopen, 1-based
  // "[01]", "[A2]", "[0] + [10]", "[] - [A1]"; must be 0/1-valued.
  Clopen parse_clopen(std::string_view text) const;

 private:
  GraphDescriptor graph_;
  std::optional<EndSpaceExpr> marked_;
  std::optional<BasisFamily> basis_;
  std::vector<EndPoint> ends_plus_;
  std::vector<EndPoint> ends_minus_;
};

// Sum over shift letters of exponent times the coefficient of that ladder's
// basis element in the decomposition of the clopen.
std::int64_t flux_fast(FluxContext const& ctx, MappingClassWord const& w,
                       Clopen const& c);

// Exhaustion levels are <= floor (far region), (floor, n] (A_n window),
// (n, m] (added in A_m).
struct OracleWindow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t floor = 0;
};

struct OracleResult {
  std::int64_t value = 0;
  std::int64_t cork_before = 0;  // corank of A_n in A_m
  std::int64_t cork_after = 0;   // corank of f(A_n) in A_m
  OracleWindow window;
};

// Smallest admissible window with the given n.
OracleWindow choose_window(FluxContext const& ctx, MappingClassWord const& w,
                           Clopen const& c, std::int64_t n = 0);

// Corank difference cork(A_m, A_n) - cork(A_m, f(A_n)), computed by
// folding. Throws AdmissibilityFailure when the window is too small or an
// image fails the free factor certificate.
OracleResult flux_oracle(FluxContext const& ctx, MappingClassWord const& w,
                         Clopen const& c,
                         std::optional<OracleWindow> window = std::nullopt);
OracleResult flux_oracle(FluxContext const& ctx, MappingClassWord const& w,
                         int basis_index,
                         std::optional<OracleWindow> window = std::nullopt);

// Sum of |shift exponents| + widest compact support + 1.
std::int64_t displacement_bound(MappingClassWord const& w);

using FluxVector = std::vector<std::int64_t>;

// Fluxes against A_1..A_k; empty when at most one end is loop-accumulated.
FluxVector flux_projection(FluxContext const& ctx, MappingClassWord const& w);
// prod_i shift(i)^{v_i} in ladder order.
MappingClassWord section(FluxContext const& ctx, FluxVector const& v);

struct SplitResult {
  FluxVector flux;
  MappingClassWord residual;  // flux zero
};

// w = residual * section(flux).
SplitResult split_decompose(FluxContext const& ctx, MappingClassWord const& w);

struct AlgebraCheck {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  bool holds() const { return lhs == rhs; }
};

// flux of the complement vs minus the flux.
AlgebraCheck flux_of_complement(FluxContext const& ctx,
                                MappingClassWord const& w, Clopen const& c);
// flux of A u B vs the sum; A and B must be disjoint.
AlgebraCheck flux_of_disjoint_union(FluxContext const& ctx,
                                    MappingClassWord const& w, Clopen const& a,
                                    Clopen const& b);
// flux of B \ B' vs the difference; B' must lie in B.
AlgebraCheck flux_of_difference(FluxContext const& ctx,
                                MappingClassWord const& w, Clopen const& b,
                                Clopen const& bp);

}  // namespace pmap
