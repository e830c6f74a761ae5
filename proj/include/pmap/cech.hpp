#pragma once

// Integer-valued locally constant functions on an end space, modulo the
// constants, written over a fixed basis of cylinder indicators.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmap/endspace.hpp"

namespace pmap {

// Width first; equal widths compare as binary numerals whose first digit is
// the least significant one (so 000 < 100 < 010 < 110).
bool basis_order_less(Address const& a, Address const& b);

struct BasisOrder {
  bool operator()(Address const& a, Address const& b) const {
    return basis_order_less(a, b);
  }
};

// The cylinders C_{w0} of width <= depth where C_w meets E in both halves.
// Their indicators are a basis of the truncated function group.
class BasisFamily {
 public:
  BasisFamily(EndSpaceExpr e, unsigned depth);

  EndSpaceExpr const& expr() const { return d_->expr; }
  unsigned depth() const { return d_->depth; }
  std::vector<Address> const& addresses() const { return d_->addrs; }
  std::size_t size() const { return d_->addrs.size(); }
  Address const& operator[](std::size_t i) const { return d_->addrs[i]; }
  std::optional<std::size_t> index_of(Address const& w) const;

  friend bool operator==(BasisFamily const& a, BasisFamily const& b) {
    return a.d_ == b.d_ ||
           (a.depth() == b.depth() && a.expr() == b.expr());
  }

 private:
  struct Data {
    EndSpaceExpr expr;
    unsigned depth;
    std::vector<Address> addrs;
    std::map<Address, std::size_t> index;
  };
  std::shared_ptr<Data const> d_;
};

BasisFamily basis_family(EndSpaceExpr const& e, unsigned depth);

// Smallest depth separating all points of a finite E.
unsigned separating_depth(EndSpaceExpr const& e);

// Cylinder written as A0 minus a disjoint union of A1..An, every Ai in the
// basis; positive == nullopt stands for the whole space.
struct StructuredDecomposition {
  std::optional<Address> positive;
  std::vector<Address> negatives;
};

StructuredDecomposition decompose_structured(BasisFamily const& basis,
                                             Address const& cyl);

class LocallyConstantFn {
 public:
  using Terms = std::map<Address, std::int64_t, BasisOrder>;

  explicit LocallyConstantFn(BasisFamily const& basis);

  BasisFamily const& basis() const { return basis_; }
  Terms const& terms() const { return terms_; }
  std::int64_t coefficient(Address const& w) const;
  bool is_zero() const { return terms_.empty(); }

  // Value of the representative with no whole-space term.
  std::int64_t evaluate(EndPoint const& p) const;

  LocallyConstantFn& add_term(Address const& basis_elem, std::int64_t c);
  LocallyConstantFn operator+(LocallyConstantFn const& o) const;
  LocallyConstantFn operator-(LocallyConstantFn const& o) const;
  LocallyConstantFn operator-() const;
  LocallyConstantFn scaled(std::int64_t c) const;

  friend bool operator==(LocallyConstantFn const& a,
                         LocallyConstantFn const& b);

  // "2*[00] + -1*[10]", or "0"
  std::string to_string() const;

 private:
  void check_compatible(LocallyConstantFn const& o) const;
  BasisFamily basis_;
  Terms terms_;
};

// Throws DepthExhausted when a needed basis element is deeper than the
// family. Empty cylinders give zero.
LocallyConstantFn decompose_indicator(BasisFamily const& basis,
                                      Address const& cyl);

// A raw combination sum c_i * chi(C_i) of arbitrary cylinders.
struct CylinderTerm {
  Address address;
  std::int64_t coefficient;
};

LocallyConstantFn canonicalize(BasisFamily const& basis,
                               std::vector<CylinderTerm> const& terms);

// Parses "2*[00] + -1*[10]"; "[]" is the whole space and "[A3]" the third
// basis element. "0" is the zero function.
std::vector<CylinderTerm> parse_cylinder_terms(std::string_view text,
                                               BasisFamily const* basis);

// Direct value of a raw combination at p (no basis involved).
std::int64_t evaluate_terms(std::vector<CylinderTerm> const& terms,
                            EndPoint const& p);

// Rank of the function group modulo constants: |E|-1, or aleph0.
Cardinality chom_rank_class(EndSpaceExpr const& e);

// Clopen subset of E as a minimal prefix-free union of cylinders.
class Clopen {
 public:
  Clopen(EndSpaceExpr e, std::vector<Address> cells);
  static Clopen empty(EndSpaceExpr e) { return Clopen(std::move(e), {}); }
  static Clopen whole(EndSpaceExpr e) { return Clopen(std::move(e), {""}); }

  EndSpaceExpr const& expr() const { return expr_; }
  std::vector<Address> const& cells() const { return cells_; }
  bool is_empty() const { return cells_.empty(); }
  // Membership by prefix; p is assumed to lie in E.
  bool contains(EndPoint const& p) const;

  Clopen complement() const;
  Clopen unite(Clopen const& o) const;
  Clopen intersect(Clopen const& o) const;
  Clopen minus(Clopen const& o) const;
  bool subset_of(Clopen const& o) const { return minus(o).is_empty(); }
  bool disjoint_from(Clopen const& o) const {
    return intersect(o).is_empty();
  }

  std::vector<CylinderTerm> terms() const;
  LocallyConstantFn indicator(BasisFamily const& basis) const;

  // "[0] + [10]", or "0"
  std::string to_string() const;

  friend bool operator==(Clopen const& a, Clopen const& b) {
    return a.cells_ == b.cells_ && a.expr_ == b.expr_;
  }

 private:
  EndSpaceExpr expr_;
  std::vector<Address> cells_;
};

// Requires a 0/1-valued combination; throws DomainError otherwise.
Clopen clopen_from_terms(EndSpaceExpr const& e,
                         std::vector<CylinderTerm> const& terms);

}  // namespace pmap
