#pragma once

// End spaces of locally finite graphs, written as expressions and embedded
// as closed subsets of Cantor space 2^N.
//
// Grammar (whitespace-insensitive):
//   expr := "pt" ["!"] | "cantor" ["!"] | "sum" "(" expr {"," expr} ")"
//         | "seq" ["!"] "(" expr ")"
// A "!" marks the ends as accumulated by loops; for seq it marks the limit.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmap {

enum class Mark { plain, loops };
enum class NodeKind { point, sum, seq, cantor };

class EndSpaceExpr {
 public:
  struct Node {
    NodeKind kind;
    Mark mark;  // leaf mark, or limit mark for seq
    std::vector<EndSpaceExpr> children;
    unsigned selector_bits = 0;  // sum only: ceil(log2(#parts))
  };

  static EndSpaceExpr pt(Mark m = Mark::plain);
  static EndSpaceExpr cantor(Mark m = Mark::plain);
  static EndSpaceExpr sum(std::vector<EndSpaceExpr> parts);
  static EndSpaceExpr seq(EndSpaceExpr body, Mark limit = Mark::plain);

  NodeKind kind() const { return node_->kind; }
  Mark mark() const { return node_->mark; }
  std::vector<EndSpaceExpr> const& children() const { return node_->children; }
  Node const* node() const { return node_.get(); }

  std::string to_string() const;

  friend bool operator==(EndSpaceExpr const& a, EndSpaceExpr const& b);
  friend bool operator!=(EndSpaceExpr const& a, EndSpaceExpr const& b) {
    return !(a == b);
  }

 private:
  explicit EndSpaceExpr(std::shared_ptr<Node const> n) : node_(std::move(n)) {}
  std::shared_ptr<Node const> node_;
};

EndSpaceExpr parse_end_space(std::string_view text);

struct Violation {
  std::string path;  // e.g. "/sum[1]/seq"
  std::string message;
};

std::vector<Violation> validate(EndSpaceExpr const& e);
// Throws UsageError listing the first violation.
void require_valid(EndSpaceExpr const& e);

class Cardinality {
 public:
  enum class Kind { finite, countable, uncountable };

  static Cardinality finite(std::uint64_t n) { return {Kind::finite, n}; }
  static Cardinality countable() { return {Kind::countable, 0}; }
  static Cardinality uncountable() { return {Kind::uncountable, 0}; }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  std::uint64_t count() const { return count_; }  // finite only
  bool is_zero() const { return is_finite() && count_ == 0; }

  // "3", "aleph0", "continuum"
  std::string to_string() const;

  friend Cardinality operator+(Cardinality a, Cardinality b);
  friend bool operator==(Cardinality const&, Cardinality const&) = default;

 private:
  Cardinality(Kind k, std::uint64_t n) : kind_(k), count_(n) {}
  Kind kind_;
  std::uint64_t count_;
};

enum class EndFilter { all, marked, unmarked };

Cardinality cardinality_class(EndSpaceExpr const& e,
                              EndFilter filter = EndFilter::all);

// Some end that is not accumulated by loops is an accumulation point of E.
bool has_accumulation_point_in_complement_of_marked(EndSpaceExpr const& e);

// False iff some compact open K inside the unmarked ends leaves only
// isolated ends outside it.
bool infinite_tree_part_exceeds_compact_open(EndSpaceExpr const& e);

// The closed subspace of loop-accumulated ends, as its own expression.
std::optional<EndSpaceExpr> marked_subspace(EndSpaceExpr const& e);

// Cylinder address: a string over {'0','1'}; "" is the whole space.
using Address = std::string;

bool is_address(std::string_view s);
bool is_prefix(Address const& p, Address const& w);

// Eventually periodic 0/1 sequence: pre followed by period repeated.
class EndPoint {
 public:
  EndPoint(std::string pre, std::string period);
  // "01(1)" means 0 1 1 1 ...
  static EndPoint parse(std::string_view text);

  std::string const& preperiod() const { return pre_; }
  std::string const& period() const { return period_; }
  int bit(std::size_t i) const;
  bool has_prefix(Address const& w) const;
  std::string to_string() const;

  friend bool operator==(EndPoint const&, EndPoint const&) = default;
  friend auto operator<=>(EndPoint const&, EndPoint const&) = default;

 private:
  std::string pre_;
  std::string period_;
};

// Deterministic reader of the embedding: after consuming a prefix w the
// state describes (C_w intersected with E) shifted back by |w|.
class Automaton {
 public:
  struct State {
    EndSpaceExpr::Node const* node = nullptr;  // nullptr: empty
    unsigned sel_bits = 0;  // selector bits consumed at a sum node
    std::uint64_t sel_value = 0;
    bool empty() const { return node == nullptr; }
    friend bool operator==(State const&, State const&) = default;
    friend auto operator<=>(State const& a, State const& b) {
      if (auto c = a.node <=> b.node; c != 0) return c;
      if (auto c = a.sel_bits <=> b.sel_bits; c != 0) return c;
      return a.sel_value <=> b.sel_value;
    }
  };

  explicit Automaton(EndSpaceExpr e);

  EndSpaceExpr const& expr() const { return expr_; }
  State root() const;
  State step(State s, int bit) const;
  State run(Address const& w) const;
  State run(State s, Address const& w) const;

 private:
  EndSpaceExpr expr_;
};

bool is_empty_cylinder(EndSpaceExpr const& e, Address const& w);
// Nonempty children of a nonempty cylinder; they partition it.
std::vector<Address> cylinder_children(EndSpaceExpr const& e,
                                       Address const& w);
// Both children nonempty.
bool is_branching(EndSpaceExpr const& e, Address const& w);

bool contains(EndSpaceExpr const& e, EndPoint const& p);
bool member_of(EndSpaceExpr const& e, EndPoint const& p, Address const& w);
// Throws DomainError when p is not in E.
Mark mark_of(EndSpaceExpr const& e, EndPoint const& p);
bool is_isolated(EndSpaceExpr const& e, EndPoint const& p);

// Greedy extremal points of a nonempty cylinder: prefer 0 (leftmost) or
// prefer 1 (rightmost) at every step.
EndPoint leftmost_point(EndSpaceExpr const& e, Address const& w = "");
EndPoint rightmost_point(EndSpaceExpr const& e, Address const& w = "");

// All points of E when E is finite, in lexicographic order.
std::vector<EndPoint> finite_points(EndSpaceExpr const& e);

}  // namespace pmap
