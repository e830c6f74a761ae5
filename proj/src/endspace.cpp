#include "pmap/endspace.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "pmap/errors.hpp"

namespace pmap {

namespace {

unsigned ceil_log2(std::size_t k) {
  unsigned b = 0;
  while ((std::size_t{1} << b) < k) ++b;
  return b;
}

}  // namespace

EndSpaceExpr EndSpaceExpr::pt(Mark m) {
  return EndSpaceExpr(
      std::make_shared<Node const>(Node{NodeKind::point, m, {}, 0}));
}

EndSpaceExpr EndSpaceExpr::cantor(Mark m) {
  return EndSpaceExpr(
      std::make_shared<Node const>(Node{NodeKind::cantor, m, {}, 0}));
}

EndSpaceExpr EndSpaceExpr::sum(std::vector<EndSpaceExpr> parts) {
  unsigned b = ceil_log2(parts.size());
  return EndSpaceExpr(std::make_shared<Node const>(
      Node{NodeKind::sum, Mark::plain, std::move(parts), b}));
}

EndSpaceExpr EndSpaceExpr::seq(EndSpaceExpr body, Mark limit) {
  return EndSpaceExpr(std::make_shared<Node const>(
      Node{NodeKind::seq, limit, {std::move(body)}, 0}));
}

std::string EndSpaceExpr::to_string() const {
  std::string bang = mark() == Mark::loops ? "!" : "";
  switch (kind()) {
    case NodeKind::point:
      return "pt" + bang;
    case NodeKind::cantor:
      return "cantor" + bang;
    case NodeKind::seq:
      return "seq" + bang + "(" + children()[0].to_string() + ")";
    case NodeKind::sum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < children().size(); ++i) {
        if (i) s += ", ";
        s += children()[i].to_string();
      }
      return s + ")";
    }
  }
  return {};
}

bool operator==(EndSpaceExpr const& a, EndSpaceExpr const& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() != NodeKind::sum && a.mark() != b.mark()) return false;
  return a.children() == b.children();
}

// ---------------------------------------------------------------- parsing

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  EndSpaceExpr parse_all() {
    EndSpaceExpr e = parse_expr();
    skip_ws();
    if (pos_ < s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  [[noreturn]] void fail(std::string const& msg) const {
    throw ParseError(msg, line_, col_);
  }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      advance();
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Mark bang() { return accept('!') ? Mark::loops : Mark::plain; }

  EndSpaceExpr parse_expr() {
    skip_ws();
    std::size_t l = line_, c = col_;
    std::string word;
    while (pos_ < s_.size() &&
           std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      word += s_[pos_];
      advance();
    }
    if (word.empty()) {
      if (pos_ >= s_.size()) fail("unexpected end of input");
      fail(std::string("unexpected character '") + s_[pos_] + "'");
    }
    if (word == "pt") return EndSpaceExpr::pt(bang());
    if (word == "cantor") return EndSpaceExpr::cantor(bang());
    if (word == "seq") {
      Mark m = bang();
      expect('(');
      EndSpaceExpr body = parse_expr();
      expect(')');
      return EndSpaceExpr::seq(body, m);
    }
    if (word == "sum") {
      expect('(');
      std::vector<EndSpaceExpr> parts;
      if (!accept(')')) {
        parts.push_back(parse_expr());
        while (accept(',')) parts.push_back(parse_expr());
        expect(')');
      }
      return EndSpaceExpr::sum(std::move(parts));
    }
    throw ParseError("unknown constructor '" + word + "'", l, c);
  }
};

}  // namespace

EndSpaceExpr parse_end_space(std::string_view text) {
  return ExprParser(text).parse_all();
}

// ------------------------------------------------------------- validation

namespace {

bool contains_marked(EndSpaceExpr const& e) {
  switch (e.kind()) {
    case NodeKind::point:
    case NodeKind::cantor:
      return e.mark() == Mark::loops;
    case NodeKind::seq:
      return e.mark() == Mark::loops || contains_marked(e.children()[0]);
    case NodeKind::sum:
      return std::any_of(e.children().begin(), e.children().end(),
                         contains_marked);
  }
  return false;
}

void validate_rec(EndSpaceExpr const& e, std::string const& path,
                  std::vector<Violation>& out) {
  switch (e.kind()) {
    case NodeKind::point:
    case NodeKind::cantor:
      return;
    case NodeKind::sum:
      if (e.children().empty()) {
        out.push_back({path + "/sum", "empty union"});
      }
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        validate_rec(e.children()[i], path + "/sum[" + std::to_string(i) + "]",
                     out);
      }
      return;
    case NodeKind::seq:
      if (e.mark() == Mark::plain && contains_marked(e.children()[0])) {
        out.push_back({path + "/seq",
                       "loop-accumulated ends converge to an unmarked limit"});
      }
      validate_rec(e.children()[0], path + "/seq", out);
      return;
  }
}

}  // namespace

std::vector<Violation> validate(EndSpaceExpr const& e) {
  std::vector<Violation> out;
  validate_rec(e, "", out);
  return out;
}

void require_valid(EndSpaceExpr const& e) {
  auto v = validate(e);
  if (!v.empty()) {
    throw UsageError("invalid end space " + e.to_string() + " at " +
                     v.front().path + ": " + v.front().message);
  }
}

// ------------------------------------------------------------ cardinality

std::string Cardinality::to_string() const {
  switch (kind_) {
    case Kind::finite:
      return std::to_string(count_);
    case Kind::countable:
      return "aleph0";
    case Kind::uncountable:
      return "continuum";
  }
  return {};
}

Cardinality operator+(Cardinality a, Cardinality b) {
  if (a.is_finite() && b.is_finite()) {
    return Cardinality::finite(a.count() + b.count());
  }
  return a.kind() > b.kind() ? a : b;
}

namespace {

bool passes(Mark m, EndFilter f) {
  switch (f) {
    case EndFilter::all:
      return true;
    case EndFilter::marked:
      return m == Mark::loops;
    case EndFilter::unmarked:
      return m == Mark::plain;
  }
  return false;
}

bool unmarked_all_isolated(EndSpaceExpr const& e) {
  switch (e.kind()) {
    case NodeKind::point:
      return true;
    case NodeKind::cantor:
      return e.mark() == Mark::loops;
    case NodeKind::sum:
      return std::all_of(e.children().begin(), e.children().end(),
                         unmarked_all_isolated);
    case NodeKind::seq:
      return e.mark() == Mark::loops &&
             unmarked_all_isolated(e.children()[0]);
  }
  return false;
}

bool has_compact_open_core(EndSpaceExpr const& e) {
  switch (e.kind()) {
    case NodeKind::point:
    case NodeKind::cantor:
      return true;
    case NodeKind::sum:
      return std::all_of(e.children().begin(), e.children().end(),
                         has_compact_open_core);
    case NodeKind::seq:
      // An unmarked limit has an unmarked body, so the whole piece is K.
      if (e.mark() == Mark::plain) return true;
      // K avoids the marked limit, so it meets finitely many copies.
      return unmarked_all_isolated(e.children()[0]);
  }
  return false;
}

}  // namespace

Cardinality cardinality_class(EndSpaceExpr const& e, EndFilter filter) {
  switch (e.kind()) {
    case NodeKind::point:
      return Cardinality::finite(passes(e.mark(), filter) ? 1 : 0);
    case NodeKind::cantor:
      return passes(e.mark(), filter) ? Cardinality::uncountable()
                                      : Cardinality::finite(0);
    case NodeKind::sum: {
      Cardinality c = Cardinality::finite(0);
      for (auto const& p : e.children()) c = c + cardinality_class(p, filter);
      return c;
    }
    case NodeKind::seq: {
      Cardinality body = cardinality_class(e.children()[0], filter);
      if (body.is_zero()) {
        return Cardinality::finite(passes(e.mark(), filter) ? 1 : 0);
      }
      if (body.kind() == Cardinality::Kind::uncountable) return body;
      return Cardinality::countable();
    }
  }
  return Cardinality::finite(0);
}

bool has_accumulation_point_in_complement_of_marked(EndSpaceExpr const& e) {
  switch (e.kind()) {
    case NodeKind::point:
      return false;
    case NodeKind::cantor:
      return e.mark() == Mark::plain;
    case NodeKind::sum:
      return std::any_of(e.children().begin(), e.children().end(),
                         has_accumulation_point_in_complement_of_marked);
    case NodeKind::seq:
      return e.mark() == Mark::plain ||
             has_accumulation_point_in_complement_of_marked(e.children()[0]);
  }
  return false;
}

bool infinite_tree_part_exceeds_compact_open(EndSpaceExpr const& e) {
  return !has_compact_open_core(e);
}

std::optional<EndSpaceExpr> marked_subspace(EndSpaceExpr const& e) {
  switch (e.kind()) {
    case NodeKind::point:
    case NodeKind::cantor:
      if (e.mark() == Mark::loops) return e;
      return std::nullopt;
    case NodeKind::sum: {
      std::vector<EndSpaceExpr> parts;
      for (auto const& p : e.children()) {
        if (auto m = marked_subspace(p)) parts.push_back(*m);
      }
      if (parts.empty()) return std::nullopt;
      if (parts.size() == 1) return parts.front();
      return EndSpaceExpr::sum(std::move(parts));
    }
    case NodeKind::seq: {
      if (e.mark() == Mark::plain) return std::nullopt;
      auto body = marked_subspace(e.children()[0]);
      if (!body) return EndSpaceExpr::pt(Mark::loops);
      return EndSpaceExpr::seq(*body, Mark::loops);
    }
  }
  return std::nullopt;
}

// -------------------------------------------------------------- addresses

bool is_address(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

bool is_prefix(Address const& p, Address const& w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

EndPoint::EndPoint(std::string pre, std::string period)
    : pre_(std::move(pre)), period_(std::move(period)) {
  if (period_.empty()) throw UsageError("end point needs a nonempty period");
  if (!is_address(pre_) || !is_address(period_)) {
    throw UsageError("end point digits must be 0 or 1");
  }
  // primitive period
  std::size_t n = period_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = period_[i] == period_[i - d];
    if (ok) {
      period_.resize(d);
      break;
    }
  }
  // shortest preperiod
  while (!pre_.empty() && pre_.back() == period_.back()) {
    pre_.pop_back();
    period_ = period_.back() + period_.substr(0, period_.size() - 1);
  }
}

EndPoint EndPoint::parse(std::string_view text) {
  auto open = text.find('(');
  auto close = text.find(')');
  if (open == std::string_view::npos || close != text.size() - 1 ||
      close < open) {
    throw ParseError("end point must look like 01(1)", 1, 1);
  }
  std::string pre(text.substr(0, open));
  std::string per(text.substr(open + 1, close - open - 1));
  if (!is_address(pre) || !is_address(per) || per.empty()) {
    throw ParseError("end point digits must be 0 or 1", 1, 1);
  }
  return EndPoint(pre, per);
}

int EndPoint::bit(std::size_t i) const {
  if (i < pre_.size()) return pre_[i] - '0';
  return period_[(i - pre_.size()) % period_.size()] - '0';
}

bool EndPoint::has_prefix(Address const& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (bit(i) != w[i] - '0') return false;
  }
  return true;
}

std::string EndPoint::to_string() const { return pre_ + "(" + period_ + ")"; }

// -------------------------------------------------------------- automaton

namespace {

using State = Automaton::State;

State enter(EndSpaceExpr::Node const* n) {
  if (n->kind == NodeKind::sum) {
    if (n->children.empty()) return {};
    if (n->selector_bits == 0) return enter(n->children[0].node());
  }
  return {n, 0, 0};
}

}  // namespace

Automaton::Automaton(EndSpaceExpr e) : expr_(std::move(e)) {}

State Automaton::root() const { return enter(expr_.node()); }

State Automaton::step(State s, int bit) const {
  if (s.empty()) return s;
  auto const* n = s.node;
  switch (n->kind) {
    case NodeKind::point:
      return bit == 0 ? s : State{};
    case NodeKind::cantor:
      return s;
    case NodeKind::seq:
      return bit == 0 ? enter(n->children[0].node()) : s;
    case NodeKind::sum: {
      std::uint64_t v = 2 * s.sel_value + static_cast<std::uint64_t>(bit);
      unsigned r = s.sel_bits + 1;
      unsigned b = n->selector_bits;
      std::uint64_t k = n->children.size();
      if (r == b) return v < k ? enter(n->children[v].node()) : State{};
      if ((v << (b - r)) >= k) return {};
      return {n, r, v};
    }
  }
  return {};
}

State Automaton::run(State s, Address const& w) const {
  for (char c : w) {
    s = step(s, c - '0');
    if (s.empty()) break;
  }
  return s;
}

State Automaton::run(Address const& w) const { return run(root(), w); }

bool is_empty_cylinder(EndSpaceExpr const& e, Address const& w) {
  return Automaton(e).run(w).empty();
}

std::vector<Address> cylinder_children(EndSpaceExpr const& e,
                                       Address const& w) {
  Automaton a(e);
  State s = a.run(w);
  std::vector<Address> out;
  if (s.empty()) return out;
  for (int b = 0; b < 2; ++b) {
    if (!a.step(s, b).empty()) out.push_back(w + static_cast<char>('0' + b));
  }
  return out;
}

bool is_branching(EndSpaceExpr const& e, Address const& w) {
  return cylinder_children(e, w).size() == 2;
}

namespace {

// Runs p through the automaton. Returns the state at the start of a
// period that recurs, or an empty state when p leaves E.
State terminal_state(Automaton const& a, EndPoint const& p) {
  State s = a.run(p.preperiod());
  std::map<State, int> seen;
  while (!s.empty()) {
    if (seen.count(s)) return s;
    seen[s] = 1;
    s = a.run(s, p.period());
  }
  return s;
}

EndPoint greedy_point(EndSpaceExpr const& e, Address const& w, int prefer) {
  Automaton a(e);
  State s = a.run(w);
  if (s.empty()) throw DomainError("cylinder [" + w + "] is empty");
  std::map<State, std::size_t> seen;
  std::string bits;
  while (!seen.count(s)) {
    seen[s] = bits.size();
    State next = a.step(s, prefer);
    int b = prefer;
    if (next.empty()) {
      b = 1 - prefer;
      next = a.step(s, b);
    }
    bits += static_cast<char>('0' + b);
    s = next;
  }
  std::size_t i = seen[s];
  return EndPoint(w + bits.substr(0, i), bits.substr(i));
}

}  // namespace

bool contains(EndSpaceExpr const& e, EndPoint const& p) {
  return !terminal_state(Automaton(e), p).empty();
}

bool member_of(EndSpaceExpr const& e, EndPoint const& p, Address const& w) {
  return p.has_prefix(w) && contains(e, p);
}

Mark mark_of(EndSpaceExpr const& e, EndPoint const& p) {
  State s = terminal_state(Automaton(e), p);
  if (s.empty()) throw DomainError("point " + p.to_string() + " not in E");
  return s.node->mark;
}

bool is_isolated(EndSpaceExpr const& e, EndPoint const& p) {
  State s = terminal_state(Automaton(e), p);
  if (s.empty()) throw DomainError("point " + p.to_string() + " not in E");
  return s.node->kind == NodeKind::point;
}

EndPoint leftmost_point(EndSpaceExpr const& e, Address const& w) {
  return greedy_point(e, w, 0);
}

EndPoint rightmost_point(EndSpaceExpr const& e, Address const& w) {
  return greedy_point(e, w, 1);
}

std::vector<EndPoint> finite_points(EndSpaceExpr const& e) {
  Automaton a(e);
  std::vector<EndPoint> out;
  std::vector<std::pair<State, Address>> stack{{a.root(), ""}};
  while (!stack.empty()) {
    auto [s, w] = stack.back();
    stack.pop_back();
    if (s.empty()) continue;
    if (s.node->kind == NodeKind::point) {
      out.emplace_back(w, "0");
      continue;
    }
    if (s.node->kind != NodeKind::sum) {
      throw UsageError("end space " + e.to_string() + " is infinite");
    }
    stack.emplace_back(a.step(s, 1), w + "1");
    stack.emplace_back(a.step(s, 0), w + "0");
  }
  return out;
}

}  // namespace pmap
