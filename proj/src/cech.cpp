#include "pmap/cech.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "pmap/errors.hpp"

namespace pmap {

bool basis_order_less(Address const& a, Address const& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(),
                                      b.rend());
}

// ------------------------------------------------------------------ basis

BasisFamily::BasisFamily(EndSpaceExpr e, unsigned depth) {
  require_valid(e);
  auto d = std::make_shared<Data>(Data{e, depth, {}, {}});
  Automaton a(e);
  // every nonempty w with |w| < depth; w0 joins when both halves are nonempty
  std::vector<std::pair<Automaton::State, Address>> stack{{a.root(), ""}};
  while (!stack.empty()) {
    auto [s, w] = stack.back();
    stack.pop_back();
    if (w.size() >= depth) continue;
    auto s0 = a.step(s, 0);
    auto s1 = a.step(s, 1);
    if (!s0.empty() && !s1.empty()) d->addrs.push_back(w + "0");
    if (!s0.empty()) stack.emplace_back(s0, w + "0");
    if (!s1.empty()) stack.emplace_back(s1, w + "1");
  }
  std::sort(d->addrs.begin(), d->addrs.end(), basis_order_less);
  for (std::size_t i = 0; i < d->addrs.size(); ++i) d->index[d->addrs[i]] = i;
  d_ = std::move(d);
}

std::optional<std::size_t> BasisFamily::index_of(Address const& w) const {
  auto it = d_->index.find(w);
  if (it == d_->index.end()) return std::nullopt;
  return it->second;
}

BasisFamily basis_family(EndSpaceExpr const& e, unsigned depth) {
  return BasisFamily(e, depth);
}

unsigned separating_depth(EndSpaceExpr const& e) {
  Cardinality n = cardinality_class(e);
  if (!n.is_finite()) {
    throw UsageError("separating depth needs a finite end space");
  }
  // Widest address needed is the longest point prefix before the tail.
  unsigned d = 0;
  for (auto const& p : finite_points(e)) {
    d = std::max<unsigned>(d, static_cast<unsigned>(p.preperiod().size()));
  }
  return d;
}

// ---------------------------------------------------------- decomposition

StructuredDecomposition decompose_structured(BasisFamily const& basis,
                                             Address const& cyl) {
  EndSpaceExpr const& e = basis.expr();
  if (is_empty_cylinder(e, cyl)) {
    throw DomainError("cylinder [" + cyl + "] misses the end space");
  }
  StructuredDecomposition out;
  Address w = cyl;
  while (true) {
    if (w.empty()) break;
    Address p = w.substr(0, w.size() - 1);
    if (!is_branching(e, p)) {
      w = p;
      continue;
    }
    if (w.back() == '0') {
      out.positive = w;
      break;
    }
    out.negatives.push_back(p + "0");
    w = p;
  }
  auto check = [&](Address const& a) {
    if (!basis.index_of(a)) {
      throw DepthExhausted("cylinder [" + cyl + "] needs basis element [" + a +
                           "] beyond depth " + std::to_string(basis.depth()));
    }
  };
  if (out.positive) check(*out.positive);
  for (auto const& a : out.negatives) check(a);
  return out;
}

LocallyConstantFn::LocallyConstantFn(BasisFamily const& basis)
    : basis_(basis) {}

std::int64_t LocallyConstantFn::coefficient(Address const& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t LocallyConstantFn::evaluate(EndPoint const& p) const {
  if (!contains(basis_.expr(), p)) {
    throw DomainError("point " + p.to_string() + " is not an end of " +
                      basis_.expr().to_string());
  }
  std::int64_t v = 0;
  for (auto const& [w, c] : terms_) {
    if (p.has_prefix(w)) v += c;
  }
  return v;
}

LocallyConstantFn& LocallyConstantFn::add_term(Address const& basis_elem,
                                               std::int64_t c) {
  if (!basis_.index_of(basis_elem)) {
    throw UsageError("[" + basis_elem + "] is not a basis element");
  }
  std::int64_t& slot = terms_[basis_elem];
  slot += c;
  if (slot == 0) terms_.erase(basis_elem);
  return *this;
}

void LocallyConstantFn::check_compatible(LocallyConstantFn const& o) const {
  if (!(basis_ == o.basis_)) {
    throw UsageError("functions live on different end spaces or depths");
  }
}

LocallyConstantFn LocallyConstantFn::operator+(
    LocallyConstantFn const& o) const {
  check_compatible(o);
  LocallyConstantFn r = *this;
  for (auto const& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

LocallyConstantFn LocallyConstantFn::operator-() const { return scaled(-1); }

LocallyConstantFn LocallyConstantFn::operator-(
    LocallyConstantFn const& o) const {
  return *this + (-o);
}

LocallyConstantFn LocallyConstantFn::scaled(std::int64_t c) const {
  LocallyConstantFn r(basis_);
  if (c == 0) return r;
  for (auto const& [w, v] : terms_) r.terms_[w] = v * c;
  return r;
}

bool operator==(LocallyConstantFn const& a, LocallyConstantFn const& b) {
  a.check_compatible(b);
  return a.terms_ == b.terms_;
}

std::string LocallyConstantFn::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto const& [w, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c) + "*[" + w + "]";
  }
  return s;
}

LocallyConstantFn decompose_indicator(BasisFamily const& basis,
                                      Address const& cyl) {
  LocallyConstantFn f(basis);
  if (cyl.empty() || is_empty_cylinder(basis.expr(), cyl)) return f;
  auto d = decompose_structured(basis, cyl);
  if (d.positive) f.add_term(*d.positive, 1);
  for (auto const& a : d.negatives) f.add_term(a, -1);
  return f;
}

LocallyConstantFn canonicalize(BasisFamily const& basis,
                               std::vector<CylinderTerm> const& terms) {
  LocallyConstantFn f(basis);
  for (auto const& t : terms) {
    if (!is_address(t.address)) {
      throw UsageError("bad cylinder address '" + t.address + "'");
    }
    f = f + decompose_indicator(basis, t.address).scaled(t.coefficient);
  }
  return f;
}

// ---------------------------------------------------------------- parsing

namespace {

class TermParser {
 public:
  TermParser(std::string_view s, BasisFamily const* basis)
      : s_(s), basis_(basis) {}

  std::vector<CylinderTerm> parse() {
    std::vector<CylinderTerm> out;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == s_.size()) return out;
      pos_ = save;
    }
    out.push_back(term(1));
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      if (s_[pos_] == '+') {
        ++pos_;
        out.push_back(term(1));
      } else if (s_[pos_] == '-') {
        ++pos_;
        out.push_back(term(-1));
      } else {
        fail("expected '+' or '-'");
      }
    }
    return out;
  }

 private:
  std::string_view s_;
  BasisFamily const* basis_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::string const& msg) const {
    throw ParseError(msg, 1, pos_ + 1);
  }

  void skip() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  std::int64_t number() {
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  CylinderTerm term(std::int64_t sign) {
    skip();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      if (s_[pos_] == '-') sign = -sign;
      ++pos_;
      skip();
    }
    std::int64_t c = 1;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      c = number();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip();
      }
    }
    if (pos_ >= s_.size() || s_[pos_] != '[') fail("expected '['");
    ++pos_;
    Address w;
    if (pos_ < s_.size() && s_[pos_] == 'A') {
      ++pos_;
      std::size_t col = pos_;
      std::int64_t i = number();
      if (!basis_) throw ParseError("[A<i>] needs a basis", 1, col);
      if (i < 1 || static_cast<std::size_t>(i) > basis_->size()) {
        throw ParseError("basis index out of range", 1, col);
      }
      w = (*basis_)[static_cast<std::size_t>(i - 1)];
    } else {
      while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) {
        w += s_[pos_++];
      }
    }
    if (pos_ >= s_.size() || s_[pos_] != ']') fail("expected ']'");
    ++pos_;
    return {w, sign * c};
  }
};

}  // namespace

std::vector<CylinderTerm> parse_cylinder_terms(std::string_view text,
                                               BasisFamily const* basis) {
  return TermParser(text, basis).parse();
}

std::int64_t evaluate_terms(std::vector<CylinderTerm> const& terms,
                            EndPoint const& p) {
  std::int64_t v = 0;
  for (auto const& t : terms) {
    if (p.has_prefix(t.address)) v += t.coefficient;
  }
  return v;
}

Cardinality chom_rank_class(EndSpaceExpr const& e) {
  Cardinality n = cardinality_class(e);
  if (n.is_finite()) {
    return Cardinality::finite(n.count() == 0 ? 0 : n.count() - 1);
  }
  return Cardinality::countable();
}

// ----------------------------------------------------------------- clopen

namespace {

enum class Status { empty, full, partial };

Status status_of(Automaton const& a, std::vector<Address> const& cells,
                 Address const& w) {
  bool below = false;
  for (auto const& c : cells) {
    if (is_prefix(c, w)) return Status::full;
    if (is_prefix(w, c)) below = true;
  }
  if (!below) return Status::empty;
  auto s = a.run(w);
  bool any_full = false, any_other = false;
  for (int b = 0; b < 2; ++b) {
    if (a.step(s, b).empty()) continue;
    Status cs = status_of(a, cells, w + static_cast<char>('0' + b));
    if (cs == Status::full) {
      any_full = true;
    } else {
      any_other = true;
      if (cs == Status::partial) return Status::partial;
    }
  }
  if (any_full && any_other) return Status::partial;
  return any_full ? Status::full : Status::empty;
}

using Op = std::function<bool(std::vector<bool> const&)>;

void combine_rec(Automaton const& a,
                 std::vector<std::vector<Address> const*> const& operands,
                 Op const& op, Address const& w, std::vector<Address>& out) {
  std::vector<bool> vals;
  bool decided = true;
  for (auto const* cells : operands) {
    Status st = status_of(a, *cells, w);
    if (st == Status::partial) {
      decided = false;
      break;
    }
    vals.push_back(st == Status::full);
  }
  if (decided) {
    if (op(vals)) out.push_back(w);
    return;
  }
  auto s = a.run(w);
  for (int b = 0; b < 2; ++b) {
    if (a.step(s, b).empty()) continue;
    combine_rec(a, operands, op, w + static_cast<char>('0' + b), out);
  }
}

std::vector<Address> combine(
    EndSpaceExpr const& e,
    std::vector<std::vector<Address> const*> const& operands, Op const& op) {
  Automaton a(e);
  std::vector<Address> out;
  if (a.root().empty()) return out;
  combine_rec(a, operands, op, "", out);
  return out;
}

}  // namespace

Clopen::Clopen(EndSpaceExpr e, std::vector<Address> cells)
    : expr_(std::move(e)) {
  std::vector<Address> kept;
  for (auto& c : cells) {
    if (!is_address(c)) throw UsageError("bad cylinder address '" + c + "'");
    if (!is_empty_cylinder(expr_, c)) kept.push_back(std::move(c));
  }
  cells_ = combine(expr_, {&kept},
                   [](std::vector<bool> const& v) { return v[0]; });
}

bool Clopen::contains(EndPoint const& p) const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [&](Address const& w) { return p.has_prefix(w); });
}

Clopen Clopen::complement() const {
  return Clopen(expr_, combine(expr_, {&cells_}, [](std::vector<bool> const& v) {
                  return !v[0];
                }));
}

Clopen Clopen::unite(Clopen const& o) const {
  if (!(expr_ == o.expr_)) throw UsageError("clopens on different spaces");
  return Clopen(expr_, combine(expr_, {&cells_, &o.cells_},
                               [](std::vector<bool> const& v) {
                                 return v[0] || v[1];
                               }));
}

Clopen Clopen::intersect(Clopen const& o) const {
  if (!(expr_ == o.expr_)) throw UsageError("clopens on different spaces");
  return Clopen(expr_, combine(expr_, {&cells_, &o.cells_},
                               [](std::vector<bool> const& v) {
                                 return v[0] && v[1];
                               }));
}

Clopen Clopen::minus(Clopen const& o) const {
  if (!(expr_ == o.expr_)) throw UsageError("clopens on different spaces");
  return Clopen(expr_, combine(expr_, {&cells_, &o.cells_},
                               [](std::vector<bool> const& v) {
                                 return v[0] && !v[1];
                               }));
}

std::vector<CylinderTerm> Clopen::terms() const {
  std::vector<CylinderTerm> out;
  for (auto const& c : cells_) out.push_back({c, 1});
  return out;
}

LocallyConstantFn Clopen::indicator(BasisFamily const& basis) const {
  if (!(basis.expr() == expr_)) {
    throw UsageError("basis and clopen live on different end spaces");
  }
  return canonicalize(basis, terms());
}

std::string Clopen::to_string() const {
  if (cells_.empty()) return "0";
  std::string s;
  for (auto const& c : cells_) {
    if (!s.empty()) s += " + ";
    s += "[" + c + "]";
  }
  return s;
}

Clopen clopen_from_terms(EndSpaceExpr const& e,
                         std::vector<CylinderTerm> const& terms) {
  std::size_t d = 0;
  for (auto const& t : terms) d = std::max(d, t.address.size());
  Automaton a(e);
  std::vector<Address> cells;
  std::vector<std::pair<Automaton::State, Address>> stack{{a.root(), ""}};
  while (!stack.empty()) {
    auto [s, w] = stack.back();
    stack.pop_back();
    if (s.empty()) continue;
    if (w.size() == d) {
      std::int64_t v = 0;
      for (auto const& t : terms) {
        if (is_prefix(t.address, w)) v += t.coefficient;
      }
      if (v != 0 && v != 1) {
        throw DomainError("combination takes value " + std::to_string(v) +
                          " on [" + w + "], not a clopen set");
      }
      if (v == 1) cells.push_back(w);
      continue;
    }
    stack.emplace_back(a.step(s, 0), w + "0");
    stack.emplace_back(a.step(s, 1), w + "1");
  }
  return Clopen(e, cells);
}

}  // namespace pmap
