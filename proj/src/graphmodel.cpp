#include "pmap/graphmodel.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pmap/errors.hpp"

namespace pmap {

namespace {

std::string rank_string(std::optional<std::uint64_t> r) {
  return r ? std::to_string(*r) : "inf";
}

bool has_marks(EndSpaceExpr const& e) {
  return !cardinality_class(e, EndFilter::marked).is_zero();
}

}  // namespace

GraphDescriptor::GraphDescriptor(std::optional<std::uint64_t> rank,
                                 EndSpaceExpr ends,
                                 std::optional<std::vector<TreeComponent>> trees)
    : rank_(rank), ends_(std::move(ends)), trees_(std::move(trees)) {
  require_valid(ends_);
  bool marked = has_marks(ends_);
  if (marked && rank_) {
    throw UsageError("finite rank " + std::to_string(*rank_) +
                     " but some ends are accumulated by loops");
  }
  if (!marked && !rank_) {
    throw UsageError("infinite rank needs ends accumulated by loops");
  }
  if (trees_) {
    for (auto const& t : *trees_) {
      require_valid(t.ends);
      if (has_marks(t.ends)) {
        throw UsageError("tree component " + t.ends.to_string() +
                         " cannot have ends accumulated by loops");
      }
      if (t.multiplicity && *t.multiplicity == 0) {
        throw UsageError("tree multiplicity must be positive");
      }
    }
  }
}

std::string GraphDescriptor::to_string() const {
  std::string s = "rank = " + rank_string(rank_) + "\nends = " +
                  ends_.to_string() + "\n";
  if (trees_) {
    for (auto const& t : *trees_) {
      s += "tree = " + t.ends.to_string() + " x " +
           (t.multiplicity ? std::to_string(*t.multiplicity) : "inf") + "\n";
    }
  }
  return s;
}

namespace {

std::string trim(std::string const& s, std::size_t& lead) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  lead = a;
  return s.substr(a, b - a);
}

std::optional<std::uint64_t> parse_count(std::string const& v,
                                         std::size_t line, std::size_t col) {
  if (v == "inf") return std::nullopt;
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a count or 'inf', got '" + v + "'", line, col);
  }
  return std::stoull(v);
}

EndSpaceExpr parse_expr_at(std::string const& v, std::size_t line,
                           std::size_t col) {
  try {
    return parse_end_space(v);
  } catch (ParseError const& e) {
    throw ParseError(e.message(), line, col + e.column() - 1);
  }
}

}  // namespace

GraphDescriptor parse_graph_descriptor(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  std::optional<std::optional<std::uint64_t>> rank;
  std::optional<EndSpaceExpr> ends;
  std::optional<std::vector<TreeComponent>> trees;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::size_t lead;
    std::string line = trim(raw, lead);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", lineno, lead + 1);
    }
    std::size_t klead;
    std::string key = trim(line.substr(0, eq), klead);
    std::size_t vlead;
    std::string value = trim(line.substr(eq + 1), vlead);
    std::size_t vcol = lead + eq + 1 + vlead + 1;
    if (key == "rank") {
      if (rank) throw ParseError("duplicate key 'rank'", lineno, lead + 1);
      rank = parse_count(value, lineno, vcol);
    } else if (key == "ends") {
      if (ends) throw ParseError("duplicate key 'ends'", lineno, lead + 1);
      ends = parse_expr_at(value, lineno, vcol);
    } else if (key == "tree") {
      auto x = value.rfind('x');
      if (x == std::string::npos) {
        throw ParseError("expected '<expr> x <multiplicity>'", lineno, vcol);
      }
      std::size_t l1, l2;
      std::string e = trim(value.substr(0, x), l1);
      std::string m = trim(value.substr(x + 1), l2);
      TreeComponent t{parse_expr_at(e, lineno, vcol + l1),
                      parse_count(m, lineno, vcol + x + 1 + l2)};
      if (!trees) trees.emplace();
      trees->push_back(std::move(t));
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, lead + 1);
    }
  }
  if (!rank) throw ParseError("missing key 'rank'", lineno + 1, 1);
  if (!ends) throw ParseError("missing key 'ends'", lineno + 1, 1);
  return GraphDescriptor(*rank, *ends, trees);
}

GraphDescriptor load_graph_descriptor(std::string const& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph_descriptor(ss.str());
}

std::string CharacteristicTriple::to_string() const {
  return "(" + rank_string(rank) + ", " + ends.to_string() + ", " +
         marked.to_string() + ")";
}

CharacteristicTriple characteristic_triple(GraphDescriptor const& g) {
  return {g.rank(), cardinality_class(g.ends()),
          cardinality_class(g.ends(), EndFilter::marked)};
}

std::string to_string(TClass t) {
  switch (t) {
    case TClass::zero:
      return "t=0";
    case TClass::finite:
      return "t in [1,inf)";
    case TClass::infinite:
      return "t=inf";
  }
  return {};
}

TClass t_class(GraphDescriptor const& g) {
  if (infinite_tree_part_exceeds_compact_open(g.ends())) {
    return TClass::infinite;
  }
  if (has_accumulation_point_in_complement_of_marked(g.ends())) {
    return TClass::finite;
  }
  return TClass::zero;
}

std::optional<TClass> t_class_from_standard_form(GraphDescriptor const& g) {
  if (!g.standard_form()) return std::nullopt;
  std::uint64_t t = 0;
  for (auto const& c : *g.standard_form()) {
    if (cardinality_class(c.ends).is_finite()) continue;
    if (!c.multiplicity) return TClass::infinite;
    t += *c.multiplicity;
  }
  return t == 0 ? TClass::zero : TClass::finite;
}

std::vector<std::string> standard_form_issues(GraphDescriptor const& g) {
  std::vector<std::string> out;
  if (!g.standard_form()) return out;
  TClass a = t_class(g);
  TClass b = *t_class_from_standard_form(g);
  if (a != b) {
    out.push_back("tree list gives " + to_string(b) +
                  " but the end space gives " + to_string(a));
  }
  Cardinality total = Cardinality::finite(0);
  for (auto const& c : *g.standard_form()) {
    Cardinality one = cardinality_class(c.ends);
    if (c.multiplicity) {
      total = total + (one.is_finite()
                           ? Cardinality::finite(one.count() * *c.multiplicity)
                           : one);
    } else {
      total = total + (one.kind() == Cardinality::Kind::uncountable
                           ? one
                           : Cardinality::countable());
    }
  }
  Cardinality unmarked = cardinality_class(g.ends(), EndFilter::unmarked);
  if (!(total == unmarked)) {
    out.push_back("tree list has " + total.to_string() +
                  " ends but the end space has " + unmarked.to_string() +
                  " unmarked ends");
  }
  return out;
}

// ------------------------------------------------------------------ wedge

std::string to_string(Summand s) {
  switch (s) {
    case Summand::loop:
      return "Loop";
    case Summand::ray:
      return "Ray";
    case Summand::loch_ness:
      return "LochNess";
    case Summand::millipede:
      return "Millipede";
  }
  return {};
}

std::string WedgeCounts::to_string() const {
  return "(r=" + std::to_string(r) + ", l=" + std::to_string(l) +
         ", m=" + std::to_string(m) + ", k=" + std::to_string(k) + ")";
}

std::vector<std::pair<Summand, std::uint64_t>> WedgeDecomposition::summands()
    const {
  std::vector<std::pair<Summand, std::uint64_t>> out;
  if (canonical.k) out.push_back({Summand::loop, canonical.k});
  if (canonical.r) out.push_back({Summand::ray, canonical.r});
  if (canonical.l) out.push_back({Summand::loch_ness, canonical.l});
  if (canonical.m) out.push_back({Summand::millipede, canonical.m});
  return out;
}

namespace {

void flatten(EndSpaceExpr const& e, std::vector<EndSpaceExpr>& out) {
  if (e.kind() == NodeKind::sum) {
    for (auto const& c : e.children()) flatten(c, out);
  } else {
    out.push_back(e);
  }
}

// Marked ends of a piece with finitely many of them: (isolated, limits).
std::pair<std::uint64_t, std::uint64_t> marked_counts(EndSpaceExpr const& e) {
  switch (e.kind()) {
    case NodeKind::point:
      return {e.mark() == Mark::loops ? 1 : 0, 0};
    case NodeKind::cantor:
      return {0, 0};
    case NodeKind::seq:
      return {0, e.mark() == Mark::loops ? 1 : 0};
    case NodeKind::sum: {
      std::pair<std::uint64_t, std::uint64_t> s{0, 0};
      for (auto const& c : e.children()) {
        auto p = marked_counts(c);
        s.first += p.first;
        s.second += p.second;
      }
      return s;
    }
  }
  return {0, 0};
}

}  // namespace

std::optional<WedgeDecomposition> wedge_decomposition(GraphDescriptor const& g) {
  WedgeDecomposition d;
  Cardinality ends = cardinality_class(g.ends());
  if (!g.infinite_rank()) {
    if (!ends.is_finite()) return std::nullopt;
    d.raw = {ends.count(), 0, 0, *g.rank()};
    d.canonical = d.raw;
    return d;
  }
  if (!cardinality_class(g.ends(), EndFilter::marked).is_finite() ||
      has_accumulation_point_in_complement_of_marked(g.ends())) {
    return std::nullopt;
  }
  std::vector<EndSpaceExpr> parts;
  flatten(g.ends(), parts);
  for (auto const& p : parts) {
    auto [l, m] = marked_counts(p);
    d.raw.l += l;
    d.raw.m += m;
    Cardinality u = cardinality_class(p, EndFilter::unmarked);
    if (u.is_finite()) d.raw.r += u.count();
  }
  d.canonical = d.raw;
  if (d.canonical.m >= 1) d.canonical.r = 0;
  return d;
}

GraphDescriptor wedge_graph(WedgeCounts const& c) {
  std::vector<EndSpaceExpr> parts;
  for (std::uint64_t i = 0; i < c.r; ++i) parts.push_back(EndSpaceExpr::pt());
  for (std::uint64_t i = 0; i < c.l; ++i) {
    parts.push_back(EndSpaceExpr::pt(Mark::loops));
  }
  for (std::uint64_t i = 0; i < c.m; ++i) {
    parts.push_back(EndSpaceExpr::seq(EndSpaceExpr::pt(), Mark::loops));
  }
  if (parts.empty()) throw UsageError("wedge without ends is not an end space");
  EndSpaceExpr ends =
      parts.size() == 1 ? parts.front() : EndSpaceExpr::sum(parts);
  std::optional<std::uint64_t> rank;
  if (c.l + c.m == 0) rank = c.k;
  return GraphDescriptor(rank, ends);
}

// ------------------------------------------------------------------- PMap

std::string PMapType::to_string() const {
  std::string f = "F_" + std::to_string(n);
  switch (kind) {
    case Kind::trivial:
      return "1";
    case Kind::out:
      return "Out(" + f + ")";
    case Kind::aut:
      return "Aut(" + f + ")";
    case Kind::semidirect:
      return f + "^" + std::to_string(e - 1) + " ⋊ Aut(" + f + ")";
  }
  return {};
}

PMapType pmap_isomorphism_type(std::uint64_t n, std::uint64_t e) {
  if (n == 0) return {PMapType::Kind::trivial, 0, e};
  if (e == 0) return {PMapType::Kind::out, n, 0};
  if (e == 1) return {PMapType::Kind::aut, n, 1};
  return {PMapType::Kind::semidirect, n, e};
}

PMapType pmap_isomorphism_type(GraphDescriptor const& g) {
  if (g.infinite_rank()) {
    throw NotFiniteType("infinite rank: the pure mapping class group is not "
                        "of finite type");
  }
  if (*g.rank() == 0) return pmap_isomorphism_type(0, 0);
  Cardinality e = cardinality_class(g.ends());
  if (!e.is_finite()) {
    throw NotFiniteType("infinitely many ends with positive rank");
  }
  return pmap_isomorphism_type(*g.rank(), e.count());
}

}  // namespace pmap
