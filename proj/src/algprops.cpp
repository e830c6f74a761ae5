#include "pmap/algprops.hpp"

#include <algorithm>

#include "pmap/errors.hpp"
#include "pmap/mcgelems.hpp"

namespace pmap {

bool is_residually_finite(GraphDescriptor const& g) {
  return !g.infinite_rank();
}

bool satisfies_tits_alternative_pmap(GraphDescriptor const& g) {
  return !g.infinite_rank();
}

bool satisfies_tits_alternative_map(GraphDescriptor const& g) {
  return !g.infinite_rank() && cardinality_class(g.ends()).is_finite();
}

// ------------------------------------------------------------------ REl

namespace {

struct Shape {
  bool uniform = false;
  FreeWord word;
  std::vector<REl::Cell> cells;
};

Shape coarsen(Automaton const& a, std::vector<REl::Cell> const& cells,
              Address const& w) {
  for (auto const& [c, v] : cells) {
    if (is_prefix(c, w)) return {true, v, {}};
  }
  auto s = a.run(w);
  std::vector<Shape> kids;
  for (int b = 0; b < 2; ++b) {
    if (a.step(s, b).empty()) continue;
    kids.push_back(coarsen(a, cells, w + static_cast<char>('0' + b)));
  }
  bool same = std::all_of(kids.begin(), kids.end(), [&](Shape const& k) {
    return k.uniform && k.word == kids.front().word;
  });
  if (same) return {true, kids.front().word, {}};
  Shape out;
  std::size_t idx = 0;
  for (int b = 0; b < 2; ++b) {
    if (a.step(s, b).empty()) continue;
    auto& k = kids[idx++];
    if (k.uniform) {
      out.cells.push_back({w + static_cast<char>('0' + b), k.word});
    } else {
      out.cells.insert(out.cells.end(), k.cells.begin(), k.cells.end());
    }
  }
  return out;
}

}  // namespace

REl::REl(EndSpaceExpr e, EndPoint base, std::vector<Cell> cells)
    : expr_(std::move(e)), base_(std::move(base)) {
  require_valid(expr_);
  if (!contains(expr_, base_)) {
    throw UsageError("base end " + base_.to_string() + " is not an end");
  }
  std::vector<Cell> kept;
  for (auto& c : cells) {
    if (!is_address(c.first)) throw UsageError("bad address " + c.first);
    if (!is_empty_cylinder(expr_, c.first)) kept.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (is_prefix(kept[i].first, kept[j].first) ||
          is_prefix(kept[j].first, kept[i].first)) {
        throw UsageError("cells [" + kept[i].first + "] and [" +
                         kept[j].first + "] overlap");
      }
    }
  }
  std::vector<Address> addrs;
  for (auto const& c : kept) addrs.push_back(c.first);
  if (!(Clopen(expr_, addrs) == Clopen::whole(expr_))) {
    throw UsageError("cells do not cover the end space");
  }
  Shape s = coarsen(Automaton(expr_), kept, "");
  cells_ = s.uniform ? std::vector<Cell>{{"", s.word}} : s.cells;
  if (!value_at(base_).is_identity()) {
    throw UsageError("value at the base end must be the identity");
  }
}

REl REl::identity(EndSpaceExpr e, EndPoint base) {
  return REl(std::move(e), std::move(base), {{"", FreeWord()}});
}

FreeWord REl::value_at(EndPoint const& p) const {
  for (auto const& [w, v] : cells_) {
    if (p.has_prefix(w)) return v;
  }
  throw DomainError("point " + p.to_string() + " is not an end");
}

REl REl::inverse() const {
  std::vector<Cell> cs;
  for (auto const& [w, v] : cells_) cs.push_back({w, v.inverse()});
  return REl(expr_, base_, cs);
}

std::string REl::to_string() const {
  std::string s;
  for (auto const& [w, v] : cells_) {
    if (!s.empty()) s += ", ";
    s += "[" + w + "] -> " + v.to_string();
  }
  return "{" + s + "}";
}

namespace {

template <class F>
void for_overlaps(REl const& a, REl const& b, F&& f) {
  for (auto const& [u, x] : a.cells()) {
    for (auto const& [v, y] : b.cells()) {
      if (is_prefix(u, v)) {
        f(v, x, y);
      } else if (is_prefix(v, u)) {
        f(u, x, y);
      }
    }
  }
}

void require_same_space(REl const& a, REl const& b) {
  if (!(a.expr() == b.expr()) || !(a.base() == b.base())) {
    throw UsageError("elements live on different end spaces or bases");
  }
}

}  // namespace

REl r_multiply(REl const& a, REl const& b) {
  require_same_space(a, b);
  std::vector<REl::Cell> cells;
  for_overlaps(a, b, [&](Address const& w, FreeWord const& x,
                         FreeWord const& y) { cells.push_back({w, x * y}); });
  return REl(a.expr(), a.base(), cells);
}

REl forgetful(REl const& a, std::vector<EndPoint> const& ends) {
  if (ends.empty()) throw UsageError("forgetful map needs at least one end");
  if (std::find(ends.begin(), ends.end(), a.base()) == ends.end()) {
    throw UsageError("the base end " + a.base().to_string() +
                     " must be among the kept ends");
  }
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (!contains(a.expr(), ends[i])) {
      throw UsageError("kept end " + ends[i].to_string() + " is not an end");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ends[i] == ends[j]) throw UsageError("kept ends repeat");
    }
  }
  std::vector<EndSpaceExpr> pts(ends.size(), EndSpaceExpr::pt());
  EndSpaceExpr small = pts.size() == 1 ? pts[0] : EndSpaceExpr::sum(pts);
  auto points = finite_points(small);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < ends.size()) ++bits;
  std::vector<REl::Cell> cells;
  std::optional<EndPoint> base;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    Address w;
    for (std::size_t k = 0; k < bits; ++k) {
      w += static_cast<char>('0' + points[i].bit(k));
    }
    cells.push_back({w, a.value_at(ends[i])});
    if (ends[i] == a.base()) base = points[i];
  }
  return REl(small, *base, cells);
}

std::optional<EndPoint> find_noncommuting_end(REl const& a, REl const& b) {
  require_same_space(a, b);
  std::optional<EndPoint> out;
  for_overlaps(a, b, [&](Address const& w, FreeWord const& x,
                         FreeWord const& y) {
    if (!out && !commute(x, y)) out = leftmost_point(a.expr(), w);
  });
  return out;
}

// ------------------------------------------------------------- relations

RelationReport wreath_relation_check(int n, int m, std::int64_t i) {
  if (n < 1 || m < 0) throw UsageError("wreath check needs n >= 1, m >= 0");
  WindowedSubstitution hm;
  for (int r = 1; r <= n; ++r) hm.set_shift(r, m);
  auto block = [&](std::int64_t at) {
    std::vector<Gen> loops;
    for (int r = 1; r <= n; ++r) loops.push_back(Gen{r, at});
    return afv_set_on(loops);
  };
  auto here = block(i);
  auto there = block(i + m);
  RelationReport rep;
  for (std::size_t k = 0; k < here.size(); ++k) {
    ++rep.checked;
    auto lhs = compose(hm, here[k].forward);
    auto rhs = compose(there[k].forward, hm);
    if (!(lhs == rhs)) {
      rep.failures.push_back("h^" + std::to_string(m) + " " + here[k].label +
                             " != " + there[k].label + " h^" +
                             std::to_string(m));
    }
  }
  return rep;
}

namespace {

// Standard recursion: a flips the first letter; b = (a, c), c = (a, d),
// d = (1, b) on the two subtrees.
void act(int g, std::string& s, std::size_t from) {
  if (from >= s.size()) return;
  if (g == 0) {
    s[from] = s[from] == '0' ? '1' : '0';
    return;
  }
  static constexpr int left[4] = {-1, 0, 0, -1};
  static constexpr int right[4] = {-1, 2, 3, 1};
  int next = s[from] == '0' ? left[g] : right[g];
  if (next >= 0) act(next, s, from + 1);
}

}  // namespace

GrigorchukTruncation grigorchuk_truncation(int depth) {
  if (depth < 1) throw UsageError("Grigorchuk truncation needs depth >= 1");
  GrigorchukTruncation t;
  t.depth = depth;
  for (int g = 0; g < 4; ++g) {
    for (int level = 1; level <= depth; ++level) {
      std::uint32_t leaves = 1u << level;
      std::vector<std::uint32_t> perm(leaves);
      for (std::uint32_t x = 0; x < leaves; ++x) {
        std::string s;
        for (int k = level - 1; k >= 0; --k) s += ((x >> k) & 1u) ? '1' : '0';
        act(g, s, 0);
        perm[x] = static_cast<std::uint32_t>(std::stoul(s, nullptr, 2));
      }
      t.perms[static_cast<std::size_t>(g)].push_back(std::move(perm));
    }
  }
  return t;
}

WindowedSubstitution grigorchuk_substitution(GrigorchukTruncation const& t,
                                             int generator) {
  if (generator < 0 || generator > 3) throw UsageError("generator is 0..3");
  WindowedSubstitution s;
  auto const& levels = t.perms[static_cast<std::size_t>(generator)];
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (std::uint32_t x = 0; x < levels[l].size(); ++x) {
      s.set_image(Gen{static_cast<int>(l + 1), x},
                  FreeWord::generator(
                      Gen{static_cast<int>(l + 1), levels[l][x]}));
    }
  }
  return s;
}

RelationReport grigorchuk_relation_check(int depth) {
  auto t = grigorchuk_truncation(depth);
  std::array<WindowedSubstitution, 4> g;
  for (int k = 0; k < 4; ++k) g[static_cast<std::size_t>(k)] = grigorchuk_substitution(t, k);
  RelationReport rep;
  auto id = WindowedSubstitution::identity();
  char const* names = "abcd";
  for (int k = 0; k < 4; ++k) {
    ++rep.checked;
    auto const& x = g[static_cast<std::size_t>(k)];
    if (!(compose(x, x) == id)) {
      rep.failures.push_back(std::string(1, names[k]) + "^2 != 1");
    }
  }
  ++rep.checked;
  if (!(compose(g[1], compose(g[2], g[3])) == id)) {
    rep.failures.push_back("bcd != 1");
  }
  return rep;
}

}  // namespace pmap
