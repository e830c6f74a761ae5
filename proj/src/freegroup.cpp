#include "pmap/freegroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "pmap/errors.hpp"

namespace pmap {

std::string Gen::to_string() const {
  if (ladder == 0) return "x" + std::to_string(pos);
  return "a" + std::to_string(ladder) + "." + std::to_string(pos);
}

FreeWord::FreeWord(std::vector<Letter> letters) {
  for (auto const& l : letters) {
    if (l.sign != 1 && l.sign != -1) throw UsageError("letter sign must be +-1");
    if (!letters_.empty() && letters_.back().gen == l.gen &&
        letters_.back().sign == -l.sign) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

FreeWord FreeWord::inverse() const {
  std::vector<Letter> r;
  r.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    r.push_back(it->inverse());
  }
  FreeWord w;
  w.letters_ = std::move(r);
  return w;
}

FreeWord FreeWord::operator*(FreeWord const& o) const {
  std::vector<Letter> r = letters_;
  r.insert(r.end(), o.letters_.begin(), o.letters_.end());
  return FreeWord(std::move(r));
}

FreeWord FreeWord::power(std::int64_t k) const {
  FreeWord base = k < 0 ? inverse() : *this;
  FreeWord r;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
  return r;
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (auto const& l : letters_) {
    if (!s.empty()) s += ' ';
    std::string g = l.gen.to_string();
    if (l.sign < 0) g[0] = static_cast<char>(std::toupper(g[0]));
    s += g;
  }
  return s;
}

FreeWord parse_word(std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto fail = [&](std::string const& m) { throw ParseError(m, 1, i + 1); };
  auto integer = [&]() {
    bool neg = false;
    if (i < text.size() && text[i] == '-') {
      neg = true;
      ++i;
    }
    std::size_t start = i;
    std::int64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      ++i;
    }
    if (i == start) fail("expected a number");
    return neg ? -v : v;
  };
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i == text.size()) break;
    char c = text[i];
    if (c == '1') {
      ++i;
      continue;
    }
    if (c == 'x' || c == 'X') {
      ++i;
      out.push_back({Gen{0, integer()}, c == 'x' ? 1 : -1});
    } else if (c == 'a' || c == 'A') {
      ++i;
      std::int64_t l = integer();
      if (l < 0) fail("ladder index must be nonnegative");
      if (i >= text.size() || text[i] != '.') fail("expected '.'");
      ++i;
      out.push_back({Gen{static_cast<int>(l), integer()}, c == 'a' ? 1 : -1});
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      fail("letters must be separated by whitespace");
    }
  }
  return FreeWord(std::move(out));
}

bool commute(FreeWord const& u, FreeWord const& v) { return u * v == v * u; }

// ----------------------------------------------------------- substitution

WindowedSubstitution WindowedSubstitution::shift(int ladder, std::int64_t k) {
  WindowedSubstitution s;
  s.set_shift(ladder, k);
  return s;
}

void WindowedSubstitution::set_image(Gen g, FreeWord w) {
  images_[g] = std::move(w);
  normalize();
}

void WindowedSubstitution::set_shift(int ladder, std::int64_t k) {
  if (k == 0) {
    shifts_.erase(ladder);
  } else {
    shifts_[ladder] = k;
  }
  normalize();
}

std::int64_t WindowedSubstitution::shift_of(int ladder) const {
  auto it = shifts_.find(ladder);
  return it == shifts_.end() ? 0 : it->second;
}

FreeWord WindowedSubstitution::image(Gen g) const {
  auto it = images_.find(g);
  if (it != images_.end()) return it->second;
  return FreeWord::generator(Gen{g.ladder, g.pos + shift_of(g.ladder)});
}

FreeWord WindowedSubstitution::apply(FreeWord const& w) const {
  std::vector<Letter> out;
  for (auto const& l : w.letters()) {
    FreeWord img = image(l.gen);
    if (l.sign < 0) img = img.inverse();
    out.insert(out.end(), img.letters().begin(), img.letters().end());
  }
  return FreeWord(std::move(out));
}

void WindowedSubstitution::normalize() {
  for (auto it = images_.begin(); it != images_.end();) {
    Gen t{it->first.ladder, it->first.pos + shift_of(it->first.ladder)};
    if (it->second == FreeWord::generator(t)) {
      it = images_.erase(it);
    } else {
      ++it;
    }
  }
}

std::string WindowedSubstitution::to_string() const {
  std::string s = "{";
  bool first = true;
  for (auto const& [l, k] : shifts_) {
    if (!first) s += ", ";
    first = false;
    s += "shift ladder " + std::to_string(l) + " by " + std::to_string(k);
  }
  for (auto const& [g, w] : images_) {
    if (!first) s += ", ";
    first = false;
    s += g.to_string() + " -> " + w.to_string();
  }
  return s + "}";
}

WindowedSubstitution compose(WindowedSubstitution const& f,
                             WindowedSubstitution const& g) {
  WindowedSubstitution r;
  for (auto const& [l, k] : g.shifts_) r.shifts_[l] += k;
  for (auto const& [l, k] : f.shifts_) r.shifts_[l] += k;
  for (auto it = r.shifts_.begin(); it != r.shifts_.end();) {
    it = it->second == 0 ? r.shifts_.erase(it) : std::next(it);
  }
  // explicit where g is explicit, or where g's tail lands on f's window
  std::set<Gen> window;
  for (auto const& [x, w] : g.images_) window.insert(x);
  for (auto const& [y, w] : f.images_) {
    window.insert(Gen{y.ladder, y.pos - g.shift_of(y.ladder)});
  }
  for (Gen const& x : window) r.images_[x] = f.apply(g.image(x));
  r.normalize();
  return r;
}

// ---------------------------------------------------------------- folding

namespace {

struct UnionFind {
  std::vector<int> parent;
  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // smaller id survives, so the base stays 0
    return true;
  }
};

struct RawEdge {
  int from;
  Gen label;
  int to;
};

std::vector<RawEdge> flower(std::vector<FreeWord> const& words,
                            UnionFind& uf) {
  std::vector<RawEdge> edges;
  uf.make();  // base
  for (auto const& w : words) {
    auto const& ls = w.letters();
    if (ls.empty()) continue;
    int cur = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int next = i + 1 == ls.size() ? 0 : uf.make();
      if (ls[i].sign > 0) {
        edges.push_back({cur, ls[i].gen, next});
      } else {
        edges.push_back({next, ls[i].gen, cur});
      }
      cur = next;
    }
  }
  return edges;
}

}  // namespace

FoldedGraph fold_in_order(std::vector<FreeWord> const& words,
                          std::vector<std::size_t> const& order) {
  UnionFind uf;
  std::vector<RawEdge> edges = flower(words, uf);
  if (order.size() != edges.size()) {
    throw UsageError("fold order must list every flower edge once");
  }
  std::vector<RawEdge> ordered;
  ordered.reserve(edges.size());
  for (std::size_t i : order) ordered.push_back(edges.at(i));
  // Insert edges one at a time; every insertion that collides with an
  // existing edge identifies endpoints, then stale maps are rebuilt.
  std::vector<RawEdge> kept;
  bool changed = true;
  std::vector<RawEdge> pending = ordered;
  while (changed) {
    changed = false;
    std::map<std::pair<int, Gen>, int> out, in;
    kept.clear();
    for (auto e : pending) {
      e.from = uf.find(e.from);
      e.to = uf.find(e.to);
      auto ko = std::make_pair(e.from, e.label);
      auto ki = std::make_pair(e.to, e.label);
      auto io = out.find(ko);
      if (io != out.end()) {
        if (uf.find(io->second) != e.to) {
          uf.unite(io->second, e.to);
          changed = true;
        }
        continue;
      }
      auto ii = in.find(ki);
      if (ii != in.end()) {
        if (uf.find(ii->second) != e.from) {
          uf.unite(ii->second, e.from);
          changed = true;
        }
        continue;
      }
      out[ko] = e.to;
      in[ki] = e.from;
      kept.push_back(e);
    }
    pending = kept;
  }
  // compact vertex ids, base first
  std::map<int, int> ids;
  ids[uf.find(0)] = 0;
  FoldedGraph g;
  for (auto const& e : kept) {
    for (int v : {e.from, e.to}) {
      if (!ids.count(v)) {
        int n = static_cast<int>(ids.size());
        ids[v] = n;
      }
    }
  }
  g.vertices_ = static_cast<int>(ids.size());
  for (auto const& e : kept) {
    FoldedGraph::Edge fe{ids[e.from], e.label, ids[e.to]};
    g.edges_.push_back(fe);
    g.out_[{fe.from, fe.label}] = fe.to;
    g.in_[{fe.to, fe.label}] = fe.from;
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  return g;
}

FoldedGraph fold(std::vector<FreeWord> const& words) {
  std::size_t n = 0;
  for (auto const& w : words) n += w.length();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return fold_in_order(words, order);
}

bool FoldedGraph::contains(FreeWord const& w) const {
  int v = 0;
  for (auto const& l : w.letters()) {
    auto const& table = l.sign > 0 ? out_ : in_;
    auto it = table.find({v, l.gen});
    if (it == table.end()) return false;
    v = it->second;
  }
  return v == 0;
}

std::vector<FreeWord> FoldedGraph::basis() const {
  // spanning tree by BFS; each non-tree edge gives one basis element
  std::vector<std::optional<FreeWord>> path(vertices_);
  path[0] = FreeWord();
  std::vector<bool> tree(edges_.size(), false);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto const& e = edges_[i];
      if (e.from == v && !path[e.to]) {
        path[e.to] = *path[v] * FreeWord::generator(e.label);
        tree[i] = true;
        queue.push_back(e.to);
      } else if (e.to == v && !path[e.from]) {
        path[e.from] = *path[v] * FreeWord::generator(e.label, -1);
        tree[i] = true;
        queue.push_back(e.from);
      }
    }
  }
  std::vector<FreeWord> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (tree[i]) continue;
    auto const& e = edges_[i];
    out.push_back(*path[e.from] * FreeWord::generator(e.label) *
                  path[e.to]->inverse());
  }
  return out;
}

std::vector<FoldedGraph::Edge> FoldedGraph::canonical_edges() const {
  // Outgoing and incoming labels are unique at each vertex, so BFS with a
  // fixed label order numbers vertices canonically.
  std::vector<std::pair<Letter, std::pair<int, int>>> moves;
  std::vector<int> number(vertices_, -1);
  number[0] = 0;
  int next = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    std::vector<std::pair<Letter, int>> nbrs;
    for (auto const& e : edges_) {
      if (e.from == v) nbrs.push_back({Letter{e.label, 1}, e.to});
      if (e.to == v) nbrs.push_back({Letter{e.label, -1}, e.from});
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (auto const& [l, u] : nbrs) {
      if (number[u] < 0) {
        number[u] = next++;
        queue.push_back(u);
      }
    }
  }
  std::vector<Edge> out;
  for (auto const& e : edges_) out.push_back({number[e.from], e.label, number[e.to]});
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t subgroup_rank(std::vector<FreeWord> const& words) {
  return fold(words).rank();
}

bool subgroup_contains(std::vector<FreeWord> const& words, FreeWord const& w) {
  return fold(words).contains(w);
}

// -------------------------------------------------------------------- SNF

std::vector<std::int64_t> smith_invariant_factors(
    std::vector<std::vector<std::int64_t>> m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> out;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero absolute value in the remaining block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 &&
            (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(m[t], m[pi]);
    for (auto& row : m) std::swap(row[t], row[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        std::int64_t q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        std::int64_t q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // divisibility of the rest of the block
        for (std::size_t i = t + 1; i < rows && clean; ++i) {
          for (std::size_t j = t + 1; j < cols && clean; ++j) {
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
            }
          }
        }
      }
    }
    out.push_back(std::llabs(m[t][t]));
    ++t;
  }
  return out;
}

CorankResult corank_of_free_factor(std::vector<Gen> const& ambient,
                                   std::vector<FreeWord> const& words) {
  std::map<Gen, std::size_t> col;
  for (auto const& g : ambient) {
    if (!col.emplace(g, col.size()).second) {
      throw UsageError("ambient generator " + g.to_string() + " repeated");
    }
  }
  for (auto const& w : words) {
    for (auto const& l : w.letters()) {
      if (!col.count(l.gen)) {
        throw UsageError("generator " + l.gen.to_string() +
                         " lies outside the ambient free group");
      }
    }
  }
  FoldedGraph g = fold(words);
  CorankResult r;
  r.subgroup_rank = g.rank();
  r.corank = static_cast<std::int64_t>(ambient.size()) - r.subgroup_rank;
  std::vector<std::vector<std::int64_t>> mat;
  for (auto const& b : g.basis()) {
    std::vector<std::int64_t> row(ambient.size(), 0);
    for (auto const& l : b.letters()) row[col[l.gen]] += l.sign;
    mat.push_back(std::move(row));
  }
  r.invariant_factors = smith_invariant_factors(mat);
  bool unit = std::all_of(r.invariant_factors.begin(),
                          r.invariant_factors.end(),
                          [](std::int64_t f) { return f == 1; });
  r.certified =
      unit && static_cast<std::int64_t>(r.invariant_factors.size()) ==
                  r.subgroup_rank;
  if (!r.certified) {
    std::string fs;
    for (auto f : r.invariant_factors) fs += " " + std::to_string(f);
    r.diagnostic = "not certified as a free factor: invariant factors" +
                   (fs.empty() ? std::string(" none") : fs) + " for rank " +
                   std::to_string(r.subgroup_rank);
  }
  return r;
}

}  // namespace pmap
