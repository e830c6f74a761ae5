#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pmap/errors.hpp"
#include "pmap/freegroup.hpp"
#include "support.hpp"

using namespace pmap;
using testing::Rng;

namespace {

FreeWord w(char const* s) { return parse_word(s); }

FreeWord random_word(Rng& rng, int gens, int max_len) {
  std::vector<Letter> ls;
  auto len = testing::uniform(rng, 0, max_len);
  for (std::int64_t i = 0; i < len; ++i) {
    ls.push_back({Gen{0, testing::uniform(rng, 0, gens - 1)},
                  testing::uniform(rng, 0, 1) ? 1 : -1});
  }
  return FreeWord(ls);
}

bool reduced(FreeWord const& u) {
  auto const& l = u.letters();
  for (std::size_t i = 1; i < l.size(); ++i) {
    if (l[i].gen == l[i - 1].gen && l[i].sign == -l[i - 1].sign) return false;
  }
  return true;
}

WindowedSubstitution random_subst(Rng& rng) {
  WindowedSubstitution f;
  if (testing::uniform(rng, 0, 1)) f.set_shift(0, testing::uniform(rng, -2, 2));
  for (int k = 0; k < 2; ++k) {
    f.set_image(Gen{0, testing::uniform(rng, 0, 4)}, random_word(rng, 5, 3));
  }
  return f;
}

}  // namespace

TEST_SUITE("freegroup") {

TEST_CASE("words reduce and print") {
  CHECK(w("x1 X1 x2") == w("x2"));
  CHECK(w("x1 X1").is_identity());
  CHECK(w("a2.5 A2.5 a1.-3").to_string() == "a1.-3");
  CHECK(w("x3 X2 x-1").to_string() == "x3 X2 x-1");
  CHECK(FreeWord().to_string() == "1");
  CHECK(w("1").is_identity());
  CHECK(w("x1 x2").inverse() == w("X2 X1"));
  CHECK(w("x1 x2").power(-2) == w("X2 X1 X2 X1"));
  CHECK_THROWS_AS(parse_word("y1"), ParseError);
  CHECK_THROWS_AS(parse_word("a1"), ParseError);
}

TEST_CASE("commuting words") {
  CHECK(commute(w("x1 x2"), w("x1 x2 x1 x2")));
  CHECK_FALSE(commute(w("x1"), w("x2")));
  CHECK(commute(FreeWord(), w("x2")));
}

TEST_CASE("folding, rank and membership") {
  CHECK(subgroup_rank({w("x1"), w("x2")}) == 2);
  CHECK(subgroup_rank({w("x1 x2"), w("x2")}) == 2);
  CHECK(subgroup_contains({w("x1 x2"), w("x2")}, w("x1")));
  CHECK(subgroup_rank({w("x1 x1")}) == 1);
  CHECK_FALSE(subgroup_contains({w("x1 x1")}, w("x1")));
  CHECK(subgroup_rank({w("x1"), w("x1")}) == 1);
  CHECK(subgroup_rank({}) == 0);
  auto g = fold({w("x1 x2 X1"), w("x1 x3 X1")});
  CHECK(g.rank() == 2);
  for (auto const& b : g.basis()) CHECK(g.contains(b));
}

TEST_CASE("Smith invariant factors") {
  CHECK(smith_invariant_factors({{2}}) == std::vector<std::int64_t>{2});
  CHECK(smith_invariant_factors({{2, 4}, {6, 8}}) ==
        std::vector<std::int64_t>{2, 4});
  CHECK(smith_invariant_factors({{1, 0}, {0, 1}}) ==
        std::vector<std::int64_t>{1, 1});
  CHECK(smith_invariant_factors({{0, 0}}).empty());
}

TEST_CASE("corank of free factors") {
  std::vector<Gen> amb{Gen{0, 0}, Gen{0, 1}, Gen{0, 2}, Gen{0, 3}};
  auto r = corank_of_free_factor(amb, {w("x0")});
  CHECK(r.corank == 3);
  CHECK(r.certified);
  CHECK(corank_of_free_factor(amb, {w("x1"), w("x2"), w("x3")}).corank == 1);
  auto sq = corank_of_free_factor({Gen{0, 0}}, {w("x0 x0")});
  CHECK_FALSE(sq.certified);
  CHECK(sq.invariant_factors == std::vector<std::int64_t>{2});
  CHECK(corank_of_free_factor(amb, {w("x0 x1"), w("x1")}).corank == 2);
  CHECK_THROWS_AS(corank_of_free_factor(amb, {w("x7")}), UsageError);
}

TEST_CASE("substitutions") {
  auto f = WindowedSubstitution::shift(0, 1);
  CHECK(f.apply(w("x0 x1")) == w("x1 x2"));
  WindowedSubstitution g;
  g.set_image(Gen{0, 0}, w("x0 x1"));
  CHECK(compose(WindowedSubstitution::identity(), g) == g);
  CHECK(compose(g, g).image(Gen{0, 0}) == w("x0 x1 x1"));
  CHECK(compose(f, WindowedSubstitution::shift(0, -1)) ==
        WindowedSubstitution::identity());
  WindowedSubstitution h = WindowedSubstitution::shift(0, 2);
  h.set_image(Gen{0, 5}, w("x7"));
  CHECK(h == WindowedSubstitution::shift(0, 2));
  CHECK(h.image(Gen{1, 0}) == w("a1.0"));
}

TEST_CASE("property: folding is confluent") {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    std::vector<FreeWord> ws;
    auto k = testing::uniform(rng, 1, 4);
    for (std::int64_t i = 0; i < k; ++i) ws.push_back(random_word(rng, 3, 5));
    std::size_t edges = 0;
    for (auto const& u : ws) edges += u.length();
    std::vector<std::size_t> order(edges);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(fold_in_order(ws, order).canonical_edges() == fold(ws).canonical_edges());
  }
}

TEST_CASE("property: Nielsen-perturbed bases keep their rank") {
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    int k = static_cast<int>(testing::uniform(rng, 1, 6));
    std::vector<FreeWord> b;
    for (int i = 0; i < k; ++i) b.push_back(FreeWord::x(i));
    for (int step = 0; step < 8; ++step) {
      auto i = static_cast<std::size_t>(testing::uniform(rng, 0, k - 1));
      auto j = static_cast<std::size_t>(testing::uniform(rng, 0, k - 1));
      switch (testing::uniform(rng, 0, 2)) {
        case 0:
          b[i] = b[i].inverse();
          break;
        case 1:
          std::swap(b[i], b[j]);
          break;
        default:
          if (i != j) b[i] = testing::uniform(rng, 0, 1) ? b[i] * b[j] : b[j].inverse() * b[i];
      }
    }
    CHECK(subgroup_rank(b) == k);
    for (int i = 0; i < k; ++i) CHECK(subgroup_contains(b, FreeWord::x(i)));
    std::vector<Gen> amb;
    for (int i = 0; i < k + 2; ++i) amb.push_back(Gen{0, i});
    auto r = corank_of_free_factor(amb, b);
    CHECK(r.certified);
    CHECK(r.corank == 2);
  }
}

TEST_CASE("property: corank of a subset of the basis") {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    auto n = testing::uniform(rng, 1, 8);
    std::vector<Gen> amb;
    std::vector<FreeWord> sub;
    for (std::int64_t i = 0; i < n; ++i) {
      amb.push_back(Gen{0, i});
      if (testing::uniform(rng, 0, 1)) sub.push_back(FreeWord::x(i));
    }
    auto r = corank_of_free_factor(amb, sub);
    CHECK(r.corank == n - static_cast<std::int64_t>(sub.size()));
    CHECK(r.certified);
  }
}

TEST_CASE("property: substitutions are homomorphisms and compose associatively") {
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    auto f = random_subst(rng), g = random_subst(rng), h = random_subst(rng);
    auto u = random_word(rng, 6, 6), v = random_word(rng, 6, 6);
    auto fu = f.apply(u * v);
    CHECK(reduced(fu));
    CHECK(fu == f.apply(u) * f.apply(v));
    CHECK(compose(f, compose(g, h)) == compose(compose(f, g), h));
    for (int i = -3; i < 9; ++i) {
      Gen x{0, i};
      CHECK(compose(f, g).image(x) == f.apply(g.image(x)));
    }
  }
}

TEST_CASE("property: group axioms for words") {
  Rng rng(35);
  for (int t = 0; t < 200; ++t) {
    auto a = random_word(rng, 4, 6), b = random_word(rng, 4, 6),
         c = random_word(rng, 4, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
    CHECK(a * FreeWord() == a);
    CHECK(parse_word(a.to_string()) == a);
  }
}

}  // TEST_SUITE
