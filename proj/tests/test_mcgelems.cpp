#include <doctest.h>

#include "pmap/errors.hpp"
#include "pmap/mcgelems.hpp"
#include "pmap/selftest.hpp"
#include "support.hpp"

using namespace pmap;
using testing::Rng;

namespace {

FreeWord w(char const* s) { return parse_word(s); }
Gen loop(int ladder, std::int64_t pos) { return Gen{ladder, pos}; }

MappingClassWord word(std::initializer_list<Generator> gs) {
  return MappingClassWord{std::vector<Generator>(gs)};
}

bool is_identity(WindowedSubstitution const& f) {
  return f == WindowedSubstitution::identity();
}

}  // namespace

TEST_SUITE("mcgelems") {

TEST_CASE("generator semantics") {
  auto shift = semantics(LoopShift{1, 1});
  CHECK(shift.apply(w("a1.0")) == w("a1.1"));
  CHECK(shift.apply(w("a2.0 x3")) == w("a2.0 x3"));

  auto swap = semantics(LoopSwap{{loop(1, 0)}, {loop(1, 1)}});
  CHECK(swap.apply(w("a1.0")) == w("a1.1"));
  CHECK(swap.apply(w("a1.1")) == w("a1.0"));
  CHECK(swap.apply(w("a1.2 a2.0")) == w("a1.2 a2.0"));

  CompactSubst id{WindowedSubstitution::identity(),
                  WindowedSubstitution::identity(), "id"};
  CHECK(is_identity(semantics(id)));
  CHECK(is_identity(semantics(WordMap{w("x1 x2"), 0})));
}

TEST_CASE("composition records") {
  CHECK(compose_word(word({LoopShift{1, 1}, LoopShift{1, -1}})) ==
        MappingClass{});

  auto two = compose_word(word({WordMap{w("x1"), 2}, WordMap{w("x2"), 2}}));
  CHECK(two.record.at(2) == w("x1 x2"));
  CHECK(is_identity(two.core));

  LoopSwap psi{{loop(0, 1)}, {loop(0, 5)}};
  auto conj = compose_word(word({psi, WordMap{w("x1 x2"), 0}, inverse(psi)}));
  CHECK(conj.record.at(0) == w("x5 x2"));
  CHECK(is_identity(conj.core));

  auto cancel = compose_word(word({WordMap{w("x1"), 1}, WordMap{w("X1"), 1}}));
  CHECK(cancel.record.empty());
}

TEST_CASE("Nielsen moves") {
  auto s = nielsen_generator(NielsenKind::sigma, 1, 2, 3);
  CHECK(s.forward.apply(w("x1 x2 x3")) == w("x2 x1 x3"));
  auto l = nielsen_generator(NielsenKind::lambda, 1, 2, 3);
  CHECK(l.forward.apply(w("x1")) == w("x2 x1"));
  CHECK(l.backward.apply(l.forward.apply(w("x1 x3"))) == w("x1 x3"));
  auto r = nielsen_generator(NielsenKind::rho, 1, 2, 3);
  CHECK(r.forward.apply(w("x1")) == w("x1 x2"));
  auto t = nielsen_generator(NielsenKind::tau, 2, 1, 3);
  CHECK(t.forward.apply(w("x2")) == w("X2"));

  auto t2 = nielsen_generator(NielsenKind::tau, 2, 1, 2);
  auto l12 = nielsen_generator(NielsenKind::lambda, 1, 2, 2);
  auto p = compose(t2.forward, l12.forward);
  CHECK(is_identity(compose(p, p)));

  CHECK_THROWS_AS(nielsen_generator(NielsenKind::sigma, 1, 1, 3), UsageError);
  CHECK_THROWS_AS(nielsen_generator(NielsenKind::sigma, 1, 4, 3), UsageError);
}

TEST_CASE("involution sets") {
  CHECK(afv_set(1).size() == 1);
  CHECK(afv_set(2).size() == 4);
  CHECK(afv_set(5).size() == 10);
  for (int n = 1; n <= 8; ++n) {
    for (auto const& g : afv_set(n)) {
      CHECK(is_identity(compose(g.forward, g.forward)));
      CHECK(g.forward == g.backward);
    }
  }
  auto on = afv_set_on({loop(2, 3), loop(2, 4)});
  REQUIRE(on.size() == 4);
  CHECK(on[0].forward.apply(w("a2.3")) == w("A2.3"));
}

TEST_CASE("word syntax") {
  auto m = parse_mapping_class_word("shift(1)^3 swap({1.0},{2.0}) wm(x1 x2, I3)");
  REQUIRE(m.letters.size() == 3);
  auto const* s = std::get_if<LoopShift>(&m.letters[0]);
  REQUIRE(s);
  CHECK(s->exponent == 3);
  auto const* sw = std::get_if<LoopSwap>(&m.letters[1]);
  REQUIRE(sw);
  CHECK(sw->a == std::vector<Gen>{loop(1, 0)});
  auto const* wm = std::get_if<WordMap>(&m.letters[2]);
  REQUIRE(wm);
  CHECK(wm->interval == 3);
  CHECK(wm->word == w("x1 x2"));
  CHECK(parse_mapping_class_word(m.to_string()).to_string() == m.to_string());

  auto n = parse_mapping_class_word("flip(1.0) transp(1.0,1.1)^-1 lnielsen(1.0,1.1)");
  CHECK(n.letters.size() == 3);
  CHECK(parse_mapping_class_word("").letters.empty());

  CHECK_THROWS_AS(parse_mapping_class_word("shift(1"), ParseError);
  CHECK_THROWS_AS(parse_mapping_class_word("twist(1)"), ParseError);
  CHECK_THROWS_AS(parse_mapping_class_word("wm(x1 y2, I0)"), ParseError);
  CHECK_THROWS_AS(parse_mapping_class_word("shift(1)^"), ParseError);
}

TEST_CASE("word validation against a graph") {
  CHECK_NOTHROW(validate_word(parse_mapping_class_word("shift(2) swap({0.1},{2.4})"), 2));
  CHECK_THROWS_AS(validate_word(parse_mapping_class_word("shift(3)"), 2), UsageError);
  CHECK_THROWS_AS(validate_word(parse_mapping_class_word("shift(0)"), 2), UsageError);
  CHECK_THROWS_AS(validate_word(parse_mapping_class_word("swap({1.0},{1.0})"), 1),
                  UsageError);
  CHECK_THROWS_AS(
      validate_word(parse_mapping_class_word("swap({1.0,1.1},{1.2})"), 1),
      UsageError);
  CHECK_THROWS_AS(validate_word(parse_mapping_class_word("wm(a4.0, I0)"), 2),
                  UsageError);
}

TEST_CASE("property: a word times its inverse is the identity") {
  Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    int ladders = static_cast<int>(testing::uniform(rng, 1, 4));
    auto u = random_word(rng, ladders, 8);
    CHECK_MESSAGE(compose_word(u * u.inverse()) == MappingClass{},
                  u.to_string());
    CHECK(compose_word(u.inverse() * u) == MappingClass{});
  }
}

TEST_CASE("property: composition is a homomorphism on cores") {
  Rng rng(52);
  for (int i = 0; i < 200; ++i) {
    auto u = random_word(rng, 3, 6), v = random_word(rng, 3, 6);
    auto uv = compose_word(u * v);
    CHECK(uv.core == compose(compose_word(u).core, compose_word(v).core));
    // Records of u v are u's record followed by v's pushed through u.
    auto cu = compose_word(u), cv = compose_word(v);
    std::map<int, FreeWord> expect = cu.record;
    for (auto const& [k, r] : cv.record) {
      expect[k] = expect[k] * cu.core.apply(r);
      if (expect[k].is_identity()) expect.erase(k);
    }
    CHECK(uv.record == expect);
  }
}

TEST_CASE("property: shifts cancel and swaps are involutions") {
  Rng rng(53);
  for (int i = 0; i < 100; ++i) {
    int ladder = static_cast<int>(testing::uniform(rng, 1, 3));
    auto k = testing::uniform(rng, -5, 5);
    CHECK(compose_word(word({LoopShift{ladder, k}, LoopShift{ladder, -k}})) ==
          MappingClass{});
    auto p = testing::uniform(rng, -4, 4);
    LoopSwap s{{loop(ladder, p)}, {loop(ladder, p + 1 + testing::uniform(rng, 0, 3))}};
    CHECK(compose_word(word({s, s})) == MappingClass{});
  }
}

}  // TEST_SUITE
