#include <doctest.h>

#include <functional>

#include "pmap/endspace.hpp"
#include "pmap/errors.hpp"
#include "support.hpp"

using namespace pmap;
using testing::Rng;

TEST_SUITE("endspace") {

TEST_CASE("expressions print canonically and round trip") {
  auto e = parse_end_space("  sum( pt! ,seq(cantor),  seq!(pt) ) ");
  CHECK(e.to_string() == "sum(pt!, seq(cantor), seq!(pt))");
  CHECK(parse_end_space(e.to_string()) == e);
  CHECK(parse_end_space("cantor!") == EndSpaceExpr::cantor(Mark::loops));
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_end_space("sum(pt, bogus)");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_end_space("sum(pt"), ParseError);
  CHECK_THROWS_AS(parse_end_space("pt pt"), ParseError);
  CHECK_THROWS_AS(parse_end_space(""), ParseError);
}

TEST_CASE("validation") {
  CHECK(validate(parse_end_space("seq!(pt)")).empty());
  auto bad = validate(parse_end_space("seq(pt!)"));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].path == "/seq");
  auto nested = validate(parse_end_space("sum(pt, seq(seq!(pt)))"));
  REQUIRE(nested.size() == 1);
  CHECK(nested[0].path == "/sum[1]/seq");
  CHECK_FALSE(validate(EndSpaceExpr::sum({})).empty());
  CHECK_THROWS_AS(require_valid(parse_end_space("seq(cantor!)")), UsageError);
}

TEST_CASE("cardinality classes") {
  CHECK(cardinality_class(parse_end_space("cantor!"), EndFilter::marked) ==
        Cardinality::uncountable());
  CHECK(cardinality_class(parse_end_space("seq!(pt)"), EndFilter::marked) ==
        Cardinality::finite(1));
  CHECK(cardinality_class(parse_end_space("seq!(pt)")) ==
        Cardinality::countable());
  CHECK(cardinality_class(parse_end_space("sum(pt!, pt!)")) ==
        Cardinality::finite(2));
  CHECK(cardinality_class(parse_end_space("sum(pt!, pt)"),
                          EndFilter::unmarked) == Cardinality::finite(1));
  CHECK(Cardinality::countable().to_string() == "aleph0");
  CHECK(Cardinality::uncountable().to_string() == "continuum");
}

TEST_CASE("accumulation and tree-part predicates") {
  CHECK_FALSE(has_accumulation_point_in_complement_of_marked(
      parse_end_space("seq!(pt)")));
  CHECK(has_accumulation_point_in_complement_of_marked(
      parse_end_space("seq(pt)")));
  CHECK(has_accumulation_point_in_complement_of_marked(
      parse_end_space("sum(cantor, pt!)")));
  CHECK_FALSE(
      infinite_tree_part_exceeds_compact_open(parse_end_space("sum(cantor, pt!)")));
  CHECK(infinite_tree_part_exceeds_compact_open(parse_end_space("seq!(cantor)")));
  CHECK_FALSE(
      infinite_tree_part_exceeds_compact_open(parse_end_space("seq!(pt)")));
}

TEST_CASE("marked subspace") {
  CHECK_FALSE(marked_subspace(parse_end_space("sum(pt, cantor)")).has_value());
  auto m = marked_subspace(parse_end_space("sum(pt!, seq!(pt), cantor)"));
  REQUIRE(m.has_value());
  CHECK(cardinality_class(*m) == Cardinality::finite(2));
}

TEST_CASE("cylinders and membership") {
  auto c = EndSpaceExpr::cantor();
  CHECK(cylinder_children(c, "") == std::vector<Address>{"0", "1"});
  auto p = EndSpaceExpr::pt();
  CHECK(is_empty_cylinder(p, "1"));
  CHECK_FALSE(is_empty_cylinder(p, "000"));
  CHECK(member_of(p, EndPoint("", "0"), "00"));
  auto s = parse_end_space("sum(pt, pt, pt)");
  CHECK(is_empty_cylinder(s, "11"));
  CHECK(cylinder_children(s, "1") == std::vector<Address>{"10"});
  CHECK(is_branching(s, "0"));
  CHECK_FALSE(is_branching(s, "1"));
  auto q = parse_end_space("seq(pt)");
  CHECK(contains(q, EndPoint::parse("(1)")));
  CHECK(contains(q, EndPoint::parse("110(0)")));
  CHECK_FALSE(contains(q, EndPoint::parse("101(0)")));
}

TEST_CASE("end points normalize") {
  CHECK(EndPoint::parse("0101(01)").to_string() == "(01)");
  CHECK(EndPoint::parse("1(11)").to_string() == "(1)");
  CHECK(EndPoint::parse("10(0)") == EndPoint("1", "0"));
  CHECK(EndPoint::parse("10(0)").bit(5) == 0);
  CHECK_THROWS_AS(EndPoint::parse("10"), ParseError);
  CHECK_THROWS_AS(EndPoint::parse("1()"), ParseError);
}

TEST_CASE("marks, isolation and extremal points") {
  auto e = parse_end_space("sum(seq!(pt), cantor)");
  CHECK(mark_of(e, EndPoint::parse("0(1)")) == Mark::loops);
  CHECK(mark_of(e, EndPoint::parse("00(0)")) == Mark::plain);
  CHECK(is_isolated(e, EndPoint::parse("00(0)")));
  CHECK_FALSE(is_isolated(e, EndPoint::parse("0(1)")));
  CHECK_FALSE(is_isolated(e, EndPoint::parse("1(0)")));
  CHECK(mark_of(e, EndPoint::parse("01(0)")) == Mark::plain);
  CHECK_THROWS_AS(mark_of(e, EndPoint::parse("0(10)")), DomainError);
  CHECK(leftmost_point(e) == EndPoint::parse("(0)"));
  CHECK(rightmost_point(e) == EndPoint::parse("(1)"));
  CHECK(finite_points(parse_end_space("sum(pt, pt, pt)")).size() == 3);
}

TEST_CASE("property: validation rejects exactly unmarked limits of marked ends") {
  Rng rng(11);
  // A seq with plain limit is bad when its body has a marked end, which is
  // a marked leaf or a seq! limit.
  std::function<bool(EndSpaceExpr const&)> has_marked =
      [&](EndSpaceExpr const& e) -> bool {
    if (e.kind() == NodeKind::point || e.kind() == NodeKind::cantor) {
      return e.mark() == Mark::loops;
    }
    if (e.kind() == NodeKind::seq && e.mark() == Mark::loops) return true;
    for (auto const& c : e.children()) {
      if (has_marked(c)) return true;
    }
    return false;
  };
  std::function<bool(EndSpaceExpr const&)> bad =
      [&](EndSpaceExpr const& e) -> bool {
    if (e.kind() == NodeKind::seq && e.mark() == Mark::plain &&
        has_marked(e.children()[0])) {
      return true;
    }
    for (auto const& c : e.children()) {
      if (bad(c)) return true;
    }
    return false;
  };
  int invalid = 0;
  for (int i = 0; i < 500; ++i) {
    auto e = testing::raw_end_space(rng, static_cast<int>(testing::uniform(rng, 0, 6)));
    bool rejected = !validate(e).empty();
    invalid += rejected;
    CHECK_MESSAGE(rejected == bad(e), e.to_string());
  }
  CHECK(invalid > 20);
}

TEST_CASE("property: children partition their cylinder") {
  Rng rng(12);
  for (int i = 0; i < 60; ++i) {
    auto e = testing::raw_end_space(rng, 3);
    if (!validate(e).empty()) continue;
    for (auto const& c : testing::nonempty_cylinders(e, 3)) {
      auto kids = cylinder_children(e, c);
      REQUIRE(!kids.empty());
      for (auto const& p : testing::sample_points(e, static_cast<unsigned>(c.size()) + 2)) {
        if (!p.has_prefix(c)) continue;
        int hits = 0;
        for (auto const& k : kids) hits += member_of(e, p, k);
        CHECK_MESSAGE(hits == 1, e.to_string() << " [" << c << "] " << p.to_string());
      }
    }
  }
}

TEST_CASE("property: cardinality and accumulation over sums") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    auto x = testing::raw_end_space(rng, 3);
    auto y = testing::raw_end_space(rng, 3);
    if (!validate(x).empty() || !validate(y).empty()) continue;
    auto s = EndSpaceExpr::sum({x, y});
    for (auto f : {EndFilter::all, EndFilter::marked, EndFilter::unmarked}) {
      CHECK(cardinality_class(s, f) ==
            cardinality_class(x, f) + cardinality_class(y, f));
    }
    CHECK(has_accumulation_point_in_complement_of_marked(s) ==
          (has_accumulation_point_in_complement_of_marked(x) ||
           has_accumulation_point_in_complement_of_marked(y)));
  }
}

}  // TEST_SUITE
