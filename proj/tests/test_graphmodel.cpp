#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pmap/classify.hpp"
#include "pmap/errors.hpp"
#include "pmap/graphmodel.hpp"
#include "pmap/selftest.hpp"
#include "support.hpp"

using namespace pmap;
using testing::Rng;

namespace {

GraphDescriptor g(char const* text) { return parse_graph_descriptor(text); }

std::pair<std::size_t, std::size_t> error_position(char const* text) {
  try {
    parse_graph_descriptor(text);
  } catch (ParseError const& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_SUITE("graphmodel") {

TEST_CASE("descriptor files parse with comments and blank lines") {
  auto d = g("# Loch Ness monster\n\nrank = inf\nends = pt!   # one end\n");
  CHECK(d.infinite_rank());
  CHECK(d.ends() == EndSpaceExpr::pt(Mark::loops));
  CHECK_FALSE(d.standard_form().has_value());

  auto t = g("rank = 2\nends = sum(pt, cantor)\ntree = pt x 1\ntree = cantor x 1\n");
  REQUIRE(t.standard_form().has_value());
  CHECK(t.standard_form()->size() == 2);
  CHECK(parse_graph_descriptor(t.to_string()).to_string() == t.to_string());
}

TEST_CASE("descriptor parse errors report line and column") {
  CHECK(error_position("rank = 1\nrank = 2\nends = pt\n") ==
        std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_position("rank = 1\n  colour = red\nends = pt\n") ==
        std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(error_position("rank = 1\n").first == 2);
  CHECK(error_position("ends = pt\n").first == 2);
  // Column of the bad token inside the expression.
  CHECK(error_position("rank = 0\nends = sum(pt, bogus)\n") ==
        std::pair<std::size_t, std::size_t>{2, 16});
  CHECK(error_position("rank = many\nends = pt\n") ==
        std::pair<std::size_t, std::size_t>{1, 8});
  CHECK(error_position("rank 1\n").first == 1);
}

TEST_CASE("inconsistent descriptors are usage errors") {
  CHECK_THROWS_AS(g("rank = 2\nends = pt!\n"), UsageError);
  CHECK_THROWS_AS(g("rank = inf\nends = sum(pt, cantor)\n"), UsageError);
  CHECK_THROWS_AS(g("rank = inf\nends = seq(pt!)\n"), UsageError);
  CHECK_THROWS_AS(load_graph_descriptor("/nonexistent/nosuchfile.gd"),
                  UsageError);
}

TEST_CASE("loading from a file") {
  auto path = std::filesystem::temp_directory_path() / "pmap_unit_ladder.gd";
  {
    std::ofstream f(path);
    f << "rank = inf\nends = sum(pt!, pt!)\n";
  }
  auto d = load_graph_descriptor(path.string());
  CHECK(characteristic_triple(d).to_string() == "(inf, 2, 2)");
  std::filesystem::remove(path);
}

TEST_CASE("characteristic triples") {
  CHECK(characteristic_triple(g("rank = inf\nends = pt!\n")).to_string() ==
        "(inf, 1, 1)");
  CHECK(characteristic_triple(g("rank = 1\nends = sum(pt, pt)\n")).to_string() ==
        "(1, 2, 0)");
  CHECK(characteristic_triple(g("rank = inf\nends = seq!(pt)\n")).to_string() ==
        "(inf, aleph0, 1)");
  CHECK(characteristic_triple(g("rank = inf\nends = cantor!\n")).marked ==
        Cardinality::uncountable());
}

TEST_CASE("wedge decompositions") {
  auto ladder = wedge_decomposition(g("rank = inf\nends = sum(pt!, pt!)\n"));
  REQUIRE(ladder.has_value());
  CHECK(ladder->canonical == WedgeCounts{0, 2, 0, 0});

  // A ray wedged onto a Millipede is absorbed: same triple as the Millipede.
  auto mr = g("rank = inf\nends = sum(seq!(pt), pt)\n");
  auto d = wedge_decomposition(mr);
  REQUIRE(d.has_value());
  CHECK(d->raw == WedgeCounts{1, 0, 1, 0});
  CHECK(d->canonical == WedgeCounts{0, 0, 1, 0});
  CHECK(characteristic_triple(mr) ==
        characteristic_triple(g("rank = inf\nends = seq!(pt)\n")));
  CHECK(characteristic_triple(wedge_graph(d->canonical)) ==
        characteristic_triple(mr));

  CHECK_FALSE(wedge_decomposition(g("rank = inf\nends = cantor!\n")));
  CHECK_FALSE(wedge_decomposition(g("rank = inf\nends = sum(pt!, cantor)\n")));
  CHECK_FALSE(wedge_decomposition(g("rank = 0\nends = cantor\n")));

  auto finite = wedge_decomposition(g("rank = 3\nends = sum(pt, pt)\n"));
  REQUIRE(finite.has_value());
  CHECK(finite->canonical == WedgeCounts{2, 0, 0, 3});
  CHECK(finite->summands().size() == 2);
  CHECK_THROWS_AS(wedge_graph(WedgeCounts{}), UsageError);
}

TEST_CASE("isomorphism types of finite type groups") {
  CHECK(pmap_isomorphism_type(3, 0).to_string() == "Out(F_3)");
  CHECK(pmap_isomorphism_type(g("rank = 0\nends = cantor\n")).kind ==
        PMapType::Kind::trivial);
  CHECK(pmap_isomorphism_type(g("rank = 2\nends = sum(pt, pt, pt)\n")).to_string() ==
        "F_2^2 ⋊ Aut(F_2)");
  CHECK(pmap_isomorphism_type(g("rank = 1\nends = pt\n")).to_string() ==
        "Aut(F_1)");
  CHECK_THROWS_AS(pmap_isomorphism_type(g("rank = inf\nends = pt!\n")),
                  NotFiniteType);
  CHECK_THROWS_AS(pmap_isomorphism_type(g("rank = 1\nends = cantor\n")),
                  NotFiniteType);
}

TEST_CASE("t-class from the end space and from the tree list") {
  auto a = g("rank = 1\nends = sum(pt, cantor, cantor)\ntree = pt x 1\n"
             "tree = cantor x 2\n");
  CHECK(t_class(a) == TClass::finite);
  CHECK(t_class_from_standard_form(a) == TClass::finite);
  CHECK(standard_form_issues(a).empty());

  auto b = g("rank = 1\nends = sum(pt, cantor)\ntree = pt x 2\n");
  CHECK_FALSE(standard_form_issues(b).empty());

  CHECK(t_class(g("rank = inf\nends = seq!(pt)\n")) == TClass::zero);
  CHECK(t_class(g("rank = inf\nends = seq!(cantor)\n")) == TClass::infinite);
  CHECK(t_class(g("rank = inf\nends = sum(pt!, cantor)\n")) == TClass::finite);
}

TEST_CASE("property: wedge decompositions round trip") {
  Rng rng(41);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 100; ++i) {
    auto e = random_end_space(rng, 3);
    bool loops = !cardinality_class(e, EndFilter::marked).is_zero();
    std::optional<std::uint64_t> rank;
    if (!loops) rank = static_cast<std::uint64_t>(testing::uniform(rng, 0, 3));
    GraphDescriptor d(rank, e);
    auto w = wedge_decomposition(d);
    if (!w) continue;
    ++tested;
    auto back = wedge_graph(w->canonical);
    CHECK_MESSAGE(characteristic_triple(back) == characteristic_triple(d),
                  d.to_string());
    CHECK_MESSAGE(classify_coarse(back).kind == classify_coarse(d).kind,
                  d.to_string());
  }
  CHECK(tested >= 50);
}

TEST_CASE("property: printing and reparsing preserves descriptors") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    auto e = random_end_space(rng, 3);
    bool loops = !cardinality_class(e, EndFilter::marked).is_zero();
    std::optional<std::uint64_t> rank;
    if (!loops) rank = static_cast<std::uint64_t>(testing::uniform(rng, 0, 9));
    GraphDescriptor d(rank, e);
    auto back = parse_graph_descriptor(d.to_string());
    CHECK(back.ends() == d.ends());
    CHECK(back.rank() == d.rank());
  }
}

}  // TEST_SUITE
