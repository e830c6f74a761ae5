#include <doctest.h>

#include "pmap/classify.hpp"
#include "pmap/errors.hpp"
#include "pmap/selftest.hpp"
#include "support.hpp"

using namespace pmap;
using testing::Rng;

namespace {

GraphDescriptor g(char const* text) { return parse_graph_descriptor(text); }

GraphDescriptor loops(char const* ends) {
  return GraphDescriptor(std::nullopt, parse_end_space(ends));
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("coarse classes of the basic examples") {
  CHECK(classify_coarse(g("rank = 1\nends = pt\n")).kind == CoarseKind::cb);
  CHECK(classify_coarse(loops("pt!")).kind == CoarseKind::cb);
  CHECK(classify_coarse(loops("seq!(pt)")).kind == CoarseKind::cb);
  CHECK(classify_coarse(loops("sum(pt!, pt!)")).kind ==
        CoarseKind::cb_generated_not_cb);
  CHECK(classify_coarse(loops("sum(pt!, cantor)")).kind ==
        CoarseKind::locally_cb_not_cb_generated);
  CHECK(classify_coarse(loops("cantor!")).kind == CoarseKind::not_locally_cb);
  CHECK(classify_coarse(g("rank = 0\nends = cantor\n")).kind == CoarseKind::cb);
  CHECK(classify_coarse(g("rank = 2\nends = sum(pt, pt)\n")).kind ==
        CoarseKind::cb_generated_not_cb);
  CHECK_FALSE(classify_coarse(loops("sum(pt!, pt!)")).witness.empty());
}

TEST_CASE("table cells") {
  CHECK(table_cell(g("rank = 0\nends = pt\n")) ==
        TableCell{RankColumn::r_zero, TClass::zero});
  CHECK(table_cell(loops("seq!(pt)")) ==
        TableCell{RankColumn::n_one, TClass::zero});
  CHECK(table_cell(loops("sum(pt!, pt!, cantor)")) ==
        TableCell{RankColumn::n_finite, TClass::finite});
  CHECK(table_cell(loops("cantor!")).column == RankColumn::n_infinite);
  CHECK(table_cell(g("rank = 3\nends = cantor\n")).column == RankColumn::r_finite);
  CHECK_THROWS_AS(
      table_cell(g("rank = 1\nends = seq(cantor)\ntree = cantor x inf\n")),
      NACell);
  CHECK_THROWS_AS(table_cell(g("rank = 1\nends = sum(pt, cantor)\ntree = pt x 3\n")),
                  DomainError);
}

TEST_CASE("first cohomology rank") {
  CHECK(h1_rank(loops("pt!")) == Cardinality::finite(0));
  CHECK(h1_rank(g("rank = 4\nends = cantor\n")) == Cardinality::finite(0));
  CHECK(h1_rank(loops("sum(pt!, pt!)")) == Cardinality::finite(1));
  CHECK(h1_rank(loops("sum(pt!, pt!, pt!, pt!, pt!)")) == Cardinality::finite(4));
  CHECK(h1_rank(loops("cantor!")) == Cardinality::countable());
  CHECK(h1_rank(loops("seq!(pt!)")) == Cardinality::countable());
  CHECK(h1_rank(loops("sum(seq!(pt), pt!, cantor)")) == Cardinality::finite(1));
}

TEST_CASE("generating sets") {
  auto a = build_generating_set(WedgeCounts{2, 1, 1, 0});
  CHECK(a.word_maps.size() == 2);
  CHECK(a.swaps.size() == 1);
  CHECK(a.shifts.size() == 1);
  CHECK(a.word_maps[0].loop.to_string() == "a_{1,1}");

  auto b = build_generating_set(WedgeCounts{0, 2, 0, 0});
  CHECK(b.word_maps.empty());
  CHECK(b.swaps.size() == 1);
  CHECK(b.shifts.size() == 1);

  auto c = build_generating_set(WedgeCounts{1, 0, 1, 0});
  REQUIRE(c.word_maps.size() == 1);
  CHECK(c.word_maps[0].loop.to_string() == "b_{1,1}");
  CHECK(c.swaps.empty());
  CHECK(c.shifts.empty());

  CHECK_THROWS_AS(build_generating_set(WedgeCounts{0, 1, 0, 0}), NotCBGenerated);
  CHECK_THROWS_AS(build_generating_set(WedgeCounts{3, 0, 0, 2}), NotCBGenerated);
  CHECK_THROWS_AS(build_generating_set(loops("sum(pt!, cantor)")), NotCBGenerated);
  CHECK_THROWS_AS(build_generating_set(g("rank = 2\nends = pt\n")), NotCBGenerated);
  CHECK(build_generating_set(loops("sum(pt!, pt!, pt!)")).shifts.size() == 2);
}

TEST_CASE("catalog graphs are classified as the table says") {
  for (auto const& entry : catalog()) {
    auto cell = table_cell(entry.graph);
    auto c = classify_coarse(entry.graph);
    CHECK_MESSAGE(c.kind == entry.expected, entry.name);
    bool lasso = entry.graph.rank() == std::optional<std::uint64_t>{1} &&
                 cardinality_class(entry.graph.ends()) == Cardinality::finite(1);
    CHECK_MESSAGE(table_label(cell, lasso) == entry.expected, entry.name);
  }
}

TEST_CASE("property: CB-generated infinite-rank graphs are the wedges") {
  Rng rng(71);
  int tested = 0;
  for (int i = 0; i < 600 && tested < 150; ++i) {
    auto e = random_end_space(rng, 3);
    if (cardinality_class(e, EndFilter::marked).is_zero()) continue;
    ++tested;
    GraphDescriptor d(std::nullopt, e);
    auto k = classify_coarse(d).kind;
    bool generated = k == CoarseKind::cb || k == CoarseKind::cb_generated_not_cb;
    CHECK_MESSAGE(generated == wedge_decomposition(d).has_value(), e.to_string());
    if (generated) {
      auto h = h1_rank(d);
      auto l = cardinality_class(e, EndFilter::marked);
      REQUIRE(l.is_finite());
      CHECK(h == Cardinality::finite(l.count() - 1));
      auto w = wedge_decomposition(d)->raw;
      if (w.r > 0 || w.l + w.m > 1) {
        CHECK(build_generating_set(d).shifts.size() == l.count() - 1);
      }
    }
  }
  CHECK(tested >= 100);
}

TEST_CASE("property: finite-rank CB-generation matches finiteness of ends") {
  Rng rng(72);
  for (int i = 0; i < 200; ++i) {
    auto e = random_end_space(rng, 3);
    if (!cardinality_class(e, EndFilter::marked).is_zero()) continue;
    auto rank = static_cast<std::uint64_t>(testing::uniform(rng, 0, 4));
    GraphDescriptor d(rank, e);
    auto k = classify_coarse(d).kind;
    bool generated = k == CoarseKind::cb || k == CoarseKind::cb_generated_not_cb;
    // Trees are CB whatever their ends.
    CHECK_MESSAGE(generated == (rank == 0 || cardinality_class(e).is_finite()),
                  d.to_string());
  }
}

TEST_CASE("property: classification agrees with the independent table labels") {
  Rng rng(73);
  int tested = 0;
  for (int i = 0; i < 300; ++i) {
    auto e = random_end_space(rng, 3);
    std::optional<std::uint64_t> rank;
    if (cardinality_class(e, EndFilter::marked).is_zero()) {
      rank = static_cast<std::uint64_t>(testing::uniform(rng, 0, 3));
    }
    GraphDescriptor d(rank, e);
    bool lasso = rank == std::optional<std::uint64_t>{1} &&
                 cardinality_class(e) == Cardinality::finite(1);
    ++tested;
    CHECK_MESSAGE(classify_coarse(d).kind == table_label(table_cell(d), lasso),
                  d.to_string());
  }
  CHECK(tested == 300);
}

}  // TEST_SUITE
