#include "pmap/classify.hpp"

#include "pmap/errors.hpp"

namespace pmap {

std::string to_string(CoarseKind k) {
  switch (k) {
    case CoarseKind::cb:
      return "CB";
    case CoarseKind::cb_generated_not_cb:
      return "CB-generated, not CB";
    case CoarseKind::locally_cb_not_cb_generated:
      return "locally CB, not CB-generated";
    case CoarseKind::not_locally_cb:
      return "not locally CB";
  }
  return {};
}

CoarseClass classify_coarse(GraphDescriptor const& g) {
  CoarseClass c;
  auto& w = c.witness;
  EndSpaceExpr const& e = g.ends();
  Cardinality ends = cardinality_class(e);
  Cardinality marked = cardinality_class(e, EndFilter::marked);
  bool acc = has_accumulation_point_in_complement_of_marked(e);

  if (!g.infinite_rank()) {
    std::uint64_t r = *g.rank();
    w.push_back("locally CB: finite rank");
    if (r == 0) {
      w.push_back("CB: the graph is a tree (rank zero)");
      c.kind = CoarseKind::cb;
      return c;
    }
    if (r == 1 && ends == Cardinality::finite(1)) {
      w.push_back("CB: rank one with exactly one end");
      c.kind = CoarseKind::cb;
      return c;
    }
    if (!acc) {
      w.push_back("CB-generated: finitely many ends accumulated by loops and "
                  "no accumulation point among the other ends");
      w.push_back("not CB: positive rank and not a rank-one graph with one "
                  "end");
      c.kind = CoarseKind::cb_generated_not_cb;
      return c;
    }
    w.push_back("not CB-generated: an end not accumulated by loops is an "
                "accumulation point of the end space");
    c.kind = CoarseKind::locally_cb_not_cb_generated;
    return c;
  }

  if (!marked.is_finite()) {
    w.push_back("not locally CB: infinitely many ends accumulated by loops");
    c.kind = CoarseKind::not_locally_cb;
    return c;
  }
  if (infinite_tree_part_exceeds_compact_open(e)) {
    w.push_back("not locally CB: no compact open set of ends outside the "
                "loop-accumulated ones leaves only isolated ends outside it");
    c.kind = CoarseKind::not_locally_cb;
    return c;
  }
  w.push_back("locally CB: finitely many ends accumulated by loops and the "
              "non-isolated other ends fit in a compact open set");
  if (acc) {
    w.push_back("not CB-generated: an end not accumulated by loops is an "
                "accumulation point of the end space");
    c.kind = CoarseKind::locally_cb_not_cb_generated;
    return c;
  }
  if (marked.count() == 1) {
    w.push_back("CB: a monster graph (one end accumulated by loops) with "
                "finitely many rays attached");
    c.kind = CoarseKind::cb;
    return c;
  }
  w.push_back("CB-generated: finitely many ends accumulated by loops and no "
              "accumulation point among the other ends");
  w.push_back("not CB: more than one end accumulated by loops");
  c.kind = CoarseKind::cb_generated_not_cb;
  return c;
}

std::string to_string(RankColumn c) {
  switch (c) {
    case RankColumn::r_zero:
      return "r=0";
    case RankColumn::r_finite:
      return "r in [1,inf)";
    case RankColumn::n_one:
      return "n=1";
    case RankColumn::n_finite:
      return "n in [2,inf)";
    case RankColumn::n_infinite:
      return "n=inf";
  }
  return {};
}

std::string TableCell::to_string() const {
  return pmap::to_string(column) + ", " + pmap::to_string(row);
}

TableCell table_cell(GraphDescriptor const& g) {
  if (auto sf = t_class_from_standard_form(g)) {
    if (!g.infinite_rank() && *sf == TClass::infinite) {
      throw NACell("finite rank with infinitely many trees carrying infinitely "
                   "many ends is not locally finite");
    }
    auto issues = standard_form_issues(g);
    if (!issues.empty()) throw DomainError(issues.front());
  }
  TableCell cell{RankColumn::r_zero, t_class(g)};
  if (!g.infinite_rank()) {
    cell.column = *g.rank() == 0 ? RankColumn::r_zero : RankColumn::r_finite;
    return cell;
  }
  Cardinality n = cardinality_class(g.ends(), EndFilter::marked);
  if (!n.is_finite()) {
    cell.column = RankColumn::n_infinite;
  } else {
    cell.column = n.count() == 1 ? RankColumn::n_one : RankColumn::n_finite;
  }
  return cell;
}

Cardinality h1_rank(GraphDescriptor const& g) {
  Cardinality n = cardinality_class(g.ends(), EndFilter::marked);
  if (!n.is_finite()) return Cardinality::countable();
  return Cardinality::finite(n.count() <= 1 ? 0 : n.count() - 1);
}

std::string LoopLabel::to_string() const {
  return std::string(1, family) + "_{" + std::to_string(summand) + "," +
         std::to_string(index) + "}";
}

GeneratingSet build_generating_set(WedgeCounts const& c) {
  if (c.l + c.m == 0) {
    throw NotCBGenerated("no end accumulated by loops: not an infinite-rank "
                         "wedge");
  }
  if (c.r == 0 && c.l + c.m == 1) {
    throw NotCBGenerated("a bare monster graph is CB; no generating set is "
                         "built for it");
  }
  GeneratingSet s;
  s.wedge = c;
  LoopLabel first = c.l > 0 ? LoopLabel{'a', 1, 1} : LoopLabel{'b', 1, 1};
  for (std::uint64_t i = 1; i <= c.r; ++i) s.word_maps.push_back({first, i});
  std::vector<LoopLabel> monsters;
  for (std::uint64_t i = 1; i <= c.l; ++i) monsters.push_back({'a', i, 1});
  for (std::uint64_t i = 1; i <= c.m; ++i) monsters.push_back({'b', i, 1});
  for (std::size_t i = 0; i < monsters.size(); ++i) {
    for (std::size_t j = i + 1; j < monsters.size(); ++j) {
      s.swaps.push_back({monsters[i], monsters[j]});
    }
  }
  for (std::uint64_t i = 1; i + 1 <= c.l + c.m; ++i) s.shifts.push_back(i);
  return s;
}

GeneratingSet build_generating_set(GraphDescriptor const& g) {
  if (!g.infinite_rank()) {
    throw NotCBGenerated("finite rank: the generating set construction needs "
                         "infinite rank");
  }
  auto k = classify_coarse(g).kind;
  if (k != CoarseKind::cb && k != CoarseKind::cb_generated_not_cb) {
    throw NotCBGenerated("pure mapping class group is " + to_string(k));
  }
  auto d = wedge_decomposition(g);
  if (!d) throw NotCBGenerated("graph is not a wedge of rays and monsters");
  return build_generating_set(d->raw);
}

}  // namespace pmap
