#include "pmap/flux.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <variant>

#include "pmap/errors.hpp"

namespace pmap {

FluxContext::FluxContext(GraphDescriptor g, std::optional<unsigned> depth)
    : graph_(std::move(g)), marked_(graph_.marked_ends()) {
  if (!marked_) return;
  unsigned d;
  if (depth) {
    d = *depth;
  } else if (cardinality_class(*marked_).is_finite()) {
    d = separating_depth(*marked_);
  } else {
    throw UsageError("infinitely many ends accumulated by loops: a basis "
                     "depth is required");
  }
  basis_.emplace(*marked_, d);
  for (auto const& a : basis_->addresses()) {
    ends_plus_.push_back(rightmost_point(*marked_, a));
    ends_minus_.push_back(
        rightmost_point(*marked_, a.substr(0, a.size() - 1)));
  }
}

BasisFamily const& FluxContext::basis() const {
  if (!basis_) throw UsageError("finite rank graph has no flux basis");
  return *basis_;
}

EndPoint const& FluxContext::ladder_end(int i, bool positive) const {
  if (i < 1 || i > ladders()) {
    throw UsageError("no ladder " + std::to_string(i));
  }
  return positive ? ends_plus_[i - 1] : ends_minus_[i - 1];
}

Clopen FluxContext::basis_clopen(int i) const {
  if (i < 1 || i > ladders()) {
    throw UsageError("no basis element A" + std::to_string(i));
  }
  return Clopen(*marked_, {basis()[static_cast<std::size_t>(i - 1)]});
}

Clopen FluxContext::parse_clopen(std::string_view text) const {
  BasisFamily const& b = basis();
  return clopen_from_terms(*marked_, parse_cylinder_terms(text, &b));
}

namespace {

void require_flux_graph(FluxContext const& ctx, Clopen const* c) {
  if (ctx.ladders() == 0) {
    throw UsageError("flux needs at least two ends accumulated by loops");
  }
  if (c && !(c->expr() == *ctx.marked())) {
    throw UsageError("clopen does not live on the loop-accumulated ends");
  }
}

}  // namespace

std::int64_t flux_fast(FluxContext const& ctx, MappingClassWord const& w,
                       Clopen const& c) {
  require_flux_graph(ctx, &c);
  validate_word(w, ctx.ladders());
  LocallyConstantFn f = c.indicator(ctx.basis());
  std::int64_t total = 0;
  for (auto const& g : w.letters) {
    if (auto const* s = std::get_if<LoopShift>(&g)) {
      total += s->exponent *
               f.coefficient(ctx.basis()[static_cast<std::size_t>(s->ladder - 1)]);
    }
  }
  return total;
}

std::int64_t displacement_bound(MappingClassWord const& w) {
  std::int64_t shifts = 0, radius = 0;
  auto widen = [&](Gen g) { radius = std::max(radius, g.pos < 0 ? -g.pos : g.pos); };
  for (auto const& g : w.letters) {
    if (auto const* s = std::get_if<LoopShift>(&g)) {
      shifts += s->exponent < 0 ? -s->exponent : s->exponent;
    } else if (std::holds_alternative<LoopSwap>(g) ||
               std::holds_alternative<CompactSubst>(g)) {
      WindowedSubstitution f = semantics(g);
      for (auto const& [x, img] : f.explicit_images()) {
        widen(x);
        for (auto const& l : img.letters()) widen(l.gen);
      }
    }
  }
  return shifts + radius + 1;
}

// ----------------------------------------------------------------- oracle

namespace {

std::uint64_t zigzag(std::int64_t p) {
  return p >= 0 ? 2 * static_cast<std::uint64_t>(p)
                : 2 * static_cast<std::uint64_t>(-p) - 1;
}

std::int64_t unzigzag(std::uint64_t z) {
  return z % 2 == 0 ? static_cast<std::int64_t>(z / 2)
                    : -static_cast<std::int64_t>((z + 1) / 2);
}

// Exhaustion of the ladder graph cut along the clopen. Half-ladders on the
// clopen's side get levels 1, 2, ... moving away from the cut; the others get
// 0, -1, ... ; ladder 0 sits on the far side.
class Levels {
 public:
  Levels(FluxContext const& ctx, Clopen const& c) {
    for (int i = 1; i <= ctx.ladders(); ++i) {
      plus_.push_back(c.contains(ctx.ladder_end(i, true)));
      minus_.push_back(c.contains(ctx.ladder_end(i, false)));
    }
  }

  int ladders() const { return static_cast<int>(plus_.size()); }

  std::int64_t level(Gen g) const {
    if (g.ladder == 0) return -static_cast<std::int64_t>(zigzag(g.pos));
    bool pos_half = g.pos >= 0;
    std::int64_t t = pos_half ? g.pos : -g.pos - 1;
    bool inside = pos_half ? plus_[g.ladder - 1] : minus_[g.ladder - 1];
    return inside ? t + 1 : -t;
  }

  // Generators with level in (lo, hi].
  std::vector<Gen> between(std::int64_t lo, std::int64_t hi) const {
    std::vector<Gen> out;
    if (hi <= lo) return out;
    // ladder 0: level -z
    for (std::int64_t z = std::max<std::int64_t>(0, -hi); z <= -lo - 1; ++z) {
      out.push_back(Gen{0, unzigzag(static_cast<std::uint64_t>(z))});
    }
    for (int j = 1; j <= ladders(); ++j) {
      for (bool pos_half : {true, false}) {
        bool inside = pos_half ? plus_[j - 1] : minus_[j - 1];
        std::int64_t tlo, thi;
        if (inside) {  // level t+1
          tlo = std::max<std::int64_t>(0, lo);
          thi = hi - 1;
        } else {  // level -t
          tlo = std::max<std::int64_t>(0, -hi);
          thi = -lo - 1;
        }
        for (std::int64_t t = tlo; t <= thi; ++t) {
          out.push_back(Gen{j, pos_half ? t : -t - 1});
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<bool> plus_;
  std::vector<bool> minus_;
};

std::int64_t max_shift(WindowedSubstitution const& f) {
  std::int64_t d = 0;
  for (auto const& [l, k] : f.shifts()) d = std::max(d, k < 0 ? -k : k);
  return d;
}

std::int64_t lowest_explicit_level(Levels const& lv,
                                   WindowedSubstitution const& f) {
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  for (auto const& [x, img] : f.explicit_images()) {
    lo = std::min(lo, lv.level(x));
    for (auto const& l : img.letters()) lo = std::min(lo, lv.level(l.gen));
  }
  return lo;
}

struct CorankRun {
  std::int64_t corank;
  std::int64_t top;  // highest level used by an image letter
};

// cork(A_m, f(A_n)) with the far region handled by f's tail shift.
CorankRun windowed_corank(Levels const& lv, WindowedSubstitution const& f,
                          OracleWindow const& win, std::int64_t d,
                          bool check_top) {
  auto far_image = [&](Gen y) {
    Gen pre{y.ladder, y.pos - f.shift_of(y.ladder)};
    return lv.level(pre) <= win.floor &&
           !f.explicit_images().count(pre);
  };
  std::vector<Gen> ambient;
  for (Gen y : lv.between(win.floor - d, win.m)) {
    if (!far_image(y)) ambient.push_back(y);
  }
  std::set<Gen> amb(ambient.begin(), ambient.end());
  std::vector<FreeWord> images;
  std::int64_t top = std::numeric_limits<std::int64_t>::min();
  for (Gen x : lv.between(win.floor, win.n)) {
    std::vector<Letter> kept;
    FreeWord img = f.image(x);
    for (auto const& l : img.letters()) {
      if (far_image(l.gen)) continue;
      top = std::max(top, lv.level(l.gen));
      if (check_top && !amb.count(l.gen)) {
        throw AdmissibilityFailure(
            "image letter " + l.gen.to_string() + " at level " +
            std::to_string(lv.level(l.gen)) + " leaves the window (" +
            std::to_string(win.floor - d) + ", " + std::to_string(win.m) + "]");
      }
      kept.push_back(l);
    }
    images.emplace_back(std::move(kept));
  }
  if (!check_top) return {0, top};
  CorankResult r = corank_of_free_factor(ambient, images);
  if (!r.certified) throw AdmissibilityFailure(r.diagnostic);
  return {r.corank, top};
}

}  // namespace

OracleWindow choose_window(FluxContext const& ctx, MappingClassWord const& w,
                           Clopen const& c, std::int64_t n) {
  require_flux_graph(ctx, &c);
  validate_word(w, ctx.ladders());
  Levels lv(ctx, c);
  WindowedSubstitution f = compose_word(w).core;
  std::int64_t d = max_shift(f) + 1;
  OracleWindow win;
  win.n = n;
  win.floor = std::min({n, lowest_explicit_level(lv, f), std::int64_t{0}}) -
              d - 1;
  win.m = n + displacement_bound(w);
  CorankRun probe = windowed_corank(lv, f, win, d, false);
  win.m = std::max(win.m, probe.top);
  return win;
}

OracleResult flux_oracle(FluxContext const& ctx, MappingClassWord const& w,
                         Clopen const& c, std::optional<OracleWindow> window) {
  require_flux_graph(ctx, &c);
  validate_word(w, ctx.ladders());
  Levels lv(ctx, c);
  WindowedSubstitution f = compose_word(w).core;
  std::int64_t d = max_shift(f) + 1;
  OracleWindow win = window ? *window : choose_window(ctx, w, c);
  if (win.n <= win.floor || win.m < win.n) {
    throw AdmissibilityFailure("window needs floor < n <= m");
  }
  if (win.floor > -d - 1 || win.floor >= lowest_explicit_level(lv, f)) {
    throw AdmissibilityFailure("window floor " + std::to_string(win.floor) +
                               " is not below the moved loops");
  }
  OracleResult r;
  r.window = win;
  r.cork_before =
      windowed_corank(lv, WindowedSubstitution::identity(), win, d, true)
          .corank;
  r.cork_after = windowed_corank(lv, f, win, d, true).corank;
  r.value = r.cork_before - r.cork_after;
  return r;
}

OracleResult flux_oracle(FluxContext const& ctx, MappingClassWord const& w,
                         int basis_index, std::optional<OracleWindow> window) {
  return flux_oracle(ctx, w, ctx.basis_clopen(basis_index), window);
}

// ------------------------------------------------------------- projection

FluxVector flux_projection(FluxContext const& ctx, MappingClassWord const& w) {
  FluxVector v;
  if (ctx.ladders() == 0) return v;
  for (int i = 1; i <= ctx.ladders(); ++i) {
    v.push_back(flux_fast(ctx, w, ctx.basis_clopen(i)));
  }
  return v;
}

MappingClassWord section(FluxContext const& ctx, FluxVector const& v) {
  if (static_cast<int>(v.size()) > ctx.ladders()) {
    throw UsageError("flux vector longer than the basis");
  }
  MappingClassWord w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      w.letters.push_back(LoopShift{static_cast<int>(i + 1), v[i]});
    }
  }
  return w;
}

SplitResult split_decompose(FluxContext const& ctx, MappingClassWord const& w) {
  SplitResult r;
  r.flux = flux_projection(ctx, w);
  r.residual = w * section(ctx, r.flux).inverse();
  for (auto x : flux_projection(ctx, r.residual)) {
    if (x != 0) throw Error("split residual has nonzero flux");
  }
  return r;
}

AlgebraCheck flux_of_complement(FluxContext const& ctx,
                                MappingClassWord const& w, Clopen const& c) {
  return {flux_fast(ctx, w, c.complement()), -flux_fast(ctx, w, c)};
}

AlgebraCheck flux_of_disjoint_union(FluxContext const& ctx,
                                    MappingClassWord const& w, Clopen const& a,
                                    Clopen const& b) {
  if (!a.disjoint_from(b)) throw UsageError("clopens are not disjoint");
  return {flux_fast(ctx, w, a.unite(b)),
          flux_fast(ctx, w, a) + flux_fast(ctx, w, b)};
}

AlgebraCheck flux_of_difference(FluxContext const& ctx,
                                MappingClassWord const& w, Clopen const& b,
                                Clopen const& bp) {
  if (!bp.subset_of(b)) throw UsageError("second clopen is not a subset");
  return {flux_fast(ctx, w, b.minus(bp)),
          flux_fast(ctx, w, b) - flux_fast(ctx, w, bp)};
}

}  // namespace pmap
