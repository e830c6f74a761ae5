#pragma once

// Shared helpers for the unit tests.

#include <functional>
#include <random>
#include <vector>

#include "pmap/endspace.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Any constructor-buildable expression, valid or not.
inline pmap::EndSpaceExpr raw_end_space(Rng& rng, int depth) {
  using pmap::EndSpaceExpr;
  using pmap::Mark;
  Mark m = uniform(rng, 0, 1) ? Mark::loops : Mark::plain;
  auto pick = depth <= 0 ? uniform(rng, 0, 1) : uniform(rng, 0, 3);
  switch (pick) {
    case 0:
      return EndSpaceExpr::pt(m);
    case 1:
      return EndSpaceExpr::cantor(m);
    case 2: {
      std::vector<EndSpaceExpr> parts;
      auto k = uniform(rng, 1, 3);
      for (std::int64_t i = 0; i < k; ++i) {
        parts.push_back(raw_end_space(rng, depth - 1));
      }
      return EndSpaceExpr::sum(parts);
    }
    default:
      return EndSpaceExpr::seq(raw_end_space(rng, depth - 1), m);
  }
}

inline std::vector<pmap::Address> words_of_width(unsigned w) {
  std::vector<pmap::Address> out{""};
  for (unsigned k = 0; k < w; ++k) {
    std::vector<pmap::Address> next;
    for (auto const& a : out) {
      next.push_back(a + '0');
      next.push_back(a + '1');
    }
    out = next;
  }
  return out;
}

// Nonempty cylinders of E up to the given width.
inline std::vector<pmap::Address> nonempty_cylinders(
    pmap::EndSpaceExpr const& e, unsigned max_width) {
  std::vector<pmap::Address> out;
  for (unsigned w = 0; w <= max_width; ++w) {
    for (auto const& a : words_of_width(w)) {
      if (!pmap::is_empty_cylinder(e, a)) out.push_back(a);
    }
  }
  return out;
}

// Points of E spread over its nonempty cylinders of the given width.
inline std::vector<pmap::EndPoint> sample_points(pmap::EndSpaceExpr const& e,
                                                 unsigned width) {
  std::vector<pmap::EndPoint> out;
  for (auto const& a : words_of_width(width)) {
    if (pmap::is_empty_cylinder(e, a)) continue;
    out.push_back(pmap::leftmost_point(e, a));
    out.push_back(pmap::rightmost_point(e, a));
  }
  return out;
}

}  // namespace testing
