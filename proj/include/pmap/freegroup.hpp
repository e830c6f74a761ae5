#pragma once

// Free groups on loop generators, tail-shift substitutions and Stallings
// folding.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmap {

// Loop generator: ladder 0 holds the plain generators x_i, ladder l >= 1 the
// generators a_{l,p} of the l-th bi-infinite ladder.
struct Gen {
  int ladder = 0;
  std::int64_t pos = 0;
  friend auto operator<=>(Gen const&, Gen const&) = default;
  std::string to_string() const;  // "x3", "a2.-1"
};

struct Letter {
  Gen gen;
  int sign = 1;  // +1 or -1
  Letter inverse() const { return {gen, -sign}; }
  friend auto operator<=>(Letter const&, Letter const&) = default;
};

class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(std::vector<Letter> letters);  // reduces
  static FreeWord generator(Gen g, int sign = 1) {
    return FreeWord({Letter{g, sign}});
  }
  static FreeWord x(std::int64_t i, int sign = 1) {
    return generator(Gen{0, i}, sign);
  }

  std::vector<Letter> const& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  FreeWord inverse() const;
  FreeWord operator*(FreeWord const& o) const;
  FreeWord power(std::int64_t k) const;

  // "x3 X2 a1.0"; uppercase is the inverse; "1" for the identity.
  std::string to_string() const;

  friend auto operator<=>(FreeWord const&, FreeWord const&) = default;

 private:
  std::vector<Letter> letters_;
};

// Tokens x<i>, X<i>, a<l>.<p>, A<l>.<p>, separated by whitespace; "1" or ""
// is the identity.
FreeWord parse_word(std::string_view text);

bool commute(FreeWord const& u, FreeWord const& v);

// Endomorphism sending generators outside a finite window to the same
// ladder shifted by a per-ladder amount.
class WindowedSubstitution {
 public:
  WindowedSubstitution() = default;
  static WindowedSubstitution identity() { return {}; }
  static WindowedSubstitution shift(int ladder, std::int64_t k);

  void set_image(Gen g, FreeWord w);
  void set_shift(int ladder, std::int64_t k);

  std::int64_t shift_of(int ladder) const;
  std::map<int, std::int64_t> const& shifts() const { return shifts_; }
  std::map<Gen, FreeWord> const& explicit_images() const { return images_; }

  FreeWord image(Gen g) const;
  FreeWord apply(FreeWord const& w) const;

  friend bool operator==(WindowedSubstitution const& a,
                         WindowedSubstitution const& b) {
    return a.shifts_ == b.shifts_ && a.images_ == b.images_;
  }

  std::string to_string() const;

 private:
  void normalize();
  std::map<Gen, FreeWord> images_;
  std::map<int, std::int64_t> shifts_;

  friend WindowedSubstitution compose(WindowedSubstitution const& f,
                                      WindowedSubstitution const& g);
};

// f after g.
WindowedSubstitution compose(WindowedSubstitution const& f,
                             WindowedSubstitution const& g);

// Folded labelled graph of a finitely generated subgroup, base vertex 0.
class FoldedGraph {
 public:
  struct Edge {
    int from;
    Gen label;
    int to;
    friend auto operator<=>(Edge const&, Edge const&) = default;
  };

  int vertex_count() const { return vertices_; }
  std::vector<Edge> const& edges() const { return edges_; }
  std::int64_t rank() const {
    return static_cast<std::int64_t>(edges_.size()) - vertices_ + 1;
  }

  bool contains(FreeWord const& w) const;
  // Free basis read off a spanning tree.
  std::vector<FreeWord> basis() const;
  // Relabelled by breadth-first order from the base; equal iff isomorphic.
  std::vector<Edge> canonical_edges() const;

 private:
  friend FoldedGraph fold(std::vector<FreeWord> const& words);
  friend FoldedGraph fold_in_order(std::vector<FreeWord> const& words,
                                   std::vector<std::size_t> const& order);
  int vertices_ = 1;
  std::vector<Edge> edges_;
  std::map<std::pair<int, Gen>, int> out_;
  std::map<std::pair<int, Gen>, int> in_;
};

FoldedGraph fold(std::vector<FreeWord> const& words);
// Folds the flower edges in the given order of edge identifications.
FoldedGraph fold_in_order(std::vector<FreeWord> const& words,
                          std::vector<std::size_t> const& order);

std::int64_t subgroup_rank(std::vector<FreeWord> const& words);
bool subgroup_contains(std::vector<FreeWord> const& words, FreeWord const& w);

// Nonzero invariant factors of an integer matrix.
std::vector<std::int64_t> smith_invariant_factors(
    std::vector<std::vector<std::int64_t>> m);

struct CorankResult {
  std::int64_t corank = 0;
  std::int64_t subgroup_rank = 0;
  bool certified = false;
  std::vector<std::int64_t> invariant_factors;
  std::string diagnostic;
};

// Corank of the subgroup generated by `words` inside the free group on
// `ambient`. certified is false when the abelianized inclusion is not a
// direct summand (so the subgroup is not a free factor).
CorankResult corank_of_free_factor(std::vector<Gen> const& ambient,
                                   std::vector<FreeWord> const& words);

}  // namespace pmap
