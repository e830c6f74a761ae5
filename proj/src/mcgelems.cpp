#include "pmap/mcgelems.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pmap/errors.hpp"

namespace pmap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string loop_ref(Gen g) {
  return std::to_string(g.ladder) + "." + std::to_string(g.pos);
}

std::string gen_set(std::vector<Gen> const& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += loop_ref(v[i]);
  }
  return s + "}";
}

}  // namespace

Generator inverse(Generator const& g) {
  return std::visit(
      overloaded{
          [](LoopSwap const& s) -> Generator { return s; },
          [](WordMap const& w) -> Generator {
            return WordMap{w.word.inverse(), w.interval};
          },
          [](LoopShift const& s) -> Generator {
            return LoopShift{s.ladder, -s.exponent};
          },
          [](CompactSubst const& c) -> Generator {
            return CompactSubst{c.backward, c.forward, c.label + "^-1"};
          },
      },
      g);
}

std::string to_string(Generator const& g) {
  return std::visit(
      overloaded{
          [](LoopSwap const& s) {
            return "swap(" + gen_set(s.a) + "," + gen_set(s.b) + ")";
          },
          [](WordMap const& w) {
            return "wm(" + w.word.to_string() + ", I" +
                   std::to_string(w.interval) + ")";
          },
          [](LoopShift const& s) {
            std::string r = "shift(" + std::to_string(s.ladder) + ")";
            if (s.exponent != 1) r += "^" + std::to_string(s.exponent);
            return r;
          },
          [](CompactSubst const& c) { return c.label; },
      },
      g);
}

WindowedSubstitution semantics(Generator const& g) {
  return std::visit(
      overloaded{
          [](LoopSwap const& s) {
            if (s.a.size() != s.b.size()) {
              throw UsageError("loop swap needs sets of equal size");
            }
            auto a = s.a, b = s.b;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            WindowedSubstitution r;
            for (std::size_t k = 0; k < a.size(); ++k) {
              r.set_image(a[k], FreeWord::generator(b[k]));
              r.set_image(b[k], FreeWord::generator(a[k]));
            }
            return r;
          },
          [](WordMap const&) { return WindowedSubstitution::identity(); },
          [](LoopShift const& s) {
            return WindowedSubstitution::shift(s.ladder, s.exponent);
          },
          [](CompactSubst const& c) { return c.forward; },
      },
      g);
}

MappingClassWord MappingClassWord::inverse() const {
  MappingClassWord r;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    r.letters.push_back(pmap::inverse(*it));
  }
  return r;
}

MappingClassWord MappingClassWord::operator*(MappingClassWord const& o) const {
  MappingClassWord r = *this;
  r.letters.insert(r.letters.end(), o.letters.begin(), o.letters.end());
  return r;
}

std::string MappingClassWord::to_string() const {
  if (letters.empty()) return "id";
  std::string s;
  for (auto const& g : letters) {
    if (!s.empty()) s += ' ';
    s += pmap::to_string(g);
  }
  return s;
}

std::string MappingClass::to_string() const {
  std::string s = "core " + core.to_string() + ", record {";
  bool first = true;
  for (auto const& [i, w] : record) {
    if (!first) s += ", ";
    first = false;
    s += "I" + std::to_string(i) + ": " + w.to_string();
  }
  return s + "}";
}

MappingClass compose_word(MappingClassWord const& w) {
  MappingClass res;
  for (auto const& g : w.letters) {
    // res after g: conjugating g's record by res's core action
    if (auto const* wm = std::get_if<WordMap>(&g)) {
      FreeWord& slot = res.record[wm->interval];
      slot = slot * res.core.apply(wm->word);
      if (slot.is_identity()) res.record.erase(wm->interval);
    }
    res.core = compose(res.core, semantics(g));
  }
  return res;
}

void validate_word(MappingClassWord const& w, int ladders) {
  auto check_loop = [&](Gen g) {
    if (g.ladder < 0 || g.ladder > ladders) {
      throw UsageError("loop " + loop_ref(g) + " is not on a ladder of this "
                       "graph (ladders 0.." + std::to_string(ladders) + ")");
    }
  };
  for (auto const& g : w.letters) {
    std::visit(
        overloaded{
            [&](LoopSwap const& s) {
              if (s.a.empty() || s.a.size() != s.b.size()) {
                throw UsageError("loop swap needs nonempty sets of equal size");
              }
              std::set<Gen> seen;
              for (auto const& v : {s.a, s.b}) {
                for (Gen x : v) {
                  check_loop(x);
                  if (!seen.insert(x).second) {
                    throw UsageError("loop swap sets must be disjoint");
                  }
                }
              }
            },
            [&](WordMap const& m) {
              if (m.interval < 0) throw UsageError("interval id must be >= 0");
              for (auto const& l : m.word.letters()) check_loop(l.gen);
            },
            [&](LoopShift const& s) {
              if (s.ladder < 1 || s.ladder > ladders) {
                throw UsageError("shift(" + std::to_string(s.ladder) +
                                 ") names no ladder of this graph");
              }
            },
            [&](CompactSubst const& c) {
              for (auto const& [x, img] : c.forward.explicit_images()) {
                check_loop(x);
                for (auto const& l : img.letters()) check_loop(l.gen);
              }
              if (!c.forward.shifts().empty()) {
                throw UsageError("compact substitution must not shift ladders");
              }
            },
        },
        g);
  }
}

CompactSubst nielsen_on(NielsenKind kind, Gen gi, Gen gj) {
  if (kind != NielsenKind::tau && gi == gj) {
    throw UsageError("Nielsen move needs two distinct loops");
  }
  WindowedSubstitution f, b;
  FreeWord xi = FreeWord::generator(gi), xj = FreeWord::generator(gj);
  std::string label;
  switch (kind) {
    case NielsenKind::tau:
      f.set_image(gi, xi.inverse());
      b = f;
      label = "flip(" + loop_ref(gi) + ")";
      break;
    case NielsenKind::sigma:
      f.set_image(gi, xj);
      f.set_image(gj, xi);
      b = f;
      label = "transp(" + loop_ref(gi) + "," + loop_ref(gj) + ")";
      break;
    case NielsenKind::lambda:
      f.set_image(gi, xj * xi);
      b.set_image(gi, xj.inverse() * xi);
      label = "lnielsen(" + loop_ref(gi) + "," + loop_ref(gj) + ")";
      break;
    case NielsenKind::rho:
      f.set_image(gi, xi * xj);
      b.set_image(gi, xi * xj.inverse());
      label = "rnielsen(" + loop_ref(gi) + "," + loop_ref(gj) + ")";
      break;
  }
  return {f, b, label};
}

CompactSubst nielsen_generator(NielsenKind kind, int i, int j, int n) {
  if (i < 1 || i > n) throw UsageError("Nielsen index i out of range");
  if (kind != NielsenKind::tau && (j < 1 || j > n || j == i)) {
    throw UsageError("Nielsen index j out of range or equal to i");
  }
  return nielsen_on(kind, Gen{0, i}, Gen{0, kind == NielsenKind::tau ? i : j});
}

std::vector<CompactSubst> afv_set_on(std::vector<Gen> const& loops) {
  std::vector<CompactSubst> out;
  std::size_t n = loops.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(nielsen_on(NielsenKind::tau, loops[i], loops[i]));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.push_back(nielsen_on(NielsenKind::sigma, loops[i], loops[i + 1]));
  }
  if (n >= 2) {
    auto t2 = nielsen_on(NielsenKind::tau, loops[1], loops[1]);
    auto l12 = nielsen_on(NielsenKind::lambda, loops[0], loops[1]);
    out.push_back({compose(t2.forward, l12.forward),
                   compose(l12.backward, t2.backward),
                   t2.label + "*" + l12.label});
  }
  return out;
}

std::vector<CompactSubst> afv_set(int n) {
  if (n < 1) throw UsageError("afv_set needs n >= 1");
  std::vector<Gen> loops;
  for (int i = 1; i <= n; ++i) loops.push_back(Gen{0, i});
  return afv_set_on(loops);
}

// ---------------------------------------------------------------- parsing

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  MappingClassWord parse() {
    MappingClassWord w;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      std::size_t col = pos_;
      std::string name;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
        name += s_[pos_++];
      }
      if (name.empty()) fail("expected a generator name");
      if (name == "id") continue;
      expect('(');
      Generator g = body(name, col);
      expect(')');
      std::int64_t k = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        k = integer();
      }
      if (auto* sh = std::get_if<LoopShift>(&g)) {
        sh->exponent *= k;
        if (sh->exponent != 0) w.letters.push_back(g);
        continue;
      }
      Generator use = k < 0 ? inverse(g) : g;
      for (std::int64_t r = 0; r < (k < 0 ? -k : k); ++r) w.letters.push_back(use);
    }
    return w;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::string const& m) const {
    throw ParseError(m, 1, pos_ + 1);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::int64_t integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
    }
    if (pos_ == start) fail("expected a number");
    return neg ? -v : v;
  }
  Gen loop() {
    std::int64_t l = integer();
    if (l < 0) fail("ladder index must be nonnegative");
    expect('.');
    return Gen{static_cast<int>(l), integer()};
  }
  std::vector<Gen> loop_set() {
    expect('{');
    std::vector<Gen> v{loop()};
    skip();
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      v.push_back(loop());
      skip();
    }
    expect('}');
    return v;
  }

  Generator body(std::string const& name, std::size_t col) {
    if (name == "shift") {
      std::int64_t i = integer();
      return LoopShift{static_cast<int>(i), 1};
    }
    if (name == "swap") {
      auto a = loop_set();
      expect(',');
      auto b = loop_set();
      return LoopSwap{a, b};
    }
    if (name == "wm") {
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',') ++pos_;
      if (pos_ == s_.size()) fail("expected ',' in wm(...)");
      FreeWord w;
      try {
        w = parse_word(s_.substr(start, pos_ - start));
      } catch (ParseError const& e) {
        throw ParseError(e.message(), 1, start + e.column());
      }
      ++pos_;
      skip();
      if (pos_ >= s_.size() || s_[pos_] != 'I') fail("expected interval I<k>");
      ++pos_;
      return WordMap{w, static_cast<int>(integer())};
    }
    if (name == "flip") {
      Gen g = loop();
      return nielsen_on(NielsenKind::tau, g, g);
    }
    NielsenKind kind;
    if (name == "transp") {
      kind = NielsenKind::sigma;
    } else if (name == "lnielsen") {
      kind = NielsenKind::lambda;
    } else if (name == "rnielsen") {
      kind = NielsenKind::rho;
    } else {
      throw ParseError("unknown generator '" + name + "'", 1, col + 1);
    }
    Gen a = loop();
    expect(',');
    Gen b = loop();
    if (a == b) fail("Nielsen move needs two distinct loops");
    return nielsen_on(kind, a, b);
  }
};

}  // namespace

MappingClassWord parse_mapping_class_word(std::string_view text) {
  return WordParser(text).parse();
}

}  // namespace pmap
