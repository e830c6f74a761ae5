// Command-line front end. Exit status: 0 success, 1 computation error,
// 2 usage or parse error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pmap/algprops.hpp"
#include "pmap/cech.hpp"
#include "pmap/classify.hpp"
#include "pmap/endspace.hpp"
#include "pmap/errors.hpp"
#include "pmap/flux.hpp"
#include "pmap/graphmodel.hpp"
#include "pmap/mcgelems.hpp"
#include "pmap/selftest.hpp"

namespace {

using namespace pmap;

// Text report plus one machine-readable "#RESULT" line.
class Report {
 public:
  Report(std::string command, bool machine)
      : command_(std::move(command)), machine_(machine) {}

  void line(std::string const& s) { text_ << s << '\n'; }
  void input(std::string const& s) { inputs_ += s + '\n'; }
  void field(std::string const& key, std::string const& value) {
    fields_.push_back({key, value});
  }

  void print(std::ostream& os) const {
    if (!machine_) os << text_.str();
    os << "#RESULT cmd=" << command_ << " input=" << digest();
    for (auto const& [k, v] : fields_) os << ' ' << k << '=' << quote(v);
    os << '\n';
  }

 private:
  // FNV-1a over the canonical inputs.
  std::string digest() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : inputs_) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    std::ostringstream s;
    s << std::hex << h;
    return s.str();
  }

  static std::string quote(std::string const& v) {
    if (!v.empty() && v.find_first_of(" \"=") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + '"';
  }

  std::string command_;
  bool machine_;
  std::ostringstream text_;
  std::string inputs_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct Options {
  std::string positional;
  std::string graph;
  std::string word;
  std::string clopen;
  std::string ends;
  std::optional<unsigned> depth;
  std::string format = "text";
  std::uint64_t seed = 20240601;
};

std::string graph_path(Options const& o) {
  if (!o.positional.empty() && !o.graph.empty() && o.positional != o.graph) {
    throw UsageError("give the graph either positionally or with --graph");
  }
  std::string p = o.graph.empty() ? o.positional : o.graph;
  if (p.empty()) throw UsageError("a graph descriptor file is required");
  return p;
}

GraphDescriptor load(Options const& o, Report& rep) {
  auto g = load_graph_descriptor(graph_path(o));
  rep.input(g.to_string());
  rep.line("graph: rank " +
           (g.rank() ? std::to_string(*g.rank()) : std::string("inf")) +
           ", ends " + g.ends().to_string());
  return g;
}

std::string rank_text(GraphDescriptor const& g) {
  return g.rank() ? std::to_string(*g.rank()) : "inf";
}

int cmd_classify(Options const& o, Report& rep) {
  auto g = load(o, rep);
  auto c = classify_coarse(g);
  auto triple = characteristic_triple(g);
  rep.line("triple: " + triple.to_string());
  rep.line("class: " + to_string(c.kind));
  std::string cell;
  try {
    cell = table_cell(g).to_string();
  } catch (NACell const& e) {
    cell = "N/A";
    rep.line("cell: N/A (" + std::string(e.what()) + ")");
  }
  if (cell != "N/A") rep.line("cell: " + cell);
  for (auto const& w : c.witness) rep.line("by: " + w);
  if (auto d = wedge_decomposition(g)) {
    rep.line("wedge: " + d->canonical.to_string());
  }
  rep.field("class", to_string(c.kind));
  rep.field("cell", cell);
  rep.field("triple", triple.to_string());
  return 0;
}

int cmd_h1(Options const& o, Report& rep) {
  auto g = load(o, rep);
  auto n = cardinality_class(g.ends(), EndFilter::marked);
  auto h = h1_rank(g);
  rep.line("ends accumulated by loops: " + n.to_string());
  rep.line("rank of first integral cohomology: " + h.to_string());
  if (!n.is_finite()) {
    rep.line("by: infinitely many ends accumulated by loops");
  } else if (n.count() <= 1) {
    rep.line("by: at most one end accumulated by loops");
  } else {
    rep.line("by: n - 1 for n ends accumulated by loops");
  }
  rep.field("h1", h.to_string());
  rep.field("marked", n.to_string());
  return 0;
}

// --ends wins; otherwise the loop-accumulated ends of the graph.
EndSpaceExpr ends_for_basis(Options const& o, Report& rep) {
  if (!o.ends.empty()) {
    auto e = parse_end_space(o.ends);
    require_valid(e);
    rep.input("ends=" + e.to_string());
    return e;
  }
  auto g = load(o, rep);
  auto m = g.marked_ends();
  if (!m) throw DomainError("graph has no ends accumulated by loops");
  return *m;
}

unsigned depth_for(Options const& o, EndSpaceExpr const& e) {
  if (o.depth) return *o.depth;
  if (!cardinality_class(e).is_finite()) {
    throw UsageError("--depth is required for an infinite end space");
  }
  return separating_depth(e);
}

int cmd_basis(Options const& o, Report& rep) {
  auto e = ends_for_basis(o, rep);
  unsigned depth = depth_for(o, e);
  rep.input("depth=" + std::to_string(depth));
  auto b = basis_family(e, depth);
  rep.line("ends: " + e.to_string());
  rep.line("depth: " + std::to_string(depth));
  std::string list;
  for (std::size_t i = 0; i < b.size(); ++i) {
    rep.line("A" + std::to_string(i + 1) + " = [" + b[i] + "]");
    list += (i ? "," : "") + b[i];
  }
  rep.field("size", std::to_string(b.size()));
  rep.field("basis", list);
  return 0;
}

int cmd_decompose(Options const& o, Report& rep) {
  if (o.clopen.empty()) throw UsageError("--clopen is required");
  auto e = ends_for_basis(o, rep);
  unsigned depth = depth_for(o, e);
  rep.input("depth=" + std::to_string(depth) + "\nclopen=" + o.clopen);
  auto b = basis_family(e, depth);
  auto terms = parse_cylinder_terms(o.clopen, &b);
  auto f = canonicalize(b, terms);
  rep.line("function: " + o.clopen);
  if (terms.size() == 1 && terms[0].coefficient == 1) {
    auto s = decompose_structured(b, terms[0].address);
    std::string text = s.positive ? "[" + *s.positive + "]" : "[]";
    for (auto const& n : s.negatives) text += " - [" + n + "]";
    rep.line("cylinder: " + text);
  }
  rep.line("in basis: " + f.to_string());
  std::string coords;
  for (std::size_t i = 0; i < b.size(); ++i) {
    coords += (i ? "," : "") + std::to_string(f.coefficient(b[i]));
  }
  rep.line("coordinates: (" + coords + ")");
  rep.field("fn", f.to_string());
  rep.field("coords", coords);
  return 0;
}

int cmd_flux(Options const& o, Report& rep) {
  if (o.word.empty()) throw UsageError("--word is required");
  if (o.clopen.empty()) throw UsageError("--clopen is required");
  GraphDescriptor g = (o.graph.empty() && o.positional.empty())
                          ? GraphDescriptor(std::nullopt,
                                            parse_end_space("sum(pt!, pt!)"))
                          : load_graph_descriptor(graph_path(o));
  if (o.graph.empty() && o.positional.empty()) {
    rep.line("graph: two-ended ladder (default), ends " +
             g.ends().to_string());
  } else {
    rep.line("graph: rank " + rank_text(g) + ", ends " + g.ends().to_string());
  }
  rep.input(g.to_string());
  FluxContext ctx(g, o.depth);
  auto w = parse_mapping_class_word(o.word);
  validate_word(w, ctx.ladders());
  auto c = ctx.parse_clopen(o.clopen);
  rep.input("word=" + w.to_string() + "\nclopen=" + c.to_string());
  auto fast = flux_fast(ctx, w, c);
  auto orc = flux_oracle(ctx, w, c);
  bool agree = fast == orc.value;
  rep.line("word: " + w.to_string());
  rep.line("clopen: " + c.to_string());
  rep.line("window: n=" + std::to_string(orc.window.n) +
           " m=" + std::to_string(orc.window.m) +
           " floor=" + std::to_string(orc.window.floor) +
           ", corank before " + std::to_string(orc.cork_before) +
           ", after " + std::to_string(orc.cork_after));
  rep.line("fast=" + std::to_string(fast) +
           " oracle=" + std::to_string(orc.value) +
           (agree ? " AGREE" : " DISAGREE"));
  rep.field("fast", std::to_string(fast));
  rep.field("oracle", std::to_string(orc.value));
  rep.field("agree", agree ? "1" : "0");
  return agree ? 0 : 1;
}

int cmd_genset(Options const& o, Report& rep) {
  auto g = load(o, rep);
  auto s = build_generating_set(g);
  rep.line("wedge: " + s.wedge.to_string());
  rep.line("V_K: compactly supported substitutions of the core");
  std::string ws, bs, hs;
  for (auto const& w : s.word_maps) {
    std::string t = "wm(" + w.loop.to_string() + ", I" +
                    std::to_string(w.ray) + ")";
    rep.line("W: " + t);
    ws += (ws.empty() ? "" : ";") + t;
  }
  for (auto const& b : s.swaps) {
    std::string t =
        "swap(" + b.first.to_string() + ", " + b.second.to_string() + ")";
    rep.line("B: " + t);
    bs += (bs.empty() ? "" : ";") + t;
  }
  for (auto h : s.shifts) {
    std::string t = "shift(" + std::to_string(h) + ")";
    rep.line("H: " + t);
    hs += (hs.empty() ? "" : ";") + t;
  }
  rep.field("W", std::to_string(s.word_maps.size()));
  rep.field("B", std::to_string(s.swaps.size()));
  rep.field("H", std::to_string(s.shifts.size()));
  rep.field("gens", ws + "|" + bs + "|" + hs);
  return 0;
}

int cmd_props(Options const& o, Report& rep) {
  auto g = load(o, rep);
  bool rf = is_residually_finite(g);
  bool ta = satisfies_tits_alternative_pmap(g);
  bool tam = satisfies_tits_alternative_map(g);
  bool finite_e = cardinality_class(g.ends()).is_finite();
  auto yes = [](bool b) { return std::string(b ? "yes" : "no"); };
  std::string rank_clause = g.infinite_rank()
                                ? "infinite rank (an end accumulated by loops)"
                                : "finite rank";
  rep.line("residually finite: " + yes(rf) + "  (by: " + rank_clause + ")");
  rep.line("Tits alternative, pure group: " + yes(ta) + "  (by: " +
           rank_clause + ")");
  std::string map_clause =
      g.infinite_rank() ? "infinite rank"
                        : (finite_e ? "finite rank and finitely many ends"
                                    : "finite rank but infinitely many ends");
  rep.line("Tits alternative, full group: " + yes(tam) + "  (by: " +
           map_clause + ")");
  if (!g.infinite_rank() && finite_e) {
    rep.line("pure group: " +
             pmap_isomorphism_type(*g.rank(),
                                   cardinality_class(g.ends()).count())
                 .to_string());
  }
  rep.field("rf", rf ? "1" : "0");
  rep.field("ta_pmap", ta ? "1" : "0");
  rep.field("ta_map", tam ? "1" : "0");
  return 0;
}

int cmd_witness(std::string const& kind, Options const& o, Report& rep) {
  RelationReport total;
  if (kind == "wreath") {
    int k = static_cast<int>(o.depth.value_or(3));
    if (k < 1 || k > 4) throw UsageError("wreath --depth must be in 1..4");
    rep.input("wreath depth=" + std::to_string(k));
    for (int n = 1; n <= k; ++n) {
      for (int m = 0; m <= k; ++m) {
        auto r = wreath_relation_check(n, m, 0);
        total.checked += r.checked;
        total.failures.insert(total.failures.end(), r.failures.begin(),
                              r.failures.end());
      }
    }
    rep.line("h^m g = g' h^m for block generators, n, m <= " +
             std::to_string(k) + ": " + std::to_string(total.checked) +
             " relations checked");
  } else if (kind == "grigorchuk") {
    int k = static_cast<int>(o.depth.value_or(5));
    if (k < 1 || k > 12) throw UsageError("grigorchuk --depth must be in 1..12");
    rep.input("grigorchuk depth=" + std::to_string(k));
    total = grigorchuk_relation_check(k);
    rep.line("a^2 = b^2 = c^2 = d^2 = bcd = 1 on trees of depth <= " +
             std::to_string(k) + ": " + std::to_string(total.checked) +
             " relations checked");
  } else {
    throw UsageError("witness kind must be 'wreath' or 'grigorchuk'");
  }
  for (auto const& f : total.failures) rep.line("FAILED: " + f);
  rep.line(total.holds() ? "all relations hold" : "relations FAIL");
  rep.field("kind", kind);
  rep.field("checked", std::to_string(total.checked));
  rep.field("holds", total.holds() ? "1" : "0");
  return total.holds() ? 0 : 1;
}

int cmd_selftest(Options const& o, Report& rep) {
  rep.input("seed=" + std::to_string(o.seed));
  auto results = run_selftest(o.seed);
  std::size_t passed = 0;
  for (auto const& r : results) {
    if (r.pass) ++passed;
    std::ostringstream s;
    s.precision(3);
    s << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": "
      << r.detail << " (" << std::fixed << r.seconds << " s)";
    rep.line(s.str());
  }
  rep.field("passed", std::to_string(passed));
  rep.field("total", std::to_string(results.size()));
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure mapping class groups of infinite graphs"};
  app.require_subcommand(1);
  Options o;
  std::string witness_kind;

  auto fmt = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
  };
  auto graph_opts = [&](CLI::App* sub, bool positional) {
    if (positional) sub->add_option("file", o.positional, "graph descriptor file");
    sub->add_option("-g,--graph", o.graph, "graph descriptor file");
  };

  auto* classify = app.add_subcommand("classify", "coarse classification");
  graph_opts(classify, true);
  fmt(classify);
  auto* h1 = app.add_subcommand("h1", "rank of first integral cohomology");
  graph_opts(h1, true);
  fmt(h1);
  auto* basis = app.add_subcommand("basis", "clopen basis of the function group");
  graph_opts(basis, true);
  basis->add_option("--ends", o.ends, "end space expression");
  basis->add_option("--depth", o.depth, "basis depth");
  fmt(basis);
  auto* decompose =
      app.add_subcommand("decompose", "write a function in the clopen basis");
  graph_opts(decompose, true);
  decompose->add_option("--ends", o.ends, "end space expression");
  decompose->add_option("--clopen", o.clopen, "cylinder combination")
      ->required();
  decompose->add_option("--depth", o.depth, "basis depth");
  fmt(decompose);
  auto* flux = app.add_subcommand("flux", "fast and oracle flux values");
  graph_opts(flux, true);
  flux->add_option("--word", o.word, "mapping class word")->required();
  flux->add_option("--clopen", o.clopen, "clopen of loop ends")->required();
  flux->add_option("--depth", o.depth, "basis depth");
  fmt(flux);
  auto* genset = app.add_subcommand("genset", "generating set of a wedge");
  graph_opts(genset, true);
  fmt(genset);
  auto* props =
      app.add_subcommand("props", "residual finiteness, Tits alternative");
  graph_opts(props, true);
  fmt(props);
  auto* witness = app.add_subcommand("witness", "wreath or Grigorchuk relations");
  witness->add_option("kind", witness_kind, "wreath or grigorchuk")->required();
  witness->add_option("--depth", o.depth, "size bound");
  fmt(witness);
  auto* selftest = app.add_subcommand("selftest", "run the agreement suite");
  selftest->add_option("--seed", o.seed, "random seed");
  fmt(selftest);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report rep(sub->get_name(), o.format == "machine");
  int code = 0;
  try {
    std::string name = sub->get_name();
    if (name == "classify") code = cmd_classify(o, rep);
    else if (name == "h1") code = cmd_h1(o, rep);
    else if (name == "basis") code = cmd_basis(o, rep);
    else if (name == "decompose") code = cmd_decompose(o, rep);
    else if (name == "flux") code = cmd_flux(o, rep);
    else if (name == "genset") code = cmd_genset(o, rep);
    else if (name == "props") code = cmd_props(o, rep);
    else if (name == "witness") code = cmd_witness(witness_kind, o, rep);
    else code = cmd_selftest(o, rep);
  } catch (ParseError const& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (UsageError const& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  rep.print(std::cout);
  return code;
}
