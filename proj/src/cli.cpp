#include "qmlkit/cli.hpp"

#include "qmlkit/angle.hpp"
#include "qmlkit/graph.hpp"
#include "qmlkit/kneading.hpp"
#include "qmlkit/lamination.hpp"
#include "qmlkit/qml.hpp"
#include "qmlkit/rewrite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#ifndef QMLKIT_DATA_DIR
#define QMLKIT_DATA_DIR "tests/data"
#endif

namespace qmlkit {

using nlohmann::ordered_json;

std::string default_data_dir() { return QMLKIT_DATA_DIR; }

std::string CheckLine::str() const {
  std::string s = (ok() ? "PASS " : "FAIL ") + name + " passed=" + std::to_string(passed) +
                  " failed=" + std::to_string(failed);
  for (const auto& f : failures) s += "\n  " + f;
  return s;
}

namespace {

constexpr std::size_t kMaxFailures = 5;

void fail(CheckLine& c, const std::string& what) {
  ++c.failed;
  if (c.failures.size() < kMaxFailures) c.failures.push_back(what);
}

std::vector<std::string> data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot read " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

long double decimal(const std::string& s) { return std::stold(s); }

std::vector<Angle> narrow_alphas(int max_period) {
  std::vector<Angle> out;
  for (const auto& arc : lavaurs_generate(max_period))
    if (arc.narrow) out.push_back(arc.lo);
  return out;
}

EpSequence random_sequence(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pre_len(0, 4), per_len(1, 6), bit(0, 1);
  Word pre, per;
  for (int i = pre_len(rng); i > 0; --i) pre.push_back(static_cast<char>('0' + bit(rng)));
  for (int i = per_len(rng); i > 0; --i) per.push_back(static_cast<char>('0' + bit(rng)));
  return EpSequence(pre, per);
}

std::set<std::string> class_keys(const Angle& alpha, const std::vector<EpSequence>& seqs) {
  std::set<std::string> keys;
  for (const auto& s : seqs) keys.insert(class_of(alpha, s).key);
  return keys;
}

}  // namespace

CheckLine check_ratio_table(const std::string& data_dir, int max_period) {
  CheckLine c{"ratio-table", 0, 0, {}};
  const Tables t = generate_tables(max_period);
  std::map<int, RatioRow> got;
  for (const auto& r : t.ratio_rows) got[r.period] = r;
  for (const auto& line : data_lines(data_dir + "/ratio_table.txt")) {
    std::istringstream in(line);
    int p;
    long nn, non, tot, rnon, rtot;
    std::string ratio;
    in >> p >> nn >> non >> tot >> rnon >> rtot >> ratio;
    if (p > max_period) continue;
    auto it = got.find(p);
    if (it == got.end()) {
      fail(c, "period " + std::to_string(p) + " missing");
      continue;
    }
    const RatioRow& r = it->second;
    if (r.narrow == nn && r.non_narrow == non && r.total == tot && r.nonrenorm_non_narrow == rnon &&
        r.nonrenorm_total == rtot && decimal(r.ratio) == decimal(ratio))
      ++c.passed;
    else
      fail(c, "period " + std::to_string(p) + " row differs, ratio " + r.ratio + " vs " + ratio);
  }
  return c;
}

CheckLine check_arc_tables(const std::string& data_dir) {
  CheckLine c{"arc-tables", 0, 0, {}};
  const Tables t = generate_tables(10);
  std::set<std::string> got, want;
  for (const auto& r : t.arc_rows)
    if (r.period == 6 || r.period >= 8)
      got.insert(std::to_string(r.period) + " " + r.lo.str() + " " + r.hi.str() + " " + r.kneading + " " +
                 address_str(r.address));
  for (const auto& line : data_lines(data_dir + "/arc_tables.txt")) {
    std::istringstream in(line);
    std::string p, lo, hi, v, addr;
    in >> p >> lo >> hi >> v >> addr;
    want.insert(p + " " + lo + " " + hi + " " + v + " " + addr);
  }
  for (const auto& w : want) {
    if (got.count(w))
      ++c.passed;
    else
      fail(c, "missing row " + w);
  }
  for (const auto& g : got)
    if (!want.count(g)) fail(c, "extra row " + g);
  return c;
}

CheckLine sweep_oracle(int max_period, int max_k) {
  CheckLine c{"oracle", 0, 0, {}};
  std::set<Angle> thetas;
  for (int k = 1; k <= max_k; ++k) {
    const long long d = (1LL << k) - 1;
    for (long long j = 0; j < d; ++j) thetas.insert(Angle(j, d));
  }
  for (const Angle& alpha : narrow_alphas(max_period)) {
    for (const Angle& a : {alpha, associated_angle(alpha)}) {
      const Angle bar = associated_angle(a);
      const RewriteRule rule = rewrite_rule(a);
      for (const Angle& theta : thetas) {
        if (is_precritical(a, theta) || is_precritical(bar, theta)) continue;
        const EpSequence in = itinerary(a, ExtendedAngle(theta));
        const EpSequence want = itinerary(bar, ExtendedAngle(theta));
        const auto outs = phi_rewrite(rule, in).outputs;
        if (std::find(outs.begin(), outs.end(), want) != outs.end())
          ++c.passed;
        else
          fail(c, a.str() + " theta " + theta.str() + ": " + in.str() + " -> " + outs.front().str() +
                      ", expected " + want.str());
      }
    }
  }
  return c;
}

CheckLine sweep_involution(int max_period, int samples, std::uint64_t seed) {
  CheckLine c{"involution", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (const Angle& alpha : narrow_alphas(max_period)) {
    const Angle bar = associated_angle(alpha);
    for (int i = 0; i < samples; ++i) {
      const EpSequence s = random_sequence(rng);
      try {
        const SequenceClass start = class_of(alpha, s);
        const SequenceClass back = phi_on_classes(bar, phi_on_classes(alpha, start));
        if (back == start)
          ++c.passed;
        else
          fail(c, alpha.str() + " " + s.str() + ": " + start.key + " -> " + back.key);
      } catch (const std::exception& e) {
        fail(c, alpha.str() + " " + s.str() + ": " + e.what());
      }
    }
  }
  return c;
}

CheckLine sweep_shift(int max_period, int samples, std::uint64_t seed) {
  CheckLine c{"shift", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (const Angle& alpha : narrow_alphas(max_period)) {
    const Angle bar = associated_angle(alpha);
    const RewriteRule rule = rewrite_rule(alpha);
    for (int i = 0; i < samples; ++i) {
      const EpSequence s = random_sequence(rng);
      try {
        std::vector<EpSequence> shifted;
        for (const auto& o : phi_rewrite(rule, s).outputs) shifted.push_back(o.shifted());
        const auto lhs = class_keys(bar, shifted);
        const auto rhs = class_keys(bar, phi_rewrite(rule, s.shifted()).outputs);
        if (lhs.size() == 1 && lhs == rhs)
          ++c.passed;
        else
          fail(c, alpha.str() + " " + s.str() + ": shift and rewrite do not commute");
      } catch (const std::exception& e) {
        fail(c, alpha.str() + " " + s.str() + ": " + e.what());
      }
    }
  }
  return c;
}

CheckLine sweep_graph_agreement(int max_period, int max_pre, int max_per) {
  CheckLine c{"graph-agreement", 0, 0, {}};
  std::vector<Word> words{""};
  for (int len = 1; len <= std::max(max_pre, max_per); ++len)
    for (int m = 0; m < (1 << len); ++m) {
      Word w;
      for (int b = len - 1; b >= 0; --b) w.push_back(static_cast<char>('0' + ((m >> b) & 1)));
      words.push_back(w);
    }
  std::set<EpSequence> corpus;
  for (const auto& u : words)
    for (const auto& w : words)
      if (static_cast<int>(u.size()) <= max_pre && !w.empty() && static_cast<int>(w.size()) <= max_per)
        corpus.insert(EpSequence(u, w));
  for (const Angle& alpha : narrow_alphas(max_period)) {
    for (const Angle& a : {alpha, associated_angle(alpha)}) {
      const RewriteGraphs graphs = rewrite_graphs(a);
      const RewriteRule rule = rewrite_rule(a);
      const Angle bar = associated_angle(a);
      for (const auto& s : corpus) {
        try {
          const auto direct = phi_rewrite(rule, s).outputs;
          const auto via_graph = graph_rewrite(graphs, s).outputs;
          if (direct == via_graph || class_keys(bar, direct) == class_keys(bar, via_graph))
            ++c.passed;
          else
            fail(c, a.str() + " " + s.str() + ": " + direct.front().str() + " vs " + via_graph.front().str());
        } catch (const std::exception& e) {
          fail(c, a.str() + " " + s.str() + ": " + e.what());
        }
      }
    }
  }
  return c;
}

namespace {

struct Options {
  std::string format = "human";
  std::string out_file;
  int max_period = 10;
  int depth = 3;
  bool extended = false;
  bool experimental = false;
  bool graph_route = false;
  bool arcs = false;
  bool geodesic = false;
  bool labels = false;
  std::string kind = "boundary";
  std::string alpha;
  std::string prefix;
  std::string data_dir = default_data_dir();
  int samples = 100;
  std::vector<std::string> positional;
};

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw parse_error("format " + o.format + " is not available for this command");
}

std::string chord_str(const Chord& c) { return "(" + c.a.str() + ", " + c.b.str() + ")"; }

ordered_json chord_json(const Chord& c) {
  ordered_json j = {{"a", c.a.str()}, {"b", c.b.str()}};
  if (c.label) {
    j["word"] = c.label->word;
    j["t"] = c.label->t;
  }
  return j;
}

Angle positional_angle(const Options& o, std::size_t i, const char* what) {
  if (o.positional.size() <= i) throw parse_error(std::string("missing ") + what);
  return Angle::parse(o.positional[i]);
}

std::string cmd_kneading(const Options& o) {
  require_format(o, {"human", "json"});
  const Angle alpha = positional_angle(o, 0, "alpha");
  const KneadingData k = kneading_data(alpha);
  const EpSequence kn = itinerary(alpha, ExtendedAngle(alpha));
  std::optional<EpSequence> it;
  if (o.positional.size() > 1) it = itinerary(alpha, ExtendedAngle::parse(o.positional[1]));
  if (o.format == "json") {
    ordered_json j = {{"alpha", alpha.str()}, {"period", k.period}, {"kneading", kn.str()}, {"v", k.v}, {"e", k.e}};
    if (it) j["itinerary"] = it->str();
    return j.dump(2) + "\n";
  }
  std::string s = "alpha " + alpha.str() + "\nperiod " + std::to_string(k.period) + "\nkneading " + kn.str() +
                  "\nv " + k.v + "\ne " + std::to_string(k.e) + "\n";
  if (it) s += "itinerary " + it->str() + "\n";
  return s;
}

std::string cmd_companion(const Options& o) {
  require_format(o, {"human", "json"});
  const Angle alpha = positional_angle(o, 0, "alpha");
  const Angle bar = associated_angle(alpha);
  if (o.format == "json") return ordered_json{{"alpha", alpha.str()}, {"companion", bar.str()}}.dump(2) + "\n";
  return bar.str() + "\n";
}

std::string cmd_qml(const Options& o) {
  require_format(o, {"human", "json", "csv", "svg"});
  const auto arcs = lavaurs_generate(o.max_period);
  if (o.format == "svg") {
    std::vector<Chord> chords;
    for (const auto& a : arcs) chords.emplace_back(a.lo, a.hi);
    return render_svg(chords, {o.geodesic, o.labels, 512});
  }
  if (o.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& a : arcs)
      j.push_back({{"period", a.period}, {"lo", a.lo.str()}, {"hi", a.hi.str()}, {"narrow", a.narrow},
                   {"satellite", a.satellite}});
    return j.dump(2) + "\n";
  }
  std::string s = o.format == "csv" ? "period,lo,hi,narrow,satellite\n" : "";
  for (const auto& a : arcs) {
    if (o.format == "csv")
      s += std::to_string(a.period) + "," + a.lo.str() + "," + a.hi.str() + "," + (a.narrow ? "1" : "0") + "," +
           (a.satellite ? "1" : "0") + "\n";
    else
      s += std::to_string(a.period) + " " + a.str() + (a.narrow ? " narrow" : "") +
           (a.satellite ? " satellite" : "") + "\n";
  }
  if (o.format == "human") s += "total " + std::to_string(arcs.size()) + "\n";
  return s;
}

CharacteristicArc arc_of(const Angle& alpha) { return make_arc(alpha, associated_angle(alpha)); }

std::string cmd_narrow(const Options& o) {
  require_format(o, {"human", "json"});
  const CharacteristicArc arc = arc_of(positional_angle(o, 0, "alpha"));
  const Narrowness n = narrowness(arc);
  if (o.format == "json") {
    ordered_json j = {{"arc", arc.str()}, {"period", arc.period}, {"width", arc.width.str()}, {"narrow", n.narrow}};
    if (!n.narrow) j["first_nesting_index"] = n.first_nesting_index;
    if (n.longest_nested_narrow) j["longest_nested_narrow"] = n.longest_nested_narrow->str();
    return j.dump(2) + "\n";
  }
  std::string s = "arc " + arc.str() + "\nperiod " + std::to_string(arc.period) + "\nwidth " + arc.width.str() +
                  "\nnarrow " + (n.narrow ? "yes" : "no") + "\n";
  if (!n.narrow) s += "first_nesting_index " + std::to_string(n.first_nesting_index) + "\n";
  if (n.longest_nested_narrow) s += "longest_nested_narrow " + n.longest_nested_narrow->str() + "\n";
  return s;
}

std::string cmd_portrait(const Options& o) {
  require_format(o, {"human", "json"});
  const OrbitPortrait p = orbit_portrait(arc_of(positional_angle(o, 0, "alpha")));
  ordered_json j = ordered_json::array();
  std::string s;
  for (std::size_t i = 0; i < p.arcs.size(); ++i) {
    const auto& a = p.arcs[i];
    j.push_back({{"index", i + 1}, {"start", a.start.str()}, {"end", a.end.str()}, {"length", a.length().str()}});
    s += "A" + std::to_string(i + 1) + " (" + a.start.str() + ", " + a.end.str() + ") " + a.length().str() + "\n";
  }
  return o.format == "json" ? j.dump(2) + "\n" : s;
}

std::string cmd_address(const Options& o) {
  require_format(o, {"human", "json"});
  const InternalAddress a = internal_address(arc_of(positional_angle(o, 0, "alpha")));
  if (o.format == "json") return ordered_json(a).dump() + "\n";
  return address_str(a) + "\n";
}

std::string cmd_renorm(const Options& o) {
  require_format(o, {"human", "json"});
  const CharacteristicArc arc = arc_of(positional_angle(o, 0, "alpha"));
  const bool r = is_simply_renormalizable(arc);
  if (o.format == "json")
    return ordered_json{{"arc", arc.str()}, {"simply_renormalizable", r}}.dump(2) + "\n";
  return std::string("simply_renormalizable ") + (r ? "yes" : "no") + "\n";
}

std::string rewrite_output(const Options& o, const RewriteResult& r) {
  if (o.format == "json") {
    ordered_json outs = ordered_json::array();
    for (const auto& x : r.outputs) outs.push_back(x.str());
    return ordered_json{{"outputs", outs}, {"ambiguous", r.ambiguous}}.dump(2) + "\n";
  }
  std::string s;
  for (const auto& x : r.outputs) s += x.str() + "\n";
  if (r.ambiguous) s += "# ambiguous\n";
  return s;
}

std::string cmd_rewrite(const Options& o) {
  require_format(o, {"human", "json"});
  if (o.alpha.empty()) throw parse_error("rewrite needs --alpha");
  const Angle alpha = Angle::parse(o.alpha);
  const bool narrow = arc_of(alpha).narrow;
  if (!narrow && !o.experimental)
    throw domain_error(alpha.str() + " is not a narrow arc endpoint");
  const bool use_graph = o.graph_route || !narrow;
  if (!o.prefix.empty()) {
    if (!o.positional.empty()) throw parse_error("give either --prefix or a sequence");
    const Word w = use_graph ? graph_rewrite_prefix(alpha, o.prefix, o.experimental)
                             : phi_rewrite_prefix(alpha, o.prefix);
    if (o.format == "json") return ordered_json{{"prefix", o.prefix}, {"output", w}}.dump(2) + "\n";
    return w + "\n";
  }
  if (o.positional.size() != 1) throw parse_error("rewrite needs one sequence or --prefix");
  const EpSequence s = EpSequence::parse(o.positional[0]);
  return rewrite_output(o, use_graph ? graph_rewrite(alpha, s, o.experimental) : phi_rewrite(alpha, s));
}

std::string cmd_equiv(const Options& o) {
  require_format(o, {"human", "json"});
  if (o.alpha.empty()) throw parse_error("equiv needs --alpha");
  if (o.positional.size() != 2) throw parse_error("equiv needs two sequences");
  const Angle alpha = Angle::parse(o.alpha);
  const bool eq = sequences_equivalent(alpha, EpSequence::parse(o.positional[0]), EpSequence::parse(o.positional[1]));
  if (o.format == "json") return ordered_json{{"equivalent", eq}}.dump(2) + "\n";
  return eq ? "equivalent\n" : "not equivalent\n";
}

std::string cmd_lamination(const Options& o) {
  require_format(o, {"human", "json", "svg"});
  const Angle alpha = positional_angle(o, 0, "alpha");
  std::vector<Chord> chords;
  if (o.kind == "step") {
    chords = lamination_step(alpha, o.depth).chords;
  } else if (o.kind == "boundary") {
    chords = boundary_lamination(alpha, o.depth).chords;
  } else {
    const QuadLamination q = quad_lamination(alpha, o.depth);
    chords = q.long_chords.chords;
    chords.insert(chords.end(), q.short_chords.chords.begin(), q.short_chords.chords.end());
  }
  if (o.format == "svg") return render_svg(chords, {o.geodesic, o.labels, 512});
  if (o.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& c : chords) j.push_back(chord_json(c));
    return j.dump(2) + "\n";
  }
  std::string s;
  for (const auto& c : chords) {
    s += chord_str(c);
    if (c.label) s += " " + (c.label->word.empty() ? std::string("-") : c.label->word) + " " + std::to_string(c.label->t);
    s += "\n";
  }
  return s;
}

std::string cmd_graph(const Options& o) {
  require_format(o, {"human", "json", "dot"});
  const TransitionGraph g = build_graph(positional_angle(o, 0, "alpha"), o.experimental);
  if (o.format == "dot") return to_dot(g);
  const auto& pieces = g.puzzle.pieces;
  if (o.format == "json") {
    ordered_json states = ordered_json::array(), edges = ordered_json::array();
    for (const auto& p : pieces) {
      ordered_json arcs = ordered_json::array();
      for (const auto& [a, b] : p.arcs) arcs.push_back({a.str(), b.str()});
      states.push_back({{"tag", p.tag}, {"symbol", p.symbol}, {"arcs", arcs}});
    }
    for (auto [a, b] : g.edges) edges.push_back({pieces[a].tag, pieces[b].tag});
    return ordered_json{{"arc", g.puzzle.arc.str()}, {"states", states}, {"edges", edges}}.dump(2) + "\n";
  }
  std::string s = "arc " + g.puzzle.arc.str() + "\n";
  for (const auto& p : pieces) {
    s += p.tag + " symbol " + std::to_string(p.symbol);
    for (const auto& [a, b] : p.arcs) s += " (" + a.str() + ", " + b.str() + ")";
    if (p.arcs.empty()) {
      s += " polygon";
      for (const auto& v : p.vertices) s += " " + v.str();
    }
    s += " ->";
    for (const auto& t : g.successors(p.tag)) s += " " + t;
    s += "\n";
  }
  return s;
}

std::string cmd_tables(const Options& o) {
  require_format(o, {"human", "json", "csv", "md"});
  const Tables t = generate_tables(o.max_period);
  if (o.format == "json") {
    ordered_json j = ordered_json::array();
    if (o.arcs) {
      for (const auto& r : t.arc_rows)
        j.push_back({{"period", r.period}, {"lo", r.lo.str()}, {"hi", r.hi.str()}, {"kneading", r.kneading},
                     {"address", address_str(r.address)}});
    } else {
      for (const auto& r : t.ratio_rows)
        j.push_back({{"period", r.period}, {"narrow", r.narrow}, {"non_narrow", r.non_narrow}, {"total", r.total},
                     {"nonrenorm_non_narrow", r.nonrenorm_non_narrow}, {"nonrenorm_total", r.nonrenorm_total},
                     {"ratio", r.ratio}});
    }
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  if (o.arcs) {
    header = {"period", "lo", "hi", "kneading", "address"};
    for (const auto& r : t.arc_rows)
      rows.push_back({std::to_string(r.period), r.lo.str(), r.hi.str(), r.kneading, address_str(r.address)});
  } else {
    header = {"period", "narrow", "non_narrow", "total", "nonrenorm_non_narrow", "nonrenorm_total", "ratio"};
    for (const auto& r : t.ratio_rows)
      rows.push_back({std::to_string(r.period), std::to_string(r.narrow), std::to_string(r.non_narrow),
                      std::to_string(r.total), std::to_string(r.nonrenorm_non_narrow),
                      std::to_string(r.nonrenorm_total), r.ratio});
  }
  auto join = [](const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
  };
  std::string s;
  if (o.format == "csv") {
    s += join(header, ",") + "\n";
    for (auto r : rows) {
      for (auto& field : r)
        if (field.find(',') != std::string::npos) field = "\"" + field + "\"";
      s += join(r, ",") + "\n";
    }
  } else if (o.format == "md") {
    s += "| " + join(header, " | ") + " |\n|";
    for (std::size_t i = 0; i < header.size(); ++i) s += "---|";
    s += "\n";
    for (const auto& r : rows) s += "| " + join(r, " | ") + " |\n";
  } else {
    for (const auto& r : rows) s += join(r, " ") + "\n";
  }
  return s;
}

std::string cmd_verify(const Options& o, int& status) {
  require_format(o, {"human"});
  if (o.positional.size() != 1) throw parse_error("verify needs one suite name");
  const std::string& suite = o.positional[0];
  static const std::set<std::string> suites{"tables", "oracle", "involution", "graph-agreement", "all"};
  if (!suites.count(suite)) throw parse_error("unknown suite " + suite);
  const bool all = suite == "all";
  std::vector<CheckLine> checks;
  if (all || suite == "tables") {
    checks.push_back(check_ratio_table(o.data_dir, 10));
    checks.push_back(check_arc_tables(o.data_dir));
  }
  if (all || suite == "oracle") checks.push_back(sweep_oracle(6, 12));
  if (all || suite == "involution") {
    checks.push_back(sweep_involution(6, o.samples, 1));
    checks.push_back(sweep_shift(6, o.samples, 2));
  }
  if (all || suite == "graph-agreement") checks.push_back(sweep_graph_agreement(std::min(o.max_period, 6), 4, 6));
  std::string s;
  for (const auto& c : checks) {
    s += c.str() + "\n";
    if (!c.ok()) status = 1;
  }
  return s;
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "human, json, csv, md, svg or dot")
      ->check(CLI::IsMember({"human", "json", "csv", "md", "svg", "dot"}));
  cmd->add_option("--out", o.out_file, "write output to this file");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quadratic minor lamination toolkit", "qmlkit"};
  app.require_subcommand(1, 1);
  Options o;
  std::map<std::string, CLI::App*> cmds;
  auto verb = [&](const std::string& name, const std::string& help, const std::string& pos_help) {
    CLI::App* c = app.add_subcommand(name, help);
    add_format(c, o);
    if (!pos_help.empty()) c->add_option("args", o.positional, pos_help);
    cmds[name] = c;
    return c;
  };
  verb("kneading", "kneading data of alpha, or the itinerary of theta", "alpha [theta]");
  verb("companion", "associated angle", "alpha");
  verb("qml", "characteristic arcs up to a period", "")->add_option("--max-period", o.max_period)->check(CLI::Range(1, 20));
  verb("narrow", "narrowness of the arc of alpha", "alpha");
  verb("portrait", "orbit portrait arcs", "alpha");
  verb("address", "internal address", "alpha");
  verb("renorm", "simple renormalizability", "alpha");
  {
    CLI::App* c = verb("rewrite", "rewrite a sequence for the companion angle", "sequence");
    c->add_option("--alpha", o.alpha)->required();
    c->add_option("--prefix", o.prefix);
    c->add_flag("--graph", o.graph_route, "use the transition graph route");
    c->add_flag("--experimental-nonnarrow", o.experimental);
  }
  verb("equiv", "whether two sequences code equivalent angles", "s1 s2")->add_option("--alpha", o.alpha)->required();
  {
    CLI::App* c = verb("lamination", "chords of a lamination", "alpha");
    c->add_option("--depth", o.depth)->check(CLI::Range(0, 16));
    c->add_option("--kind", o.kind)->check(CLI::IsMember({"step", "boundary", "quad"}));
    c->add_flag("--geodesic", o.geodesic);
    c->add_flag("--labels", o.labels);
  }
  verb("graph", "transition graph", "alpha")->add_flag("--experimental-nonnarrow", o.experimental);
  {
    CLI::App* c = verb("tables", "ratio table or arc tables", "");
    c->add_option("--max-period", o.max_period)->check(CLI::Range(4, 15));
    c->add_flag("--extended", o.extended, "allow periods above 10");
    c->add_flag("--arcs", o.arcs, "arc rows instead of ratio rows");
  }
  {
    CLI::App* c = verb("verify", "run a verification suite", "suite");
    c->add_option("--data", o.data_dir);
    c->add_option("--samples", o.samples)->check(CLI::Range(1, 100000));
    c->add_option("--max-period", o.max_period)->check(CLI::Range(2, 6));
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  int status = 0;
  std::string text;
  try {
    if (name == "tables") {
      if (cmds["tables"]->count("--max-period") == 0) o.max_period = o.extended ? 15 : 10;
      if (o.max_period > 10 && !o.extended) throw parse_error("periods above 10 need --extended");
    }
    if (name == "kneading") text = cmd_kneading(o);
    else if (name == "companion") text = cmd_companion(o);
    else if (name == "qml") text = cmd_qml(o);
    else if (name == "narrow") text = cmd_narrow(o);
    else if (name == "portrait") text = cmd_portrait(o);
    else if (name == "address") text = cmd_address(o);
    else if (name == "renorm") text = cmd_renorm(o);
    else if (name == "rewrite") text = cmd_rewrite(o);
    else if (name == "equiv") text = cmd_equiv(o);
    else if (name == "lamination") text = cmd_lamination(o);
    else if (name == "graph") text = cmd_graph(o);
    else if (name == "tables") text = cmd_tables(o);
    else text = cmd_verify(o, status);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (o.out_file.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_file);
    if (!f) {
      err << "error: cannot write " << o.out_file << "\n";
      return 1;
    }
    f << text;
  }
  return status;
}

}  // namespace qmlkit
