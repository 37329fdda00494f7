#include "qmlkit/lamination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qmlkit {

namespace {

std::vector<Word> words_of_length(int len) {
  std::vector<Word> out{""};
  for (int i = 0; i < len; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * 2);
    for (const Word& w : out) {
      next.push_back(w + '0');
      next.push_back(w + '1');
    }
    out = std::move(next);
  }
  return out;
}

void add_unique(std::vector<Chord>& chords, std::set<std::pair<Angle, Angle>>& seen, Chord c) {
  if (seen.emplace(c.a, c.b).second) chords.push_back(std::move(c));
}

}  // namespace

Lamination lamination_step(const Angle& alpha, int k) {
  if (k < 1) throw domain_error("step must be at least 1");
  Branches br(alpha);
  const int t = 1 - characteristic_symbol(alpha);
  Lamination lam{alpha, {}};
  for (int len = 0; len < k; ++len)
    for (const Word& w : words_of_length(len))
      lam.chords.emplace_back(br.apply(w, t, br.adot()), br.apply(w, t, br.addot()), ChordLabel{w, t});
  return lam;
}

Lamination boundary_lamination(const Angle& alpha, int depth) {
  if (depth < 0) throw domain_error("depth must be nonnegative");
  Branches br(alpha);
  const Angle bar = associated_angle(alpha);
  const int t = 1 - characteristic_symbol(alpha);
  Lamination lam{alpha, {}};
  std::set<std::pair<Angle, Angle>> seen;
  add_unique(lam.chords, seen, Chord(alpha, bar, ChordLabel{"", t}));
  for (int len = 1; len <= depth; ++len)
    for (const Word& w : words_of_length(len))
      add_unique(lam.chords, seen, Chord(br.apply(w, t, alpha), br.apply(w, t, bar), ChordLabel{w, t}));
  return lam;
}

QuadLamination quad_lamination(const Angle& alpha, int depth) {
  if (depth < 0) throw domain_error("depth must be nonnegative");
  Branches br(alpha);
  const Angle bar = associated_angle(alpha);
  const int e = characteristic_symbol(alpha);

  QuadLamination q;
  q.alpha = alpha;
  q.long_chords.alpha = q.short_chords.alpha = alpha;
  std::set<std::pair<Angle, Angle>> seen_long, seen_short;
  std::vector<Chord> all;
  add_unique(q.long_chords.chords, seen_long, Chord(alpha, bar, ChordLabel{"", 1 - e}));

  auto finish = [&](QuadGap g) {
    std::map<Angle, int> degree;
    for (const auto* sides : {&g.short_sides, &g.long_sides})
      for (const Chord& c : *sides) {
        ++degree[c.a];
        ++degree[c.b];
      }
    if (degree.size() != 4 || std::any_of(degree.begin(), degree.end(), [](auto& d) { return d.second != 2; }))
      throw std::logic_error("gap " + g.prefix + " of " + alpha.str() + " is not a quadrilateral");
    int i = 0;
    for (const auto& [v, d] : degree) g.vertices[i++] = v;
    for (const Chord& c : g.short_sides) add_unique(q.short_chords.chords, seen_short, c);
    for (const Chord& c : g.long_sides) add_unique(q.long_chords.chords, seen_long, c);
    all.insert(all.end(), g.short_sides.begin(), g.short_sides.end());
    all.insert(all.end(), g.long_sides.begin(), g.long_sides.end());
    q.gaps.push_back(std::move(g));
  };

  QuadGap center;
  for (int t = 0; t < 2; ++t)
    for (char s : {'0', '1'}) {
      Chord c(br.step(s, t, alpha), br.step(s, t, bar), ChordLabel{Word(1, s), t});
      (t == e ? center.short_sides : center.long_sides).push_back(c);
    }
  finish(std::move(center));

  // Q_{sw} is l_s(Q_w); a vertex at alpha takes the preimage that keeps the lamination unlinked.
  for (std::size_t first = 0, level = 1; level <= static_cast<std::size_t>(depth); ++level) {
    const std::size_t last = q.gaps.size();
    for (char s : {'0', '1'})
      for (std::size_t gi = first; gi < last; ++gi) {
        const QuadGap parent = q.gaps[gi];
        auto pull = [&](const Angle& x, const Angle& at_alpha) { return x == alpha ? at_alpha : br.step(s, 0, x); };
        std::optional<QuadGap> chosen;
        for (const Angle& at_alpha : {br.lower(), br.upper()}) {
          QuadGap g;
          g.prefix = Word(1, s) + parent.prefix;
          for (const Chord& c : parent.short_sides)
            g.short_sides.emplace_back(pull(c.a, at_alpha), pull(c.b, at_alpha), ChordLabel{s + c.label->word, c.label->t});
          for (const Chord& c : parent.long_sides)
            g.long_sides.emplace_back(pull(c.a, at_alpha), pull(c.b, at_alpha), ChordLabel{s + c.label->word, c.label->t});
          const bool ambiguous = std::find(parent.vertices.begin(), parent.vertices.end(), alpha) != parent.vertices.end();
          bool crosses = false;
          if (ambiguous)
            for (const auto* sides : {&g.short_sides, &g.long_sides})
              for (const Chord& c : *sides)
                crosses = crosses || std::any_of(all.begin(), all.end(), [&](const Chord& o) { return chords_cross(c, o); });
          if (!crosses) {
            chosen = std::move(g);
            break;
          }
        }
        if (!chosen) throw std::logic_error("no unlinked preimage of gap " + parent.prefix + " of " + alpha.str());
        finish(std::move(*chosen));
      }
    first = last;
  }
  return q;
}

namespace {

struct Marked {
  Angle x;
  Marker m;
  friend bool operator<(const Marked& p, const Marked& q) {
    return ExtendedAngle(p.x, p.m) < ExtendedAngle(q.x, q.m);
  }
};

bool in_marked_arc(const Marked& p, const Angle& a, const Angle& b) {
  if (in_open_arc(p.x, a, b)) return true;
  return (p.x == a && p.m == Marker::plus) || (p.x == b && p.m == Marker::minus);
}

Marked apply_doubling(const Marked& p, int times) {
  Marked q = p;
  for (int i = 0; i < times; ++i) q.x = double_angle(q.x);
  return q;
}

}  // namespace

std::optional<Word> gap_encoding(const Angle& alpha, const ExtendedAngle& theta) {
  Branches br(alpha);
  const int n = br.period();
  const Angle bar = associated_angle(alpha);
  const int e = characteristic_symbol(alpha);
  const EpSequence itin = itinerary_lenient(alpha, theta);
  if (itin.has_star()) return std::nullopt;

  std::vector<std::pair<Angle, Angle>> t_arcs;
  std::vector<Angle> bar_vertices;
  for (char s : {'0', '1'}) {
    const Word w(1, s);
    Chord c(br.apply(w, e, alpha), br.apply(w, e, bar));
    if (c.b.value() - c.a.value() < Rational(1, 2))
      t_arcs.emplace_back(c.a, c.b);
    else
      t_arcs.emplace_back(c.b, c.a);
    bar_vertices.push_back(br.apply(w, e, bar));
  }
  auto in_t = [&](const Marked& p) {
    if (p.m == Marker::none && std::find(bar_vertices.begin(), bar_vertices.end(), p.x) != bar_vertices.end())
      return true;
    for (const auto& [a, b] : t_arcs)
      if (in_marked_arc(p, a, b)) return true;
    return false;
  };
  std::map<Marked, bool> memo;
  auto in_g = [&](const Marked& start) {
    if (auto it = memo.find(start); it != memo.end()) return it->second;
    std::set<Marked> seen;
    Marked p = start;
    bool result = true;
    while (seen.insert(p).second) {
      if (!in_t(p)) {
        result = false;
        break;
      }
      p = apply_doubling(p, n);
    }
    memo[start] = result;
    return result;
  };

  std::set<Marked> visited;
  Marked p{theta.angle, theta.marker};
  for (std::size_t j = 0; visited.insert(p).second; ++j) {
    if (in_g(p)) return itin.prefix(j);
    p = apply_doubling(p, 1);
  }
  return std::nullopt;
}

bool Region::contains(const ExtendedAngle& x) const {
  const Marked p{x.angle, x.marker};
  for (const auto& arc : arcs)
    if (in_marked_arc(p, arc.start, arc.end)) return true;
  return false;
}

Region region_of_word(const Angle& alpha, const Word& x) {
  Branches br(alpha);
  std::vector<RegionArc> arcs{{alpha, alpha}};
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    if (*it != '0' && *it != '1') throw domain_error("word symbols must be 0 or 1");
    const Rational base = *it == '0' ? br.lower().value() : br.upper().value();
    std::vector<RegionArc> split;
    for (const auto& arc : arcs) {
      if (arc.start != alpha && (arc.start == arc.end || in_open_arc(alpha, arc.start, arc.end))) {
        split.push_back({arc.start, alpha});
        split.push_back({alpha, arc.end});
      } else {
        split.push_back(arc);
      }
    }
    auto phi = [&](const Angle& y, bool at_end) {
      if (y == alpha) return Rational(at_end ? 1 : 0);
      return arc_length(alpha, y);
    };
    arcs.clear();
    for (const auto& arc : split)
      arcs.push_back({Angle(base + phi(arc.start, false) / 2), Angle(base + phi(arc.end, true) / 2)});
    std::sort(arcs.begin(), arcs.end(), [](const RegionArc& a, const RegionArc& b) { return a.start < b.start; });
  }
  Region r;
  r.word = x;
  r.arcs = arcs;
  const std::size_t m = arcs.size();
  if (!(m == 1 && arcs[0].start == arcs[0].end)) {
    for (std::size_t i = 0; i < m; ++i) {
      const Angle& from = arcs[i].end;
      const Angle& to = arcs[(i + 1) % m].start;
      if (from != to) r.boundary.emplace_back(from, to);
    }
  }
  return r;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct PointSets {
  std::map<Angle, int> index;
  std::vector<Angle> points;
  UnionFind uf;
  int id(const Angle& a) {
    auto [it, fresh] = index.emplace(a, 0);
    if (fresh) {
      it->second = uf.add();
      points.push_back(a);
    }
    return it->second;
  }
  std::vector<std::vector<Angle>> classes() {
    std::map<int, std::vector<Angle>> groups;
    for (const auto& [a, i] : index) groups[uf.find(i)].push_back(a);
    std::vector<std::vector<Angle>> out;
    for (auto& [r, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
  }
};

std::vector<Angle> alpha_class(const Angle& alpha, const Angle& bar, int n) {
  PointSets ps;
  Angle a = alpha, b = bar;
  for (int j = 0; j < n; ++j) {
    ps.uf.unite(ps.id(a), ps.id(b));
    a = double_angle(a);
    b = double_angle(b);
  }
  for (auto& c : ps.classes())
    if (std::binary_search(c.begin(), c.end(), alpha)) return c;
  throw std::logic_error("alpha missing from its own class");
}

}  // namespace

std::vector<std::vector<Angle>> chord_classes(const std::vector<Chord>& chords) {
  PointSets ps;
  for (const Chord& c : chords) ps.uf.unite(ps.id(c.a), ps.id(c.b));
  return ps.classes();
}

std::optional<std::vector<Angle>> special_class(const Angle& alpha, const Angle& theta) {
  const int n = period_of(alpha);
  Int odd = theta.den();
  while (odd % 2 == 0) odd /= 2;
  if ((pow2(n) - 1) % odd != 0) return std::nullopt;
  Branches br(alpha);
  const std::vector<Angle> k = alpha_class(alpha, associated_angle(alpha), n);
  auto in_k = [&](const Angle& x) { return std::binary_search(k.begin(), k.end(), x); };

  std::vector<Angle> orbit;
  std::set<Angle> seen;
  Angle y = theta;
  int m = -1;
  while (seen.insert(y).second) {
    if (in_k(y)) {
      m = static_cast<int>(orbit.size());
      break;
    }
    orbit.push_back(y);
    y = double_angle(y);
  }
  if (m < 0) return std::nullopt;

  std::vector<Angle> k_last;
  for (const Angle& x : k) {
    Angle z = x;
    for (int i = 0; i + 1 < n; ++i) z = double_angle(z);
    k_last.push_back(z);
  }
  std::sort(k_last.begin(), k_last.end());
  int side = -1;
  for (const Angle& x : k_last) {
    if (x == br.adot()) continue;
    const int s = br.symbol_of(x);
    if (side >= 0 && s != side) throw std::logic_error("class of alpha straddles the critical chord");
    side = s;
  }

  std::vector<Angle> c = k;
  for (int i = m - 1; i >= 0; --i) {
    const Angle& target = orbit[i];
    const bool critical = std::binary_search(c.begin(), c.end(), alpha);
    const int want = br.symbol_of(target);
    std::vector<Angle> next;
    if (!critical) {
      for (const Angle& x : c) {
        auto [p, q] = halves(x);
        next.push_back(br.symbol_of(p) == want ? p : q);
      }
    } else {
      std::vector<Angle> copy_dot{br.adot()}, copy_ddot{br.addot()};
      for (const Angle& x : c) {
        if (x == alpha) continue;
        auto [p, q] = halves(x);
        for (const Angle& r : {p, q}) (br.symbol_of(r) == side ? copy_dot : copy_ddot).push_back(r);
      }
      std::sort(copy_dot.begin(), copy_dot.end());
      if (copy_dot != k_last) throw std::logic_error("periodic pullback of the alpha class is inconsistent");
      next = std::find(copy_dot.begin(), copy_dot.end(), target) != copy_dot.end() ? copy_dot : copy_ddot;
    }
    std::sort(next.begin(), next.end());
    if (!std::binary_search(next.begin(), next.end(), target))
      throw std::logic_error("pullback lost the angle " + target.str());
    c = std::move(next);
  }
  return c;
}

bool julia_equivalent(const Angle& alpha, const Angle& t1, const Angle& t2) {
  if (t1 == t2) return true;
  const auto c1 = special_class(alpha, t1);
  const auto c2 = special_class(alpha, t2);
  if (c1 && c2) return std::binary_search(c1->begin(), c1->end(), t2);
  if (c1 || c2) return false;
  return itinerary(alpha, ExtendedAngle(t1)) == itinerary(alpha, ExtendedAngle(t2));
}

namespace {

std::string fmt(double v) {
  if (std::fabs(v) < 5e-7) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::pair<double, double> point_of(const Angle& a) {
  const double t = 2.0 * M_PI * a.value().convert_to<double>();
  return {std::cos(t), -std::sin(t)};
}

}  // namespace

std::string render_svg(const std::vector<Chord>& chords, const SvgStyle& style) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(style.size) +
         "\" height=\"" + std::to_string(style.size) + "\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n";
  out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.005\"/>\n";
  for (const Chord& c : chords) {
    auto [x1, y1] = point_of(c.a);
    auto [x2, y2] = point_of(c.b);
    std::string d = "M " + fmt(x1) + " " + fmt(y1) + " ";
    if (style.geodesic && !c.is_diameter()) {
      const double delta = 2.0 * M_PI * chord_length(c.a, c.b).convert_to<double>();
      const double r = std::tan(delta / 2.0);
      const bool ccw_short = c.b.value() - c.a.value() < Rational(1, 2);
      d += "A " + fmt(r) + " " + fmt(r) + " 0 0 " + (ccw_short ? "1" : "0") + " " + fmt(x2) + " " + fmt(y2);
    } else {
      d += "L " + fmt(x2) + " " + fmt(y2);
    }
    out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
    if (style.labels && c.label) {
      const std::string text = c.label->word.empty() ? "&#955;" : c.label->word;
      out += "<text x=\"" + fmt((x1 + x2) / 2) + "\" y=\"" + fmt((y1 + y2) / 2) +
             "\" font-size=\"0.04\">" + text + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace qmlkit
