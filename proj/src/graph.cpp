#include "qmlkit/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace qmlkit {

namespace {

enum class Kind { ccw, cw, chord };

struct Edge {
  int from, to;
  Kind kind;
};

struct Faces {
  std::vector<std::vector<int>> cycles;  // edge ids
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, int> chord_edge;  // (from, to) -> edge id
};

Faces trace_faces(const std::vector<Angle>& pts, const std::vector<std::pair<int, int>>& chords) {
  const int v = static_cast<int>(pts.size());
  Faces f;
  std::vector<std::vector<int>> rot(v);
  auto add = [&](int a, int b, Kind k) {
    f.edges.push_back({a, b, k});
    return static_cast<int>(f.edges.size()) - 1;
  };
  std::vector<int> ccw(v), cw(v);
  for (int i = 0; i < v; ++i) {
    ccw[i] = add(i, (i + 1) % v, Kind::ccw);
    cw[i] = add(i, (i + v - 1) % v, Kind::cw);
  }
  std::vector<std::vector<int>> chord_out(v);
  for (auto [a, b] : chords) {
    f.chord_edge[{a, b}] = add(a, b, Kind::chord);
    f.chord_edge[{b, a}] = add(b, a, Kind::chord);
    chord_out[a].push_back(f.chord_edge[{a, b}]);
    chord_out[b].push_back(f.chord_edge[{b, a}]);
  }
  for (int i = 0; i < v; ++i) {
    auto& out = chord_out[i];
    std::sort(out.begin(), out.end(), [&](int x, int y) {
      return arc_length(pts[i], pts[f.edges[x].to]) < arc_length(pts[i], pts[f.edges[y].to]);
    });
    rot[i].push_back(ccw[i]);
    rot[i].insert(rot[i].end(), out.begin(), out.end());
    rot[i].push_back(cw[i]);
  }
  auto reverse = [&](int e) {
    const Edge& x = f.edges[e];
    if (x.kind == Kind::ccw) return cw[x.to];
    if (x.kind == Kind::cw) return ccw[x.to];
    return f.chord_edge.at({x.to, x.from});
  };
  auto next = [&](int e) {
    const int r = reverse(e);
    const auto& r_list = rot[f.edges[e].to];
    const auto k = std::find(r_list.begin(), r_list.end(), r) - r_list.begin();
    return r_list[(k + r_list.size() - 1) % r_list.size()];
  };
  std::vector<bool> used(f.edges.size(), false);
  for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
    if (used[e] || f.edges[e].kind == Kind::cw) continue;
    std::vector<int> cycle;
    for (int x = e; !used[x]; x = next(x)) {
      used[x] = true;
      cycle.push_back(x);
    }
    f.cycles.push_back(cycle);
  }
  return f;
}

void require_narrow_or_flag(const CharacteristicArc& arc, bool experimental) {
  if (!arc.narrow && !experimental)
    throw domain_error(arc.str() + " is not narrow; pass the experimental flag to build it anyway");
}

}  // namespace

int Puzzle::piece_of(const ExtendedAngle& x) const {
  const int v = static_cast<int>(points.size());
  auto it = std::lower_bound(points.begin(), points.end(), x.angle);
  if (it != points.end() && *it == x.angle) {
    const int i = static_cast<int>(it - points.begin());
    if (x.marker == Marker::plus) return arc_owner[i];
    if (x.marker == Marker::minus) return arc_owner[(i + v - 1) % v];
    throw domain_error(x.str() + " lies on a puzzle boundary without a marker");
  }
  const int i = static_cast<int>(it - points.begin());
  return arc_owner[(i + v - 1) % v];
}

int Puzzle::index_of(const std::string& tag) const {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].tag == tag) return static_cast<int>(i);
  throw domain_error("no puzzle piece tagged " + tag);
}

Puzzle build_puzzles(const Angle& alpha, bool experimental) {
  Branches br(alpha);
  const Angle bar = associated_angle(alpha);
  Puzzle pz;
  pz.alpha = alpha;
  pz.arc = make_arc(alpha, bar);
  require_narrow_or_flag(pz.arc, experimental);
  const int n = pz.arc.period;
  const OrbitPortrait op = orbit_portrait(pz.arc);

  std::set<std::pair<Angle, Angle>> seen;
  auto add_chord = [&](const Chord& c) {
    if (seen.emplace(c.a, c.b).second) pz.chords.push_back(c);
  };
  for (const auto& a : op.arcs) add_chord(Chord(a.start, a.end));
  const Branches bb(bar);
  const Chord a0(br.addot(), bb.addot());
  const Chord crit(br.lower(), br.upper());
  add_chord(a0);
  add_chord(crit);

  std::set<Angle> pts;
  for (const Chord& c : pz.chords) {
    pts.insert(c.a);
    pts.insert(c.b);
  }
  pz.points.assign(pts.begin(), pts.end());
  auto idx = [&](const Angle& a) {
    return static_cast<int>(std::lower_bound(pz.points.begin(), pz.points.end(), a) - pz.points.begin());
  };
  std::vector<std::pair<int, int>> chord_idx;
  for (const Chord& c : pz.chords) chord_idx.emplace_back(idx(c.a), idx(c.b));
  const Faces faces = trace_faces(pz.points, chord_idx);
  if (faces.cycles.size() != pz.chords.size() + 1)
    throw std::logic_error("face count of " + pz.arc.str() + " does not match its chords");

  const int v = static_cast<int>(pz.points.size());
  pz.arc_owner.assign(v, -1);
  std::map<int, int> face_of_edge;
  for (std::size_t fi = 0; fi < faces.cycles.size(); ++fi) {
    PuzzlePiece piece;
    std::set<int> verts;
    for (int e : faces.cycles[fi]) {
      const Edge& x = faces.edges[e];
      face_of_edge[e] = static_cast<int>(fi);
      verts.insert(x.from);
      if (x.kind == Kind::ccw) {
        piece.arcs.emplace_back(pz.points[x.from], pz.points[x.to]);
        pz.arc_owner[x.from] = static_cast<int>(fi);
      } else {
        piece.chords.emplace_back(pz.points[x.from], pz.points[x.to]);
      }
    }
    for (int i : verts) piece.vertices.push_back(pz.points[i]);
    if (!piece.arcs.empty()) {
      const auto& [s, e] = piece.arcs.front();
      piece.symbol = br.symbol_of(Angle(s.value() + arc_length(s, e) / 2));
    } else {
      for (const Angle& p : piece.vertices)
        if (br.symbol_of(p) >= 0) piece.symbol = br.symbol_of(p);
    }
    pz.pieces.push_back(std::move(piece));
  }

  auto side = [&](const Angle& p, const Angle& q) {
    return face_of_edge.at(faces.chord_edge.at({idx(q), idx(p)}));
  };
  std::vector<std::string> tags(pz.pieces.size());
  auto tag = [&](int f, const std::string& t, bool optional) {
    if (!tags[f].empty()) {
      if (optional) return;
      throw std::logic_error("piece tagged both " + tags[f] + " and " + t + " in " + pz.arc.str());
    }
    tags[f] = t;
  };

  if (experimental && !pz.arc.narrow) {
    std::vector<int> order(pz.pieces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return pz.pieces[x].vertices.front() != pz.pieces[y].vertices.front()
                 ? pz.pieces[x].vertices.front() < pz.pieces[y].vertices.front()
                 : pz.pieces[x].vertices.size() < pz.pieces[y].vertices.size();
    });
    for (std::size_t k = 0; k < order.size(); ++k) tags[order[k]] = "Q" + std::to_string(k);
  } else {
    for (int i = 1; i < n; ++i) tag(side(op.arcs[i - 1].start, op.arcs[i - 1].end), "P" + std::to_string(i), false);
    tag(side(br.lower(), br.upper()), "P0_0", false);
    tag(side(br.upper(), br.lower()), "P0_1", false);
    const Angle& far = br.addot() == br.lower() ? br.upper() : br.lower();
    if (in_open_arc(far, a0.a, a0.b))
      tag(side(a0.b, a0.a), "P_D", false);
    else
      tag(side(a0.a, a0.b), "P_D", false);
    tag(side(op.arcs[n - 1].end, op.arcs[n - 1].start), "P_U", true);
    for (std::size_t f = 0; f < tags.size(); ++f)
      if (tags[f].empty()) throw std::logic_error("untagged puzzle piece in " + pz.arc.str());
  }
  for (std::size_t f = 0; f < tags.size(); ++f) pz.pieces[f].tag = tags[f];

  auto rank = [&](const std::string& t) {
    if (t == "P0_0") return 0;
    if (t == "P0_1") return 1;
    if (t == "P_U") return n + 1;
    if (t == "P_D") return n + 2;
    return std::stoi(t.substr(1)) + (t[0] == 'P' ? 1 : 0);
  };
  std::vector<int> order(pz.pieces.size()), where(pz.pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return rank(tags[x]) < rank(tags[y]); });
  std::vector<PuzzlePiece> sorted;
  for (std::size_t k = 0; k < order.size(); ++k) {
    where[order[k]] = static_cast<int>(k);
    sorted.push_back(std::move(pz.pieces[order[k]]));
  }
  pz.pieces = std::move(sorted);
  for (int& o : pz.arc_owner) o = where[o];
  return pz;
}

namespace {

bool in_closed_arc(const Angle& x, const Angle& a, const Angle& b) {
  return x == a || x == b || in_open_arc(x, a, b);
}

}  // namespace

TransitionGraph build_graph(const Angle& alpha, bool experimental) {
  TransitionGraph g;
  g.puzzle = build_puzzles(alpha, experimental);
  const auto& pieces = g.puzzle.pieces;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::vector<std::pair<Angle, Angle>> image;
    bool everything = false;
    for (const auto& [a, b] : pieces[i].arcs) {
      if (arc_length(a, b) >= Rational(1, 2)) everything = true;
      image.emplace_back(double_angle(a), double_angle(b));
    }
    std::vector<Angle> image_vertices;
    for (const Angle& p : pieces[i].vertices) image_vertices.push_back(double_angle(p));
    auto covered_open = [&](const Angle& x) {
      if (everything) return true;
      for (const auto& [a, b] : image)
        if (in_open_arc(x, a, b)) return true;
      return false;
    };
    auto covered_closed = [&](const Angle& x) {
      if (everything) return true;
      if (std::find(image_vertices.begin(), image_vertices.end(), x) != image_vertices.end()) return true;
      for (const auto& [a, b] : image)
        if (in_closed_arc(x, a, b)) return true;
      return false;
    };
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      bool inside = true;
      if (!pieces[j].arcs.empty()) {
        for (const auto& [a, b] : pieces[j].arcs)
          inside = inside && covered_open(Angle(a.value() + arc_length(a, b) / 2));
      } else {
        for (const Angle& p : pieces[j].vertices) inside = inside && covered_closed(p);
      }
      if (inside) g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

std::vector<std::string> TransitionGraph::successors(const std::string& tag) const {
  const int i = puzzle.index_of(tag);
  std::vector<std::string> out;
  for (auto [a, b] : edges)
    if (a == i) out.push_back(puzzle.pieces[b].tag);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> TransitionGraph::predecessors(const std::string& tag) const {
  const int i = puzzle.index_of(tag);
  std::vector<std::string> out;
  for (auto [a, b] : edges)
    if (b == i) out.push_back(puzzle.pieces[a].tag);
  std::sort(out.begin(), out.end());
  return out;
}

bool same_labeled_graph(const TransitionGraph& g1, const TransitionGraph& g2) {
  auto labeled = [](const TransitionGraph& g) {
    std::set<std::pair<std::string, std::string>> e;
    for (auto [a, b] : g.edges) e.emplace(g.puzzle.pieces[a].tag, g.puzzle.pieces[b].tag);
    std::set<std::string> t;
    for (const auto& p : g.puzzle.pieces) t.insert(p.tag);
    return std::pair{t, e};
  };
  return labeled(g1) == labeled(g2);
}

std::vector<std::string> lift_path(const Puzzle& puzzle, const ExtendedAngle& theta, int length) {
  std::vector<std::string> path;
  ExtendedAngle x = theta;
  for (int i = 0; i < length; ++i) {
    path.push_back(puzzle.pieces[puzzle.piece_of(x)].tag);
    x = marked_double(x);
  }
  return path;
}

Word path_symbols(const Puzzle& puzzle, const std::vector<std::string>& path) {
  Word w;
  for (const auto& t : path) w.push_back(static_cast<char>('0' + puzzle.pieces[puzzle.index_of(t)].symbol));
  return w;
}

namespace {

int piece_or_plus(const Puzzle& pz, const ExtendedAngle& x) {
  if (x.marker != Marker::none) return pz.piece_of(x);
  if (std::binary_search(pz.points.begin(), pz.points.end(), x.angle))
    return pz.piece_of(ExtendedAngle(x.angle, Marker::plus));
  return pz.piece_of(x);
}

bool is_p0(const std::string& t) { return t.rfind("P0_", 0) == 0; }

}  // namespace

RewriteGraphs rewrite_graphs(const Angle& alpha, bool experimental) {
  return {build_puzzles(alpha, experimental), build_puzzles(associated_angle(alpha), experimental)};
}

RewriteResult graph_rewrite(const Angle& alpha, const EpSequence& s, bool experimental) {
  return graph_rewrite(rewrite_graphs(alpha, experimental), s);
}

RewriteResult graph_rewrite(const RewriteGraphs& graphs, const EpSequence& s) {
  if (s.has_star()) throw domain_error("sequence " + s.str() + " contains *");
  const Puzzle& pa = graphs.source;
  const Puzzle& pb = graphs.target;
  const Angle& alpha = pa.alpha;
  const bool check = pa.arc.narrow;
  std::set<EpSequence> outs;
  for (const ExtendedAngle& theta : lift_sequence(alpha, s)) {
    std::map<ExtendedAngle, std::size_t> seen;
    std::string in_sym, out_sym;
    ExtendedAngle x = theta;
    while (seen.emplace(x, out_sym.size()).second) {
      const int ia = piece_or_plus(pa, x);
      const int ib = piece_or_plus(pb, x);
      const std::string& ta = pa.pieces[ia].tag;
      const std::string& tb = pb.pieces[ib].tag;
      if (check && ta != tb && !(is_p0(ta) && is_p0(tb)))
        throw std::logic_error("paths of " + theta.str() + " disagree: " + ta + " vs " + tb);
      in_sym.push_back(static_cast<char>('0' + pa.pieces[ia].symbol));
      out_sym.push_back(static_cast<char>('0' + pb.pieces[ib].symbol));
      x = marked_double(x);
    }
    const std::size_t start = seen.at(x);
    if (check && EpSequence(in_sym.substr(0, start), in_sym.substr(start)) != s)
      throw std::logic_error("path symbols of " + theta.str() + " do not recover " + s.str());
    outs.insert(EpSequence(out_sym.substr(0, start), out_sym.substr(start)));
  }
  if (outs.empty()) throw std::logic_error("empty fiber over " + s.str());
  RewriteResult r;
  r.outputs.assign(outs.begin(), outs.end());
  r.ambiguous = r.outputs.size() > 1;
  return r;
}

Word graph_rewrite_prefix(const Angle& alpha, const Word& s, bool experimental) {
  const RewriteResult r = graph_rewrite(alpha, EpSequence(s, "1"), experimental);
  return r.outputs.front().prefix(s.size());
}

std::string to_dot(const TransitionGraph& g) {
  std::string out = "digraph transition {\n";
  out += "  label=\"" + g.puzzle.arc.str() + "\";\n";
  for (const auto& p : g.puzzle.pieces)
    out += "  \"" + p.tag + "\" [label=\"" + p.tag + "\", symbol=" + std::to_string(p.symbol) + "];\n";
  std::vector<std::pair<std::string, std::string>> e;
  for (auto [a, b] : g.edges) e.emplace_back(g.puzzle.pieces[a].tag, g.puzzle.pieces[b].tag);
  std::sort(e.begin(), e.end());
  for (const auto& [a, b] : e) out += "  \"" + a + "\" -> \"" + b + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace qmlkit
