#pragma once

#include "qmlkit/angle.hpp"
#include "qmlkit/kneading.hpp"
#include "qmlkit/qml.hpp"
#include "qmlkit/rewrite.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qmlkit {

struct PuzzlePiece {
  std::string tag;
  int symbol = 0;
  std::vector<std::pair<Angle, Angle>> arcs;  // elementary counterclockwise arcs
  std::vector<Angle> vertices;
  std::vector<Chord> chords;
};

struct Puzzle {
  Angle alpha;
  CharacteristicArc arc;
  std::vector<Chord> chords;
  std::vector<Angle> points;     // sorted chord endpoints
  std::vector<int> arc_owner;    // piece of the arc from points[i] to points[i+1]
  std::vector<PuzzlePiece> pieces;

  int piece_of(const ExtendedAngle& x) const;
  int index_of(const std::string& tag) const;
};

/// Pieces cut by the portrait chords, the chord of the other preimages and the critical diameter.
Puzzle build_puzzles(const Angle& alpha, bool experimental = false);

struct TransitionGraph {
  Puzzle puzzle;
  std::vector<std::pair<int, int>> edges;  // sorted piece indices

  std::vector<std::string> successors(const std::string& tag) const;
  std::vector<std::string> predecessors(const std::string& tag) const;
};

TransitionGraph build_graph(const Angle& alpha, bool experimental = false);

/// Same tags and the same tagged edges.
bool same_labeled_graph(const TransitionGraph& g1, const TransitionGraph& g2);

std::vector<std::string> lift_path(const Puzzle& puzzle, const ExtendedAngle& theta, int length);
Word path_symbols(const Puzzle& puzzle, const std::vector<std::string>& path);

/// Puzzles of alpha and of its companion, built once for repeated rewrites.
struct RewriteGraphs {
  Puzzle source, target;
};

RewriteGraphs rewrite_graphs(const Angle& alpha, bool experimental = false);

RewriteResult graph_rewrite(const RewriteGraphs& graphs, const EpSequence& s);
RewriteResult graph_rewrite(const Angle& alpha, const EpSequence& s, bool experimental = false);

/// Finite word, read as the word followed by all ones.
Word graph_rewrite_prefix(const Angle& alpha, const Word& s, bool experimental = false);

std::string to_dot(const TransitionGraph& g);

}  // namespace qmlkit
