#pragma once

#include "qmlkit/angle.hpp"
#include "qmlkit/kneading.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qmlkit {

struct Lamination {
  Angle alpha;
  std::vector<Chord> chords;
};

/// The long chord and its labeled preimages for words of length < k.
Lamination lamination_step(const Angle& alpha, int k);

/// Root chord alpha-alphabar plus l^{1-e}_w of it for |w| <= depth.
Lamination boundary_lamination(const Angle& alpha, int depth);

struct QuadGap {
  std::array<Angle, 4> vertices;  // counterclockwise from the smallest
  Word prefix;
  std::vector<Chord> short_sides;
  std::vector<Chord> long_sides;
};

struct QuadLamination {
  Angle alpha;
  std::vector<QuadGap> gaps;
  Lamination long_chords;   // root chord included
  Lamination short_chords;
};

QuadLamination quad_lamination(const Angle& alpha, int depth);

/// Prefix w with theta in the infinite gap G_w, when there is one.
std::optional<Word> gap_encoding(const Angle& alpha, const ExtendedAngle& theta);

/// Open arc (start, end); start+ and end- belong to it.
struct RegionArc {
  Angle start, end;
};

struct Region {
  Word word;
  std::vector<RegionArc> arcs;    // counterclockwise order
  std::vector<Chord> boundary;    // chords joining consecutive arcs
  bool contains(const ExtendedAngle& x) const;
};

/// Extended angles whose itinerary starts with x.
Region region_of_word(const Angle& alpha, const Word& x);

/// Angles of theta's class when its orbit meets the class of alpha.
std::optional<std::vector<Angle>> special_class(const Angle& alpha, const Angle& theta);

bool julia_equivalent(const Angle& alpha, const Angle& t1, const Angle& t2);

/// Union-find classes of the chord endpoints.
std::vector<std::vector<Angle>> chord_classes(const std::vector<Chord>& chords);

struct SvgStyle {
  bool geodesic = false;
  bool labels = false;
  int size = 512;
};

std::string render_svg(const std::vector<Chord>& chords, const SvgStyle& style = {});

}  // namespace qmlkit
