#pragma once

#include "qmlkit/angle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmlkit {

/// A companion pair (lo, hi) with lo < hi.
struct CharacteristicArc {
  Angle lo, hi;
  int period = 0;
  Rational width;
  bool narrow = false;
  bool satellite = false;

  std::string str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }
};

/// Validates the pair and fills in the metadata.
CharacteristicArc make_arc(const Angle& a, const Angle& b);

/// Leaf endpoints as numerators over 2^period - 1.
struct Leaf {
  int period = 0;
  std::uint64_t lo = 0, hi = 0;
};

std::vector<Leaf> lavaurs_leaves(int max_period);
std::vector<CharacteristicArc> lavaurs_generate(int max_period);

struct PortraitArc {
  Angle start, end;  // counterclockwise from start to end
  Rational length() const { return arc_length(start, end); }
};

struct OrbitPortrait {
  std::vector<PortraitArc> arcs;
};

OrbitPortrait orbit_portrait(const CharacteristicArc& arc);

struct Narrowness {
  bool narrow = false;
  int first_nesting_index = 0;
  std::optional<CharacteristicArc> longest_nested_narrow;
};

Narrowness narrowness(const CharacteristicArc& arc);

using InternalAddress = std::vector<int>;

InternalAddress internal_address(const CharacteristicArc& arc);
InternalAddress internal_address_from_word(const Word& v);
bool is_simply_renormalizable(const CharacteristicArc& arc);
bool address_renormalizable(const InternalAddress& addr);

/// Repetition word of a / (2^n - 1) by integer arithmetic.
Word kneading_word_fast(std::uint64_t a, int n);

struct RatioRow {
  int period = 0;
  long narrow = 0, non_narrow = 0, total = 0;
  long nonrenorm_non_narrow = 0, nonrenorm_total = 0;
  std::string ratio;  // six decimals
};

struct ArcRow {
  int period = 0;
  Angle lo, hi;
  Word kneading;
  InternalAddress address;
};

struct Tables {
  std::vector<RatioRow> ratio_rows;
  std::vector<ArcRow> arc_rows;
};

/// Rows for every non-prime period in [4, max_period].
Tables generate_tables(int max_period);

std::string format_ratio(long num, long den);
std::string address_str(const InternalAddress& a);

}  // namespace qmlkit
