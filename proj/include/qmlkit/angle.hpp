#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmlkit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Symbols over {0,1}.
using Word = std::string;

class domain_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point of R/Z stored as a reduced fraction in [0, 1).
class Angle {
public:
  Angle() = default;
  Angle(const Int& num, const Int& den);
  explicit Angle(const Rational& r);
  Angle(long long num, long long den) : Angle(Int(num), Int(den)) {}

  /// Accepts "p/q", an integer, or a binary form "0.pre(per)".
  static Angle parse(std::string_view text);

  Int num() const { return boost::multiprecision::numerator(v_); }
  Int den() const { return boost::multiprecision::denominator(v_); }
  const Rational& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  std::string str() const;

  friend bool operator==(const Angle& a, const Angle& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Angle operator+(const Angle& a, const Angle& b) { return Angle(a.v_ + b.v_); }
  friend Angle operator-(const Angle& a, const Angle& b) { return Angle(a.v_ - b.v_); }

private:
  Rational v_{0};
};

std::ostream& operator<<(std::ostream& os, const Angle& a);

Angle double_angle(const Angle& a);

/// The two preimages under doubling, smaller first.
std::pair<Angle, Angle> halves(const Angle& a);

struct OrbitClass {
  int preperiod = 0;
  int period = 1;
  std::vector<Angle> orbit;
};

OrbitClass orbit_classification(const Angle& a);

/// Exact doubling period; throws domain_error when a is not periodic.
int period_of(const Angle& a);

struct BinaryExpansion {
  Word preperiod;
  Word period;
};

BinaryExpansion binary_expansion(const Angle& a);
Angle angle_from_binary(const Word& preperiod, const Word& period);

/// Counterclockwise length from a to b in [0, 1).
Rational arc_length(const Angle& a, const Angle& b);

/// x in the open counterclockwise arc from a to b; a == b means the circle minus a.
bool in_open_arc(const Angle& x, const Angle& a, const Angle& b);

/// Chord length measured along the shorter side, in [0, 1/2].
Rational chord_length(const Angle& a, const Angle& b);

/// Inverse branches of doubling cut along the diameter through a/2 and (a+1)/2.
class Branches {
public:
  explicit Branches(const Angle& alpha);

  const Angle& alpha() const { return alpha_; }
  int period() const { return n_; }
  /// The periodic preimage of alpha, equal to h^(n-1)(alpha).
  const Angle& adot() const { return adot_; }
  /// The other preimage of alpha.
  const Angle& addot() const { return addot_; }
  /// alpha/2 and (alpha+1)/2, the ends of the arc A.
  const Angle& lower() const { return lower_; }
  const Angle& upper() const { return upper_; }

  int symbol_of(const Angle& x) const;  // 0, 1, or -1 on the boundary
  Angle step(char s, int t, const Angle& x) const;
  Angle apply(const Word& w, int t, const Angle& x) const;

private:
  Angle alpha_;
  int n_;
  Angle adot_, addot_, lower_, upper_;
};

Angle inverse_branch(const Angle& alpha, int t, const Word& w, const Angle& theta);

struct ChordLabel {
  Word word;
  int t = 0;
  friend bool operator==(const ChordLabel&, const ChordLabel&) = default;
};

struct Chord {
  Angle a, b;  // a <= b
  std::optional<ChordLabel> label;

  Chord() = default;
  Chord(const Angle& x, const Angle& y, std::optional<ChordLabel> l = std::nullopt);

  bool degenerate() const { return a == b; }
  bool is_diameter() const;
  bool same_endpoints(const Chord& o) const { return a == o.a && b == o.b; }
  std::string str() const;
};

bool chords_cross(const Chord& c1, const Chord& c2);
bool point_behind(const Chord& c, const Angle& p);
/// Every point behind c1 is behind c2.
bool chord_nested_in(const Chord& c1, const Chord& c2);

struct ChordRelations {
  bool crosses = false;
  bool nests = false;
  bool point_behind = false;
};

ChordRelations chord_relations(const Chord& c1, const Chord& c2, const Angle& p);

Int pow2(int k);

}  // namespace qmlkit
