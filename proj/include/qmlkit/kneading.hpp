#pragma once

#include "qmlkit/angle.hpp"

#include <string>
#include <vector>

namespace qmlkit {

enum class Marker { none, plus, minus };

/// An angle with an optional one-sided marker.
struct ExtendedAngle {
  Angle angle;
  Marker marker = Marker::none;

  ExtendedAngle() = default;
  ExtendedAngle(Angle a, Marker m = Marker::none) : angle(std::move(a)), marker(m) {}

  /// "p/q", "p/q+" or "p/q-".
  static ExtendedAngle parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const ExtendedAngle&, const ExtendedAngle&) = default;
  friend bool operator<(const ExtendedAngle& x, const ExtendedAngle& y) {
    if (x.angle != y.angle) return x.angle < y.angle;
    auto rank = [](Marker m) { return m == Marker::minus ? 0 : m == Marker::none ? 1 : 2; };
    return rank(x.marker) < rank(y.marker);
  }
};

/// Eventually periodic sequence over {0,1,*}, kept in canonical form.
class EpSequence {
public:
  EpSequence() : per_("0") {}
  EpSequence(std::string preperiod, std::string period);

  /// Text form "pre(per)", e.g. "00(100)".
  static EpSequence parse(std::string_view text);

  const std::string& preperiod() const { return pre_; }
  const std::string& period() const { return per_; }
  char at(std::size_t i) const;
  std::string prefix(std::size_t len) const;
  EpSequence shifted(std::size_t k = 1) const;
  bool has_star() const;
  std::string str() const;

  friend bool operator==(const EpSequence&, const EpSequence&) = default;
  friend auto operator<=>(const EpSequence& x, const EpSequence& y) {
    if (auto c = x.pre_ <=> y.pre_; c != 0) return c;
    return x.per_ <=> y.per_;
  }

private:
  std::string pre_, per_;
};

bool is_precritical(const Angle& alpha, const Angle& theta);

EpSequence itinerary(const Angle& alpha, const ExtendedAngle& theta);

/// Like itinerary, but a marker on an angle that never reaches alpha is ignored.
EpSequence itinerary_lenient(const Angle& alpha, const ExtendedAngle& theta);

Word repetition_word(const Angle& alpha);

/// Doubling orbit of alpha fused with the repetition word and characteristic symbol.
struct KneadingData {
  Angle alpha;
  Angle companion;
  int period = 0;
  Word v;
  int e = 0;
};

KneadingData kneading_data(const Angle& alpha);

int characteristic_symbol(const Angle& alpha);

/// The three independent determinations of the characteristic symbol.
struct SymbolRoutes {
  int parity = 0;
  int separation = 0;
  int triangle = 0;
};

SymbolRoutes characteristic_symbol_routes(const Angle& alpha);

Angle associated_angle(const Angle& alpha);

Angle tune(const Angle& lo, const Angle& hi, const Angle& theta);

bool is_alpha_regular(const Word& w, const Word& v);

}  // namespace qmlkit
