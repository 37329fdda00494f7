#include "qmlkit/kneading.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace qmlkit {

ExtendedAngle ExtendedAngle::parse(std::string_view text) {
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw parse_error("empty extended angle");
  Marker m = Marker::none;
  if (text.back() == '+') m = Marker::plus;
  if (text.back() == '-') m = Marker::minus;
  if (m != Marker::none) text.remove_suffix(1);
  return ExtendedAngle(Angle::parse(text), m);
}

std::string ExtendedAngle::str() const {
  std::string s = angle.str();
  if (marker == Marker::plus) s += "+";
  if (marker == Marker::minus) s += "-";
  return s;
}

EpSequence::EpSequence(std::string preperiod, std::string period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw domain_error("sequence period must be nonempty");
  for (char c : pre_ + per_)
    if (c != '0' && c != '1' && c != '*') throw domain_error("sequence symbols must be 0, 1 or *");
  const std::size_t p = per_.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = per_[i] == per_[i - d];
    if (ok) {
      per_.resize(d);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    per_.insert(per_.begin(), per_.back());
    per_.pop_back();
    pre_.pop_back();
  }
}

EpSequence EpSequence::parse(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')')
    throw parse_error("sequence must look like pre(per): " + std::string(text));
  std::string pre(text.substr(0, open));
  std::string per(text.substr(open + 1, text.size() - open - 2));
  if (per.empty()) throw parse_error("empty period in " + std::string(text));
  for (char c : pre + per)
    if (c != '0' && c != '1' && c != '*') throw parse_error("bad symbol in " + std::string(text));
  return EpSequence(pre, per);
}

char EpSequence::at(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

std::string EpSequence::prefix(std::size_t len) const {
  std::string s;
  s.reserve(len);
  for (std::size_t i = 0; i < len; ++i) s.push_back(at(i));
  return s;
}

EpSequence EpSequence::shifted(std::size_t k) const {
  if (k <= pre_.size()) return EpSequence(pre_.substr(k), per_);
  std::size_t r = (k - pre_.size()) % per_.size();
  return EpSequence("", per_.substr(r) + per_.substr(0, r));
}

bool EpSequence::has_star() const {
  return pre_.find('*') != std::string::npos || per_.find('*') != std::string::npos;
}

std::string EpSequence::str() const { return pre_ + "(" + per_ + ")"; }

namespace {

struct Orbit {
  std::string symbols;
  std::size_t start = 0;
  bool hits_alpha = false;
};

template <class I, class Map>
Orbit walk(I y, const I& D, const I& L, const I& R, Marker m) {
  Orbit o;
  Map seen;
  const I a2 = (L * 2) % D;
  while (true) {
    auto [it, fresh] = seen.emplace(y, o.symbols.size());
    if (!fresh) {
      o.start = it->second;
      return o;
    }
    if (y == a2) o.hits_alpha = true;
    char c;
    if (y == L)
      c = m == Marker::plus ? '0' : m == Marker::minus ? '1' : '*';
    else if (y == R)
      c = m == Marker::plus ? '1' : m == Marker::minus ? '0' : '*';
    else
      c = (L < y && y < R) ? '0' : '1';
    o.symbols.push_back(c);
    y = (y * 2) % D;
  }
}

Orbit orbit_symbols(const Angle& alpha, const ExtendedAngle& theta) {
  const Int a = alpha.num(), q = alpha.den();
  const Int x = theta.angle.num(), d = theta.angle.den();
  const Int q2 = q * 2;
  const Int D = boost::multiprecision::lcm(d, q2);
  const Int L = a * (D / q2);
  const Int R = (a + q) * (D / q2);
  const Int y0 = x * (D / d);
  if (D < (Int(1) << 61)) {
    using ll = long long;
    return walk<ll, std::unordered_map<ll, std::size_t>>(static_cast<ll>(y0), static_cast<ll>(D),
                                                         static_cast<ll>(L), static_cast<ll>(R),
                                                         theta.marker);
  }
  return walk<Int, std::map<Int, std::size_t>>(y0, D, L, R, theta.marker);
}

void require_periodic_alpha(const Angle& alpha) {
  if (alpha.is_zero()) throw domain_error("alpha must be nonzero");
  period_of(alpha);
}

}  // namespace

bool is_precritical(const Angle& alpha, const Angle& theta) {
  return orbit_symbols(alpha, ExtendedAngle(theta)).hits_alpha;
}

EpSequence itinerary(const Angle& alpha, const ExtendedAngle& theta) {
  require_periodic_alpha(alpha);
  Orbit o = orbit_symbols(alpha, theta);
  if (theta.marker != Marker::none && !o.hits_alpha)
    throw domain_error("marker on " + theta.str() + " which never reaches " + alpha.str());
  return EpSequence(o.symbols.substr(0, o.start), o.symbols.substr(o.start));
}

EpSequence itinerary_lenient(const Angle& alpha, const ExtendedAngle& theta) {
  require_periodic_alpha(alpha);
  Orbit o = orbit_symbols(alpha, theta);
  return EpSequence(o.symbols.substr(0, o.start), o.symbols.substr(o.start));
}

Word repetition_word(const Angle& alpha) {
  EpSequence k = itinerary(alpha, ExtendedAngle(alpha));
  const int n = period_of(alpha);
  if (!k.preperiod().empty() || static_cast<int>(k.period().size()) != n || k.period().back() != '*')
    throw std::logic_error("kneading sequence of " + alpha.str() + " is not of the form (v*)");
  return k.period().substr(0, n - 1);
}

namespace {

Rational signed_rep(Rational r) {
  while (r > Rational(1, 2)) r -= 1;
  while (r <= Rational(-1, 2)) r += 1;
  return r;
}

bool separates(const Chord& c, const Chord& other) {
  const Angle zero;
  bool s0 = in_open_arc(zero, c.a, c.b);
  bool sa = in_open_arc(other.a, c.a, c.b);
  bool sb = in_open_arc(other.b, c.a, c.b);
  return sa == sb && sa != s0;
}

}  // namespace

Angle associated_angle(const Angle& alpha) {
  Branches br(alpha);
  const int m = br.period();
  Word v = repetition_word(alpha);
  Angle y = br.apply(v, 0, br.addot());
  Rational delta = signed_rep(y.value() - alpha.value());
  Int p = pow2(m);
  return Angle(alpha.value() + Rational(p, p - 1) * delta);
}

SymbolRoutes characteristic_symbol_routes(const Angle& alpha) {
  Branches ba(alpha);
  const int n = ba.period();
  Angle companion = associated_angle(alpha);
  Branches bc(companion);
  SymbolRoutes r;

  const Angle& lo = alpha < companion ? alpha : companion;
  Int scaled = lo.num() * ((pow2(n) - 1) / lo.den());
  r.parity = static_cast<int>(scaled % 2);

  Chord dots(ba.adot(), bc.adot());
  Chord ddots(ba.addot(), bc.addot());
  if (separates(dots, ddots))
    r.separation = 0;
  else if (separates(ddots, dots))
    r.separation = 1;
  else
    throw std::logic_error("no separating chord for " + alpha.str());

  Word w = "0" + repetition_word(alpha);
  int shorter = -1;
  for (int t = 0; t < 2; ++t) {
    Chord s(ba.apply(w, t, ba.adot()), ba.apply(w, t, ba.addot()));
    if (chord_length(s.a, s.b) < Rational(1, 4)) {
      if (shorter >= 0) throw std::logic_error("both triangle sides short for " + alpha.str());
      shorter = t;
    }
  }
  if (shorter < 0) throw std::logic_error("no short triangle side for " + alpha.str());
  r.triangle = shorter;
  return r;
}

int characteristic_symbol(const Angle& alpha) {
  SymbolRoutes r = characteristic_symbol_routes(alpha);
  if (r.parity != r.separation || r.parity != r.triangle)
    throw std::logic_error("characteristic symbol routes disagree for " + alpha.str());
  return r.parity;
}

KneadingData kneading_data(const Angle& alpha) {
  KneadingData k;
  k.alpha = alpha;
  k.period = period_of(alpha);
  k.v = repetition_word(alpha);
  k.companion = associated_angle(alpha);
  k.e = characteristic_symbol(alpha);
  return k;
}

Angle tune(const Angle& lo, const Angle& hi, const Angle& theta) {
  if (lo.is_zero() || hi.is_zero() || lo == hi || associated_angle(lo) != hi)
    throw domain_error(lo.str() + " and " + hi.str() + " are not a companion pair");
  const Angle& a = lo < hi ? lo : hi;
  const Angle& b = lo < hi ? hi : lo;
  const Word w0 = binary_expansion(a).period;
  const Word w1 = binary_expansion(b).period;
  BinaryExpansion t = binary_expansion(theta);
  auto subst = [&](const Word& w) {
    Word out;
    for (char c : w) out += (c == '0') ? w0 : w1;
    return out;
  };
  return angle_from_binary(subst(t.preperiod), subst(t.period));
}

bool is_alpha_regular(const Word& w, const Word& v) {
  if (w.size() < v.size() + 1) return true;
  return w.compare(w.size() - v.size(), v.size(), v) != 0;
}

}  // namespace qmlkit
