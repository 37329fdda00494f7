#include "qmlkit/angle.hpp"

#include <cctype>
#include <map>
#include <ostream>

namespace qmlkit {

namespace {

Rational frac(const Rational& r) {
  Int n = boost::multiprecision::numerator(r);
  Int d = boost::multiprecision::denominator(r);
  Int m = n % d;
  if (m < 0) m += d;
  return Rational(m, d);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Int parse_int(std::string_view s) {
  if (s.empty()) throw parse_error("empty integer");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw parse_error("bad integer: " + std::string(s));
  Int v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw parse_error("bad integer: " + std::string(s));
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Int(-v) : v;
}

Int binary_value(const Word& w) {
  Int v = 0;
  for (char c : w) {
    if (c != '0' && c != '1') throw parse_error("binary digit expected");
    v = v * 2 + (c - '0');
  }
  return v;
}

}  // namespace

Int pow2(int k) {
  Int r = 1;
  r <<= k;
  return r;
}

Angle::Angle(const Int& num, const Int& den) {
  if (den == 0) throw domain_error("zero denominator");
  v_ = frac(Rational(num, den));
}

Angle::Angle(const Rational& r) : v_(frac(r)) {}

Angle Angle::parse(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw parse_error("empty angle");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Int p = parse_int(trim(s.substr(0, slash)));
    Int q = parse_int(trim(s.substr(slash + 1)));
    if (q == 0) throw parse_error("zero denominator");
    return Angle(p, q);
  }
  if (s.size() >= 2 && s[0] == '0' && s[1] == '.') {
    auto body = s.substr(2);
    auto open = body.find('(');
    Word pre, per;
    if (open == std::string_view::npos) {
      pre = Word(body);
      per = "0";
    } else {
      if (body.back() != ')') throw parse_error("unterminated period in " + std::string(s));
      pre = Word(body.substr(0, open));
      per = Word(body.substr(open + 1, body.size() - open - 2));
      if (per.empty()) throw parse_error("empty period in " + std::string(s));
    }
    for (char c : pre + per)
      if (c != '0' && c != '1') throw parse_error("bad binary angle " + std::string(s));
    return angle_from_binary(pre, per);
  }
  return Angle(parse_int(s), Int(1));
}

std::string Angle::str() const {
  if (v_ == 0) return "0";
  return num().str() + "/" + den().str();
}

std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

Angle double_angle(const Angle& a) { return Angle(a.value() * 2); }

std::pair<Angle, Angle> halves(const Angle& a) {
  Angle lo(a.value() / 2);
  Angle hi(a.value() / 2 + Rational(1, 2));
  return {lo, hi};
}

OrbitClass orbit_classification(const Angle& a) {
  OrbitClass oc;
  std::map<Angle, int> seen;
  Angle x = a;
  while (!seen.count(x)) {
    seen.emplace(x, static_cast<int>(oc.orbit.size()));
    oc.orbit.push_back(x);
    x = double_angle(x);
  }
  oc.preperiod = seen[x];
  oc.period = static_cast<int>(oc.orbit.size()) - oc.preperiod;
  return oc;
}

int period_of(const Angle& a) {
  Int d = a.den();
  if (d % 2 == 0) throw domain_error("angle " + a.str() + " is not periodic");
  if (d == 1) return 1;
  Int x = 2 % d;
  int k = 1;
  while (x != 1) {
    x = (x * 2) % d;
    ++k;
  }
  return k;
}

BinaryExpansion binary_expansion(const Angle& a) {
  Int d = a.den();
  int pre = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++pre;
  }
  int per = 1;
  if (d > 1) {
    Int x = 2 % d;
    while (x != 1) {
      x = (x * 2) % d;
      ++per;
    }
  }
  BinaryExpansion be;
  Rational x = a.value();
  for (int i = 0; i < pre + per; ++i) {
    x *= 2;
    char digit = x >= 1 ? '1' : '0';
    if (digit == '1') x -= 1;
    (i < pre ? be.preperiod : be.period).push_back(digit);
  }
  return be;
}

Angle angle_from_binary(const Word& preperiod, const Word& period) {
  if (period.empty()) throw domain_error("empty binary period");
  Int p = binary_value(preperiod);
  Int q = binary_value(period);
  Int m = pow2(static_cast<int>(period.size())) - 1;
  Rational v = (Rational(p) + Rational(q, m)) / Rational(pow2(static_cast<int>(preperiod.size())));
  return Angle(v);
}

Rational arc_length(const Angle& a, const Angle& b) {
  Rational d = b.value() - a.value();
  if (d < 0) d += 1;
  return d;
}

bool in_open_arc(const Angle& x, const Angle& a, const Angle& b) {
  if (a == b) return x != a;
  Rational dx = arc_length(a, x);
  return dx > 0 && dx < arc_length(a, b);
}

Rational chord_length(const Angle& a, const Angle& b) {
  Rational l = arc_length(a, b);
  return l <= Rational(1, 2) ? l : 1 - l;
}

Branches::Branches(const Angle& alpha) : alpha_(alpha) {
  if (alpha.is_zero()) throw domain_error("alpha must be nonzero");
  n_ = period_of(alpha);
  auto [lo, hi] = halves(alpha);
  lower_ = lo;
  upper_ = hi;
  Angle x = alpha;
  for (int i = 0; i + 1 < n_; ++i) x = double_angle(x);
  adot_ = x;
  addot_ = (x == lo) ? hi : lo;
}

int Branches::symbol_of(const Angle& x) const {
  if (x == lower_ || x == upper_) return -1;
  return in_open_arc(x, lower_, upper_) ? 0 : 1;
}

Angle Branches::step(char s, int t, const Angle& x) const {
  if (s != '0' && s != '1') throw domain_error("word symbol must be 0 or 1");
  int sym = s - '0';
  if (x == alpha_) return t == sym ? adot_ : addot_;
  Rational p = x.value() / 2;
  const bool p_in_a = p > lower_.value();
  if (p_in_a == (sym == 0)) return Angle(p);
  p += Rational(1, 2);
  return Angle(p);
}

Angle Branches::apply(const Word& w, int t, const Angle& x) const {
  Angle y = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) y = step(*it, t, y);
  return y;
}

Angle inverse_branch(const Angle& alpha, int t, const Word& w, const Angle& theta) {
  if (w.empty()) throw domain_error("inverse branch needs a nonempty word");
  return Branches(alpha).apply(w, t, theta);
}

Chord::Chord(const Angle& x, const Angle& y, std::optional<ChordLabel> l)
    : a(x < y ? x : y), b(x < y ? y : x), label(std::move(l)) {}

bool Chord::is_diameter() const { return b.value() - a.value() == Rational(1, 2); }

std::string Chord::str() const { return "(" + a.str() + ", " + b.str() + ")"; }

bool chords_cross(const Chord& c1, const Chord& c2) {
  if (c1.degenerate() || c2.degenerate()) return false;
  if (c1.a == c2.a || c1.a == c2.b || c1.b == c2.a || c1.b == c2.b) return false;
  return in_open_arc(c2.a, c1.a, c1.b) != in_open_arc(c2.b, c1.a, c1.b);
}

namespace {

std::pair<Angle, Angle> short_side(const Chord& c) {
  if (c.is_diameter()) throw domain_error("behind is undefined for the diameter " + c.str());
  if (c.b.value() - c.a.value() < Rational(1, 2)) return {c.a, c.b};
  return {c.b, c.a};
}

}  // namespace

bool point_behind(const Chord& c, const Angle& p) {
  auto [s, e] = short_side(c);
  return in_open_arc(p, s, e);
}

bool chord_nested_in(const Chord& c1, const Chord& c2) {
  auto [s1, e1] = short_side(c1);
  auto [s2, e2] = short_side(c2);
  return arc_length(s2, s1) + arc_length(s1, e1) <= arc_length(s2, e2);
}

ChordRelations chord_relations(const Chord& c1, const Chord& c2, const Angle& p) {
  ChordRelations r;
  r.crosses = chords_cross(c1, c2);
  r.nests = chord_nested_in(c1, c2);
  r.point_behind = point_behind(c1, p);
  return r;
}

}  // namespace qmlkit
