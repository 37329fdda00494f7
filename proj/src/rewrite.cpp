#include "qmlkit/rewrite.hpp"

#include "qmlkit/lamination.hpp"
#include "qmlkit/qml.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qmlkit {

namespace {

enum class Chain { no, yes, open };

void require_symbols(const EpSequence& s) {
  if (s.has_star()) throw domain_error("sequence " + s.str() + " contains *");
}

void require_narrow(const Angle& alpha) {
  if (!make_arc(alpha, associated_angle(alpha)).narrow)
    throw domain_error(alpha.str() + " is not a narrow arc endpoint");
}

}  // namespace

RewriteResult rewrite_with(const Word& v, int e, const EpSequence& s) {
  require_symbols(s);
  const std::size_t n = v.size() + 1;
  const std::size_t pre = s.preperiod().size(), per = s.period().size();
  const char ce = static_cast<char>('0' + e);
  auto canon = [&](std::size_t i) { return i < pre ? i : pre + (i - pre) % per; };
  auto block = [&](std::size_t i) {
    for (std::size_t k = 1; k < n; ++k)
      if (s.at(i + k) != v[k - 1]) return false;
    return true;
  };

  std::vector<Chain> status(pre + per, Chain::no);
  std::vector<bool> done(pre + per, false);
  for (std::size_t c = 0; c < pre + per; ++c) {
    if (done[c]) continue;
    std::vector<std::size_t> chain;
    std::set<std::size_t> on_chain;
    std::size_t i = c;
    Chain result;
    while (true) {
      if (done[i]) {
        result = status[i];
        break;
      }
      if (!on_chain.insert(i).second) {
        result = Chain::open;
        break;
      }
      chain.push_back(i);
      if (!block(i)) {
        result = Chain::no;
        break;
      }
      if (s.at(i + n) == ce) {
        result = Chain::yes;
        break;
      }
      i = canon(i + n);
    }
    for (std::size_t j : chain) {
      status[j] = result;
      done[j] = true;
    }
  }

  const std::size_t len = std::lcm(per, n);
  std::set<std::size_t> residues;
  for (std::size_t i = 0; i < pre + len; ++i)
    if (status[canon(i)] == Chain::open) residues.insert(i % n);

  auto build = [&](std::optional<std::size_t> r) {
    std::string out;
    for (std::size_t i = 0; i < pre + len; ++i) {
      const Chain c = status[canon(i)];
      const bool flip = c == Chain::yes || (c == Chain::open && r && i % n == *r);
      const char x = s.at(i);
      out.push_back(flip ? (x == '0' ? '1' : '0') : x);
    }
    return EpSequence(out.substr(0, pre), out.substr(pre));
  };

  RewriteResult res;
  if (residues.empty()) {
    res.outputs.push_back(build(std::nullopt));
  } else {
    res.ambiguous = true;
    for (std::size_t r : residues) res.outputs.push_back(build(r));
    std::sort(res.outputs.begin(), res.outputs.end());
    res.outputs.erase(std::unique(res.outputs.begin(), res.outputs.end()), res.outputs.end());
  }
  return res;
}

Word rewrite_prefix_with(const Word& v, int e, const Word& s) {
  const std::size_t n = v.size() + 1, len = s.size();
  const char ce = static_cast<char>('0' + e);
  for (char c : s)
    if (c != '0' && c != '1') throw domain_error("prefix symbols must be 0 or 1");
  std::vector<bool> flip(len + n, false);
  for (std::size_t i = len; i-- > 0;) {
    if (i + n >= len) continue;
    if (s.compare(i + 1, n - 1, v) != 0) continue;
    flip[i] = s[i + n] == ce || flip[i + n];
  }
  Word out = s;
  for (std::size_t i = 0; i < len; ++i)
    if (flip[i]) out[i] = out[i] == '0' ? '1' : '0';
  return out;
}

RewriteRule rewrite_rule(const Angle& alpha) {
  require_narrow(alpha);
  return {alpha, repetition_word(alpha), characteristic_symbol(alpha)};
}

RewriteResult phi_rewrite(const RewriteRule& rule, const EpSequence& s) { return rewrite_with(rule.v, rule.e, s); }

RewriteResult phi_rewrite(const Angle& alpha, const EpSequence& s) {
  require_symbols(s);
  return phi_rewrite(rewrite_rule(alpha), s);
}

Word phi_rewrite_prefix(const Angle& alpha, const Word& s) {
  const RewriteRule rule = rewrite_rule(alpha);
  return rewrite_prefix_with(rule.v, rule.e, s);
}

namespace {

ExtendedAngle preimage(const Branches& br, char s, const ExtendedAngle& x) {
  if (s != '0' && s != '1') throw domain_error("word symbol must be 0 or 1");
  if (x.angle == br.alpha()) {
    if (x.marker == Marker::none) throw domain_error("unmarked " + x.str() + " has no preimage branch");
    const bool plus = x.marker == Marker::plus;
    const bool lower = (s == '0') == plus;
    return ExtendedAngle(lower ? br.lower() : br.upper(), x.marker);
  }
  return ExtendedAngle(br.step(s, 0, x.angle), x.marker);
}

ExtendedAngle pull_back(const Branches& br, const Word& w, ExtendedAngle x) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = preimage(br, *it, x);
  return x;
}

Int floor_of(const Rational& r) {
  Int q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  if (q * boost::multiprecision::denominator(r) > boost::multiprecision::numerator(r)) --q;
  return q;
}

}  // namespace

ExtendedAngle marked_preimage(const Angle& alpha, char s, const ExtendedAngle& x) {
  return preimage(Branches(alpha), s, x);
}

ExtendedAngle marked_double(const ExtendedAngle& x) { return ExtendedAngle(double_angle(x.angle), x.marker); }

std::vector<ExtendedAngle> lift_sequence(const Angle& alpha, const EpSequence& s) {
  require_symbols(s);
  Branches br(alpha);
  const std::size_t n = br.period();
  const Word& u = s.preperiod();
  const Word& w = s.period();
  std::set<ExtendedAngle> found;

  const ExtendedAngle ap(alpha, Marker::plus), am(alpha, Marker::minus);
  const EpSequence ip = itinerary(alpha, ap), im = itinerary(alpha, am);
  for (std::size_t j = 0; j < u.size() + n * w.size(); ++j) {
    const EpSequence tail = s.shifted(j);
    for (const auto& [point, it] : {std::pair{ap, ip}, std::pair{am, im}})
      if (tail == it) found.insert(pull_back(br, s.prefix(j), point));
  }

  std::vector<Angle> orbit;
  Angle x = alpha;
  for (std::size_t i = 0; i < n; ++i, x = double_angle(x)) orbit.push_back(x);
  std::sort(orbit.begin(), orbit.end());
  auto arc_index = [&](const Angle& y) {
    auto it = std::upper_bound(orbit.begin(), orbit.end(), y);
    return static_cast<std::size_t>((it - orbit.begin() + n - 1) % n);
  };
  auto midpoint = [&](std::size_t i) {
    return Angle(orbit[i].value() + arc_length(orbit[i], orbit[(i + 1) % n]) / 2);
  };
  std::array<std::vector<std::size_t>, 2> branch_arc;
  for (int sym = 0; sym < 2; ++sym)
    for (std::size_t i = 0; i < n; ++i)
      branch_arc[sym].push_back(arc_index(br.step(static_cast<char>('0' + sym), 0, midpoint(i))));
  auto word_arc = [&](std::size_t i) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) i = branch_arc[*it - '0'][i];
    return i;
  };
  const EpSequence periodic("", w);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 1, at = word_arc(i);
    for (; at != i && k <= n; ++k) at = word_arc(at);
    if (at != i) continue;
    Word wk;
    for (std::size_t r = 0; r < k; ++r) wk += w;
    const int m = static_cast<int>(wk.size());
    const Int scale = pow2(m);
    const Angle& p = orbit[i];
    const Angle& q = orbit[(i + 1) % n];
    const Rational lo = p.value();
    const Rational hi = lo + arc_length(p, q);
    const Rational mid = (lo + hi) / 2;
    const Rational image = br.apply(wk, 0, Angle(mid)).value();
    const Rational j = Rational(scale) * image - mid;
    auto f = [&](const Rational& y) { return y - (y + j) / Rational(scale); };
    const Rational flo = f(lo), fhi = f(hi);
    for (Int c = floor_of(flo) + 1; Rational(c) < fhi; ++c) {
      const Angle y((Rational(c) * Rational(scale) + j) / Rational(scale - 1));
      if (itinerary_lenient(alpha, ExtendedAngle(y)) == periodic) {
        ExtendedAngle theta = pull_back(br, u, ExtendedAngle(y));
        found.insert(theta);
      }
    }
  }

  std::vector<ExtendedAngle> out;
  for (const ExtendedAngle& theta : found)
    if (itinerary(alpha, theta) == s) out.push_back(theta);
  return out;
}

namespace {

std::string angle_key(const Angle& alpha, const Angle& theta, std::vector<Angle>* members) {
  if (auto c = special_class(alpha, theta)) {
    std::string k = "S:";
    for (const Angle& a : *c) k += a.str() + ",";
    if (members) *members = *c;
    return k;
  }
  return "I:" + itinerary(alpha, ExtendedAngle(theta)).str();
}

}  // namespace

bool sequences_equivalent(const Angle& alpha, const EpSequence& s1, const EpSequence& s2) {
  const auto f1 = lift_sequence(alpha, s1);
  const auto f2 = lift_sequence(alpha, s2);
  if (f1.empty() || f2.empty()) throw std::logic_error("empty fiber over a sequence");
  for (const auto& a : f1)
    for (const auto& b : f2)
      if (julia_equivalent(alpha, a.angle, b.angle)) return true;
  return false;
}

SequenceClass class_of(const Angle& alpha, const EpSequence& s) {
  const auto fiber = lift_sequence(alpha, s);
  if (fiber.empty()) throw std::logic_error("empty fiber over " + s.str());
  SequenceClass cls;
  cls.alpha = alpha;
  std::set<std::string> keys;
  std::vector<Angle> members;
  for (const auto& theta : fiber) keys.insert(angle_key(alpha, theta.angle, &members));
  for (const auto& k : keys) cls.key += (cls.key.empty() ? "" : "|") + k;

  std::set<ExtendedAngle> angles;
  std::set<EpSequence> reps{s};
  if (!members.empty()) {
    for (const Angle& c : members) {
      if (is_precritical(alpha, c)) {
        angles.emplace(c, Marker::plus);
        angles.emplace(c, Marker::minus);
      } else {
        angles.emplace(c);
      }
    }
    for (const auto& a : angles) reps.insert(itinerary(alpha, a));
  }
  angles.insert(fiber.begin(), fiber.end());
  cls.angles.assign(angles.begin(), angles.end());
  cls.representatives.assign(reps.begin(), reps.end());
  return cls;
}

SequenceClass phi_on_classes(const Angle& alpha, const SequenceClass& cls) {
  if (cls.alpha != alpha) throw domain_error("class was built for " + cls.alpha.str());
  const Angle bar = associated_angle(alpha);
  std::optional<SequenceClass> image;
  const RewriteRule rule = rewrite_rule(alpha);
  for (const auto& r : cls.representatives) {
    for (const auto& o : phi_rewrite(rule, r).outputs) {
      SequenceClass c = class_of(bar, o);
      if (!image)
        image = std::move(c);
      else if (!(*image == c))
        throw std::logic_error("rewrite of " + r.str() + " leaves the class " + image->key);
    }
  }
  return *image;
}

}  // namespace qmlkit
