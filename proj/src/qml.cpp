#include "qmlkit/qml.hpp"

#include "qmlkit/kneading.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmlkit {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

struct Pt {
  u64 num;
  int per;
  int partner;  // index in the merged list, -1 when unpaired
};

inline u64 mersenne(int p) { return (u64(1) << p) - 1; }

inline bool pt_less(const Pt& x, const Pt& y) {
  return i128(x.num) * mersenne(y.per) < i128(y.num) * mersenne(x.per);
}

bool exact_period(u64 k, int p) {
  const u64 m = mersenne(p);
  for (int d = 1; d < p; ++d) {
    if (p % d) continue;
    if (k % (m / mersenne(d)) == 0) return false;
  }
  return true;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<Leaf> lavaurs_leaves(int max_period) {
  if (max_period < 2) throw domain_error("max period must be at least 2");
  if (max_period > 30) throw domain_error("max period above 30 is not supported");
  std::vector<Leaf> leaves;
  std::vector<Pt> all;
  for (int p = 2; p <= max_period; ++p) {
    const u64 m = mersenne(p);
    std::vector<Pt> fresh;
    for (u64 k = 1; k < m; ++k)
      if (exact_period(k, p)) fresh.push_back({k, p, -1});

    std::vector<Pt> merged;
    merged.reserve(all.size() + fresh.size());
    std::vector<int> remap(all.size());
    std::size_t i = 0, j = 0;
    while (i < all.size() || j < fresh.size()) {
      if (j == fresh.size() || (i < all.size() && pt_less(all[i], fresh[j]))) {
        remap[i] = static_cast<int>(merged.size());
        merged.push_back(all[i++]);
      } else {
        merged.push_back(fresh[j++]);
      }
    }
    for (auto& pt : merged)
      if (pt.per < p) pt.partner = remap[pt.partner];

    const int n = static_cast<int>(merged.size());
    for (int a = 0; a < n; ++a) {
      if (merged[a].per != p || merged[a].partner >= 0) continue;
      int b = a + 1;
      while (true) {
        if (b >= n) throw std::logic_error("Lavaurs pairing ran off the circle");
        const Pt& c = merged[b];
        if (c.partner < 0) break;
        if (c.partner < a) throw std::logic_error("Lavaurs pairing blocked by an enclosing leaf");
        b = c.partner + 1;
      }
      merged[a].partner = b;
      merged[b].partner = a;
      leaves.push_back({p, merged[a].num, merged[b].num});
    }
    all = std::move(merged);
  }
  return leaves;
}

CharacteristicArc make_arc(const Angle& a, const Angle& b) {
  CharacteristicArc arc;
  arc.lo = a < b ? a : b;
  arc.hi = a < b ? b : a;
  arc.period = period_of(arc.lo);
  if (period_of(arc.hi) != arc.period) throw domain_error(arc.str() + " endpoints differ in period");
  arc.width = arc.hi.value() - arc.lo.value();
  Int m = pow2(arc.period) - 1;
  arc.narrow = arc.width == Rational(1, m);
  arc.satellite = false;
  Angle x = arc.lo;
  for (int i = 0; i < arc.period; ++i) {
    if (x == arc.hi) arc.satellite = true;
    x = double_angle(x);
  }
  return arc;
}

std::vector<CharacteristicArc> lavaurs_generate(int max_period) {
  std::vector<CharacteristicArc> out;
  for (const Leaf& l : lavaurs_leaves(max_period)) {
    Int m = pow2(l.period) - 1;
    out.push_back(make_arc(Angle(Int(l.lo), m), Angle(Int(l.hi), m)));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.period != y.period ? x.period < y.period : x.lo < y.lo;
  });
  return out;
}

OrbitPortrait orbit_portrait(const CharacteristicArc& arc) {
  OrbitPortrait op;
  Angle s = arc.lo, e = arc.hi;
  for (int i = 0; i < arc.period; ++i) {
    op.arcs.push_back({s, e});
    s = double_angle(s);
    e = double_angle(e);
  }
  return op;
}

Narrowness narrowness(const CharacteristicArc& arc) {
  Narrowness r;
  OrbitPortrait op = orbit_portrait(arc);
  const Chord first(arc.lo, arc.hi);
  const int n = arc.period;
  r.first_nesting_index = 0;
  for (int i = 2; i <= n; ++i) {
    const auto& a = op.arcs[i - 1];
    if (chord_nested_in(first, Chord(a.start, a.end))) {
      r.first_nesting_index = i;
      break;
    }
  }
  if (r.first_nesting_index == 0) throw std::logic_error("no portrait arc nests " + arc.str());
  r.narrow = r.first_nesting_index == n;
  if (r.narrow != arc.narrow) throw std::logic_error("narrowness criteria disagree on " + arc.str());
  if (!r.narrow) {
    int k = 2;
    while (arc.width <= Rational(1, pow2(k) - 1)) ++k;
    const Int m = pow2(k) - 1;
    std::vector<Angle> inside;
    const Rational scaled = arc.lo.value() * m;
    Int j = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    for (j += 1; Rational(j, m) < arc.hi.value(); ++j) {
      Angle x(j, m);
      if (in_open_arc(x, arc.lo, arc.hi) && period_of(x) == k) inside.push_back(x);
    }
    if (inside.size() != 2 || associated_angle(inside[0]) != inside[1])
      throw std::logic_error("no nested narrow arc of period " + std::to_string(k) + " in " + arc.str());
    r.longest_nested_narrow = make_arc(inside[0], inside[1]);
  }
  return r;
}

Word kneading_word_fast(u64 a, int n) {
  const u64 m = mersenne(n);
  Word v;
  u64 y = a;
  for (int i = 0; i + 1 < n; ++i) {
    const u64 y2 = y * 2;
    v.push_back((a < y2 && y2 < a + m) ? '0' : '1');
    y = y2 % m;
  }
  return v;
}

InternalAddress internal_address_from_word(const Word& v) {
  const int n = static_cast<int>(v.size()) + 1;
  auto nu = [&](int r) { return r == n ? '*' : v[r - 1]; };
  InternalAddress addr{1};
  int s = 1;
  while (s < n) {
    int r = s + 1;
    while (r <= n && nu(r) == nu(((r - 1) % s) + 1)) ++r;
    if (r > n) throw std::logic_error("internal address recursion did not reach the period");
    addr.push_back(r);
    s = r;
  }
  return addr;
}

InternalAddress internal_address(const CharacteristicArc& arc) {
  return internal_address_from_word(repetition_word(arc.lo));
}

bool address_renormalizable(const InternalAddress& addr) {
  const std::size_t len = addr.size();
  for (std::size_t i = 1; i + 1 < len; ++i) {
    bool all = true;
    for (std::size_t j = i; j < len && all; ++j) all = addr[j] % addr[i] == 0;
    if (all) return true;
  }
  return false;
}

bool is_simply_renormalizable(const CharacteristicArc& arc) {
  return address_renormalizable(internal_address(arc));
}

std::string format_ratio(long num, long den) {
  if (den == 0) return "nan";
  long long scaled = static_cast<long long>(num) * 1000000 / den;
  std::string digits = std::to_string(scaled % 1000000);
  return std::to_string(scaled / 1000000) + "." + std::string(6 - digits.size(), '0') + digits;
}

std::string address_str(const InternalAddress& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

Tables generate_tables(int max_period) {
  if (max_period < 4) throw domain_error("tables need max period at least 4");
  Tables t;
  auto leaves = lavaurs_leaves(max_period);
  std::sort(leaves.begin(), leaves.end(), [](const Leaf& x, const Leaf& y) {
    return x.period != y.period ? x.period < y.period : x.lo < y.lo;
  });
  for (int p = 4; p <= max_period; ++p) {
    if (is_prime(p)) continue;
    RatioRow row;
    row.period = p;
    const u64 m = mersenne(p);
    for (const Leaf& l : leaves) {
      if (l.period != p) continue;
      const bool narrow = l.hi - l.lo == 1;
      const Word v = kneading_word_fast(l.lo, p);
      const InternalAddress addr = internal_address_from_word(v);
      const bool renorm = address_renormalizable(addr);
      ++row.total;
      ++(narrow ? row.narrow : row.non_narrow);
      if (!renorm) {
        ++row.nonrenorm_total;
        if (!narrow) {
          ++row.nonrenorm_non_narrow;
          if (l.lo <= m - l.hi)
            t.arc_rows.push_back({p, Angle(Int(l.lo), Int(m)), Angle(Int(l.hi), Int(m)), v, addr});
        }
      }
    }
    row.ratio = format_ratio(row.nonrenorm_non_narrow, row.nonrenorm_total);
    t.ratio_rows.push_back(row);
  }
  return t;
}

}  // namespace qmlkit
