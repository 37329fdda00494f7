#pragma once

#include "qmlkit/angle.hpp"
#include "qmlkit/kneading.hpp"

#include <string>
#include <vector>

namespace qmlkit {

struct RewriteResult {
  std::vector<EpSequence> outputs;  // sorted, nonempty
  bool ambiguous = false;
};

/// Repetition word and characteristic symbol of a narrow alpha.
struct RewriteRule {
  Angle alpha;
  Word v;
  int e = 1;
};

RewriteRule rewrite_rule(const Angle& alpha);

/// Block-swap rewrite on an eventually periodic sequence; alpha must be narrow.
RewriteResult phi_rewrite(const Angle& alpha, const EpSequence& s);
RewriteResult phi_rewrite(const RewriteRule& rule, const EpSequence& s);

/// Same rule on a finite word; blocks whose fate lies past the end are kept.
Word phi_rewrite_prefix(const Angle& alpha, const Word& s);

/// The rule itself, for a repetition word v and characteristic symbol e.
RewriteResult rewrite_with(const Word& v, int e, const EpSequence& s);
Word rewrite_prefix_with(const Word& v, int e, const Word& s);

/// Marked preimage of x under the branch with symbol s.
ExtendedAngle marked_preimage(const Angle& alpha, char s, const ExtendedAngle& x);

ExtendedAngle marked_double(const ExtendedAngle& x);

/// Every extended angle whose itinerary is s.
std::vector<ExtendedAngle> lift_sequence(const Angle& alpha, const EpSequence& s);

bool sequences_equivalent(const Angle& alpha, const EpSequence& s1, const EpSequence& s2);

struct SequenceClass {
  Angle alpha;
  std::vector<EpSequence> representatives;
  std::vector<ExtendedAngle> angles;
  std::string key;

  friend bool operator==(const SequenceClass& x, const SequenceClass& y) {
    return x.alpha == y.alpha && x.key == y.key;
  }
};

SequenceClass class_of(const Angle& alpha, const EpSequence& s);

/// Image class, taken with respect to the companion angle.
SequenceClass phi_on_classes(const Angle& alpha, const SequenceClass& cls);

}  // namespace qmlkit
