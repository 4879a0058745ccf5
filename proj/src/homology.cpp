#include "anosov/homology.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "anosov/error.hpp"

namespace anosov::homology {

namespace {

bool isPrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool isSimpleHyperbolic(const OrbitRecord& r) { return r.iterate == 1 && r.type == OrbitType::Hyperbolic; }

}  // namespace

std::int64_t E2Page::rank(std::int64_t label, std::int64_t degree) const {
  const auto c = ranks.find(label);
  if (c == ranks.end()) return 0;
  const auto d = c->second.find(degree);
  return d == c->second.end() ? 0 : d->second;
}

std::int64_t E2Page::totalRank() const {
  std::int64_t total = 0;
  for (const auto& [label, degrees] : ranks)
    for (const auto& [degree, r] : degrees) total += r;
  return total;
}

E2Page buildE2Page(const CensusTable& table) {
  E2Page page;
  page.truncation = table.truncation;
  page.parityLevel = table.grading == Grading::ParityLevel;

  std::vector<std::string> missing;
  std::map<std::int64_t, std::pair<bool, bool>> bundleData;  // label -> (all carry signs, all +1)
  for (const auto& r : table.records) {
    auto& [complete, positive] = bundleData.try_emplace(r.classLabel, true, true).first->second;
    complete = complete && r.holonomySign.has_value();
    positive = positive && r.holonomySign.value_or(1) == 1;
    if (!r.good) continue;
    if (!r.czIndex) {
      missing.push_back(r.simpleId + "^" + std::to_string(r.iterate));
      continue;
    }
    ++page.ranks[r.classLabel][*r.czIndex];
    if (isSimpleHyperbolic(r)) page.simpleHyperbolic.emplace_back(r.simpleId, *r.czIndex);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) list += (i ? ", " : "") + missing[i];
    if (missing.size() > 20) list += ", ...";
    throw ValidationError("buildE2Page: " + std::to_string(missing.size()) + " good records without an index: " + list);
  }
  for (const auto& [label, data] : bundleData)
    if (data.first) page.allOrientable[label] = data.second;
  std::sort(page.simpleHyperbolic.begin(), page.simpleHyperbolic.end());
  return page;
}

bool Degeneration::allCoherent() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const ClassVerdict& v) { return v.coherent && v.orientationConsistent; });
}

Degeneration degenerationCheck(const E2Page& page) {
  Degeneration out;
  for (const auto& [label, degrees] : page.ranks) {
    ClassVerdict v;
    v.label = label;
    std::set<Parity> parities;
    for (const auto& [degree, r] : degrees)
      if (r > 0) parities.insert(parityOf(degree));
    v.coherent = parities.size() <= 1;
    if (parities.size() == 1) v.parity = *parities.begin();
    if (label == 0 && v.parity == Parity::Odd) {
      const auto it = page.allOrientable.find(0);
      if (it != page.allOrientable.end() && it->second) v.orientationConsistent = false;
    }
    if (v.coherent) out.tables.push_back({label, degrees});
    out.verdicts.push_back(v);
  }
  return out;
}

const char* findingName(FindingCode code) {
  switch (code) {
    case FindingCode::Match:
      return "MATCH";
    case FindingCode::Mismatch:
      return "MISMATCH";
    case FindingCode::ParityContradiction:
      return "PARITY_CONTRADICTION";
    case FindingCode::MultiplicityConflict:
      return "MULTIPLICITY_CONFLICT";
    case FindingCode::ObstructionConfirmed:
      return "OBSTRUCTION_CONFIRMED";
    case FindingCode::InsufficientData:
      break;
  }
  return "INSUFFICIENT_DATA";
}

bool SphereReport::obstruction() const {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.code != FindingCode::Match; });
}

SphereReport sphereObstructionAnalyzer(const E2Page& page, std::int64_t maxDegree) {
  for (const auto& [label, degrees] : page.ranks) {
    if (label != 0) {
      throw ValidationError("sphereObstructionAnalyzer: page has class " + std::to_string(label) +
                            "; only the contractible class 0 is allowed");
    }
  }
  if (page.parityLevel) throw ValidationError("sphereObstructionAnalyzer: page carries parity-level degrees only");
  if (maxDegree < 3) throw ArgumentError("sphereObstructionAnalyzer: max degree must be >= 3");

  SphereReport report;
  report.maxDegree = maxDegree;
  static const DegreeRanks kEmpty;
  const auto found = page.ranks.find(0);
  const DegreeRanks& ranks = found == page.ranks.end() ? kEmpty : found->second;

  // (i) ball target
  std::set<std::int64_t> degrees;
  for (const auto& [d, r] : ranks)
    if (d <= maxDegree && r != 0) degrees.insert(d);
  for (std::int64_t d = 3; d <= maxDegree; d += 2) degrees.insert(d);
  for (std::int64_t d : degrees) {
    const std::int64_t target = (d >= 3 && d % 2 != 0) ? 1 : 0;
    if (page.rank(0, d) != target) report.mismatchedDegrees.push_back(d);
  }
  report.matches = report.mismatchedDegrees.empty();
  if (report.matches) {
    report.findings.push_back({FindingCode::Match, "rank 1 in every odd degree 3.." + std::to_string(maxDegree) +
                                                        " and 0 elsewhere"});
  } else {
    std::string list;
    for (std::size_t i = 0; i < report.mismatchedDegrees.size() && i < 10; ++i) {
      const auto d = report.mismatchedDegrees[i];
      list += (i ? ", " : "") + std::to_string(d) + ":" + std::to_string(page.rank(0, d));
    }
    report.findings.push_back({FindingCode::Mismatch, std::to_string(report.mismatchedDegrees.size()) +
                                                          " degrees differ from the target (degree:rank " + list + ")"});
  }

  // (ii) a coherent Even page cannot reach odd degrees
  bool anyRank = false, allEven = true;
  for (const auto& [d, r] : ranks) {
    if (r == 0) continue;
    anyRank = true;
    allEven = allEven && d % 2 == 0;
  }
  report.parityContradiction = anyRank && allEven;
  if (report.parityContradiction) {
    report.findings.push_back({FindingCode::ParityContradiction,
                               "every generator has even degree while the target lives in odd degrees"});
  }

  // (iii) distinct prime indices p, q >= 3 both fill degree p q
  std::set<std::int64_t> primes;
  for (const auto& [id, index] : page.simpleHyperbolic)
    if (index >= 3 && isPrime(index)) primes.insert(index);
  for (auto p = primes.begin(); p != primes.end(); ++p) {
    for (auto q = std::next(p); q != primes.end(); ++q) {
      MultiplicityCheck c{*p, *q, *p * *q, page.rank(0, *p * *q), false};
      c.conflict = c.rank >= 2;
      if (c.conflict) {
        report.multiplicityConflict = true;
        report.findings.push_back({FindingCode::MultiplicityConflict,
                                   "simple hyperbolic orbits of prime indices " + std::to_string(c.p) + " and " +
                                       std::to_string(c.q) + " give rank " + std::to_string(c.rank) +
                                       " in degree " + std::to_string(c.degree) + " against target 1"});
      }
      report.multiplicity.push_back(c);
    }
  }
  return report;
}

BoundedReport boundedHomologyAnalyzer(const CensusTable& table, std::int64_t bound) {
  if (bound < 0) throw ArgumentError("boundedHomologyAnalyzer: bound must be >= 0");
  BoundedReport report;
  report.bound = bound;

  std::vector<const OrbitRecord*> simple;
  for (const auto& r : table.records)
    if (isSimpleHyperbolic(r)) simple.push_back(&r);
  std::sort(simple.begin(), simple.end(), [](const OrbitRecord* a, const OrbitRecord* b) {
    return std::tie(a->period, a->simpleId) < std::tie(b->period, b->simpleId);
  });

  const auto needed = static_cast<std::size_t>(bound) + 1;
  if (simple.size() < needed) {
    report.insufficient = true;
    report.findings.push_back({FindingCode::InsufficientData, "needs " + std::to_string(needed) +
                                                                  " simple hyperbolic orbits, census has " +
                                                                  std::to_string(simple.size())});
    return report;
  }

  std::int64_t k = 1;
  for (std::size_t i = 0; i < needed; ++i) {
    const auto& r = *simple[i];
    if (!r.czIndex) throw ValidationError("boundedHomologyAnalyzer: '" + r.simpleId + "' has no index");
    if (*r.czIndex <= 0) {
      throw ValidationError("boundedHomologyAnalyzer: '" + r.simpleId + "' has non-positive index " +
                            std::to_string(*r.czIndex));
    }
    const std::int64_t g = std::gcd(k, *r.czIndex);
    if (k / g > std::numeric_limits<std::int64_t>::max() / *r.czIndex) {
      throw ResourceError("boundedHomologyAnalyzer: lcm of the selected indices overflows");
    }
    k = k / g * *r.czIndex;
    report.selected.emplace_back(r.simpleId, *r.czIndex);
  }
  report.degree = k;

  for (const auto* r : simple) {
    if (!r->czIndex || *r->czIndex <= 0 || k % *r->czIndex != 0) continue;
    const std::int64_t j = k / *r->czIndex;
    // gamma^j has index j mu; it is bad only for even j when mu is odd
    if (j % 2 == 0 && *r->czIndex % 2 != 0) continue;
    ++report.count;
  }
  report.confirmed = report.count >= bound + 1;
  if (report.confirmed) {
    report.findings.push_back({FindingCode::ObstructionConfirmed,
                               std::to_string(report.count) + " good generators in degree " + std::to_string(k) +
                                   " exceed the bound " + std::to_string(bound)});
  } else {
    report.findings.push_back({FindingCode::InsufficientData, "only " + std::to_string(report.count) +
                                                                  " good generators in degree " + std::to_string(k)});
  }
  return report;
}

}  // namespace anosov::homology
