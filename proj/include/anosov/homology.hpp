#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anosov/census_types.hpp"

namespace anosov::homology {

/// degree -> rank
using DegreeRanks = std::map<std::int64_t, std::int64_t>;

/// Good generators by class label and total degree.
struct E2Page {
  double truncation = 0.0;
  /// Degrees are the 0/1 parity lift, not genuine indices.
  bool parityLevel = false;
  std::map<std::int64_t, DegreeRanks> ranks;
  /// Per class with bundle data on every record: true iff every holonomy sign is +1.
  std::map<std::int64_t, bool> allOrientable;
  /// (simple id, index) of every simple hyperbolic orbit, sorted by id.
  std::vector<std::pair<std::string, std::int64_t>> simpleHyperbolic;

  std::int64_t rank(std::int64_t label, std::int64_t degree) const;
  std::int64_t totalRank() const;
};

/// Throws ValidationError naming every good record without an index.
E2Page buildE2Page(const CensusTable& table);

struct ClassVerdict {
  std::int64_t label = 0;
  /// All populated degrees share one parity.
  bool coherent = false;
  std::optional<Parity> parity;
  /// false when class 0 is fully orientable but its coherent parity is Odd.
  bool orientationConsistent = true;
};

/// Ranks of the degenerate spectral sequence, by degree.
struct RankTable {
  std::int64_t label = 0;
  DegreeRanks ranks;
};

struct Degeneration {
  std::vector<ClassVerdict> verdicts;
  /// One table per coherent class.
  std::vector<RankTable> tables;

  bool allCoherent() const;
};

Degeneration degenerationCheck(const E2Page& page);

enum class FindingCode { Match, Mismatch, ParityContradiction, MultiplicityConflict, ObstructionConfirmed, InsufficientData };

const char* findingName(FindingCode code);

struct Finding {
  FindingCode code = FindingCode::Match;
  std::string detail;
};

struct MultiplicityCheck {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t degree = 0;
  std::int64_t rank = 0;
  bool conflict = false;
};

struct SphereReport {
  std::int64_t maxDegree = 0;
  bool matches = false;
  /// Degrees <= maxDegree where the page differs from the target.
  std::vector<std::int64_t> mismatchedDegrees;
  bool parityContradiction = false;
  std::vector<MultiplicityCheck> multiplicity;
  bool multiplicityConflict = false;
  std::vector<Finding> findings;

  /// Some finding other than MATCH.
  bool obstruction() const;
};

/// Compares a single-class page with the ball target (rank 1 in each odd
/// degree 3..maxDegree, 0 elsewhere), flags a coherent all-Even page, and
/// checks degree p q for every pair of distinct prime indices p, q >= 3 of
/// simple hyperbolic orbits. Throws ValidationError for a page with a class
/// other than 0, or for a parity-level page.
SphereReport sphereObstructionAnalyzer(const E2Page& page, std::int64_t maxDegree);

struct BoundedReport {
  std::int64_t bound = 0;
  /// The bound + 1 simple hyperbolic orbits of smallest period.
  std::vector<std::pair<std::string, std::int64_t>> selected;
  std::optional<std::int64_t> degree;
  /// Good iterates of simple hyperbolic orbits with index exactly `degree`.
  std::int64_t count = 0;
  bool confirmed = false;
  bool insufficient = false;
  std::vector<Finding> findings;
};

/// Selects bound + 1 simple hyperbolic orbits by (period, simple id), sets
/// k = lcm of their indices and counts the good iterates gamma^{k / mu} of all
/// simple hyperbolic orbits whose index mu divides k. Throws ValidationError
/// when a selected orbit has no index or a non-positive one, ResourceError if
/// the lcm overflows.
BoundedReport boundedHomologyAnalyzer(const CensusTable& table, std::int64_t bound);

}  // namespace anosov::homology
