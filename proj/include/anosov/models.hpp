#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anosov/census_types.hpp"
#include "anosov/util.hpp"

namespace anosov::models {

inline constexpr std::int64_t kEnumerationCap = 10'000'000;

/// 2x2 integer matrix; products throw ResourceError on int64 overflow.
struct IntMatrix2 {
  std::int64_t a11, a12, a21, a22;

  static IntMatrix2 identity() { return {1, 0, 0, 1}; }
  static IntMatrix2 of(const ToralSuspension& m) { return {m.a11, m.a12, m.a21, m.a22}; }
  IntMatrix2 operator*(const IntMatrix2& o) const;
  IntMatrix2 pow(int k) const;
  std::int64_t maxAbs() const;
};

/// U M V = diag(d1, d2) with U, V unimodular, d1 | d2, d1 > 0.
struct SmithForm {
  std::int64_t d1;
  std::int64_t d2;
  IntMatrix2 v;
};

/// Throws SingularityError for singular M.
SmithForm smithNormalForm(const IntMatrix2& m);

/// trace(A^k) by t_k = t t_{k-1} - t_{k-2}, t_0 = 2, t_1 = trace A.
BigInt traceOfPower(const ToralSuspension& model, int k);

/// |Fix(A^k)| = |det(A^k - I)| = |t_k - 2|. Throws ArgumentError for k < 1.
BigInt periodicPointCount(const ToralSuspension& model, int k);

/// Number of A-orbits of least period exactly m (Moebius inversion of the
/// fixed-point counts).
BigInt leastPeriodOrbitCount(const ToralSuspension& model, int m);

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

/// Periodic orbit of the toral automorphism.
struct MapOrbit {
  /// Lexicographically smallest point of the orbit.
  Rational x;
  Rational y;
  int leastPeriod;
  /// Degree in H_1 of the mapping torus.
  std::int64_t label;
  /// Same point with a shared denominator, for exact phase reduction.
  std::int64_t p1, p2, den;
};

/// Orbits of every least period <= maxPeriod, sorted by (period, point). Each
/// period is solved independently from the Smith form of A^k - I, so the work
/// is sharded over `workers` threads without affecting the result.
std::vector<MapOrbit> enumerateMapOrbits(const ToralSuspension& model, int maxPeriod, int workers = 1,
                                         std::int64_t cap = kEnumerationCap);

/// Sum of the roof over the orbit.
double birkhoffSum(const ToralSuspension& model, const MapOrbit& orbit);

/// (P_T, P^g_T) from the trace formula; constant roofs only.
struct ExactCounts {
  BigInt all;
  BigInt good;
};
ExactCounts suspensionTraceCounts(const ToralSuspension& model, double truncation);

/// One record per (simple orbit, iterate) with iterate * Birkhoff sum <= T.
/// Records carry parity-level grading (lift Even -> 0, Odd -> 1).
CensusTable suspensionCensus(const ToralSuspension& model, double truncation, int workers = 1);

/// Parity of A^n read through detSignParity, with an exact integer fallback
/// once the entries of A^n are too large for double precision.
Parity returnMapParity(const ToralSuspension& model, int n);

/// Maximal defect of ||DPhi_t v_s|| - lambda^t over sampled points, heights
/// and times <= tMax, measured in the adapted metric of the mapping torus in
/// which the stable norm at height s is lambda_max^{-s / roof}.
/// lambda = lambda_max^{-1 / max roof}.
double anosovConeCheck(const ToralSuspension& model, double tMax, int samples);

using LatticeVector = std::vector<std::int64_t>;

/// Nonzero v in Z^n with scale * |v| <= T, sorted by (|v|^2, v).
std::vector<LatticeVector> flatTorusComponents(const FlatTorusModel& model, double truncation,
                                               std::int64_t cap = kEnumerationCap);

/// Number of Morse-Bott components with period <= T, counted without listing.
BigInt flatTorusCount(const FlatTorusModel& model, double truncation);

/// Morse minimum on T^{n-1}.
std::int64_t morseMinimum(const FlatTorusModel& model);

/// critCount x (number of components up to T). Throws ValidationError when
/// critCount < 2^{n-1}.
BigInt perturbedFlatTorusCount(const FlatTorusModel& model, double truncation, std::int64_t critCount);

/// Non-degenerate orbits of the perturbed form: one per (critical point of the
/// cosine-product Morse function, component). Parity-level grading from the
/// Morse index of the critical point.
CensusTable flatTorusCensus(const FlatTorusModel& model, double truncation, std::int64_t cap = 2'000'000);

/// Continued-fraction guard: false when some p/q with q <= 10^6 lies within
/// relative error 1e-12 of `ratio` (convergents and semiconvergents).
bool passesIrrationalityGuard(double ratio);

/// Iterates of the two simple orbits of E(a, b), indices from the crossing
/// engine on the transverse rotation path plus the 2k correction of the
/// constant frame of C^2.
CensusTable ellipsoidCensus(const EllipsoidModel& model, double truncation);

/// Iterates of synthetic simple orbits with mu(gamma^j) = j mu(gamma).
CensusTable syntheticCensus(const SyntheticModel& model, double truncation);

CensusTable buildCensus(const ModelSpec& model, double truncation, int workers = 1);

}  // namespace anosov::models
