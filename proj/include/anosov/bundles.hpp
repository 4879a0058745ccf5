#pragma once

#include <vector>

#include "anosov/census_types.hpp"
#include "anosov/symplin.hpp"

namespace anosov::bundles {

inline constexpr int kMaxPowerIterations = 200;
inline constexpr double kConvergenceTol = 1e-10;
inline constexpr double kInvarianceTol = 1e-8;
inline constexpr double kMaxTransitionCondition = 1e8;

/// Linearized returns along one orbit, in order.
struct CocycleSample {
  std::vector<symplin::SymplecticMatrix> steps;
  bool closed = true;

  /// Throws ValidationError for an empty cocycle or mixed dimensions.
  void validate() const;
  Index dim() const { return steps.front().dim(); }
  /// M_{L-1} ... M_0.
  Matrix product() const;
};

/// Cocycle of `length` copies of the same return map.
CocycleSample constantCocycle(const Matrix& step, int length, bool closed = true);

/// An invariant Lagrangian subbundle sampled along a cocycle.
struct BundleSample {
  /// frames[i] spans E at the start of step i.
  std::vector<symplin::LagrangianFrame> frames;
  /// M_i F_i = F_{i+1} G_i, with F_L read as F_0 for closed cocycles.
  std::vector<Matrix> transitions;
  bool closed = true;
  /// Sine of the largest principal angle between the last two sweeps.
  double defect = 0.0;
  /// max_i ||F_i^T J F_i||_max
  double isotropy = 0.0;
  /// max_i ||M_i F_i - F_{i+1} G_i|| / ||M_i F_i||
  double invariance = 0.0;
};

/// Unstable Lagrangian subbundle by power iteration with QR re-orthonormalization
/// each step, starting from a fixed generic frame. Throws HyperbolicityError when
/// the sweeps do not settle within `iterations` or the once-around transition
/// has an eigenvalue of modulus <= 1 + 1e-6.
BundleSample computeUnstable(const CocycleSample& cocycle, int iterations = kMaxPowerIterations,
                             double tol = kConvergenceTol);

/// Sign of det(G_{L-1} ... G_0); +1 iff E is orientable along the orbit.
/// Throws ValidationError for an open cocycle.
int holonomySign(const BundleSample& bundle);

struct ParityEquivalence {
  Parity parity = Parity::Even;
  int sign = 1;
  bool holds = false;
};

/// detSignParity of the return map against the holonomy sign of its unstable bundle.
ParityEquivalence parityEquivalence(const CocycleSample& cocycle, double tol = kConvergenceTol);

bool parityEquivalenceCheck(const CocycleSample& cocycle, double tol = kConvergenceTol);

/// Holonomy signs of a suspension census from the unstable bundle of A along
/// each orbit; a record with class label n returns after n steps of A.
void attachHolonomy(CensusTable& table, const ToralSuspension& model, int workers = 1,
                    double tol = kConvergenceTol);

/// Number of records whose parity disagrees with their holonomy sign. Throws
/// ValidationError when a record carries no sign.
std::size_t parityMismatches(const CensusTable& table);

/// true iff the holonomy sign is constant on every class label. Throws
/// ValidationError when a record carries no sign.
bool homologyNaturalityCheck(const CensusTable& table);

}  // namespace anosov::bundles
