#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "anosov/census_types.hpp"
#include "anosov/util.hpp"

namespace anosov::census {

/// Marks iterate k bad iff k is even and its parity differs from iterate 1.
/// Every record must share one simple id and iterate 1 must be present
/// (ValidationError otherwise). Result is sorted by iterate.
std::vector<OrbitRecord> classifyGoodBad(std::vector<OrbitRecord> family);

/// classifyGoodBad on every simple-orbit family, then the canonical sort.
void classifyTable(CensusTable& table);

/// Stable sort by (period, class label, simple id, iterate).
void sortRecords(std::vector<OrbitRecord>& records);

struct Counts {
  std::int64_t all = 0;
  std::int64_t good = 0;
};

/// (P_T, P^g_T). Throws ValidationError if P_T <= 2 P^g_T <= 2 P_T fails.
Counts countP(const CensusTable& table);

struct GrowthEstimate {
  std::vector<std::pair<double, BigInt>> points;
  /// Least-squares slope of log P against T over the upper half of the grid.
  double rate = 0.0;
  double rateStdError = 0.0;
  double rateResidual = 0.0;
  /// Least-squares slope of log P against log T over the same points.
  double slope = 0.0;
  double slopeStdError = 0.0;
  double slopeResidual = 0.0;
  /// Polynomial residual exceeds the exponential one by kInfiniteRatio.
  bool infinite = false;
};

inline constexpr double kInfiniteRatio = 10.0;

using CountFunction = std::function<BigInt(double)>;

/// Exponential growth rate of T -> count, the Bowen entropy estimator.
/// Throws ValidationError for a non-increasing grid, decreasing counts, or
/// non-positive counts in the fitted upper half.
GrowthEstimate entropyEstimate(const CountFunction& count, const std::vector<double>& grid);

/// Log-log slope estimator of the growth rate Gamma with the finite/infinite flag.
GrowthEstimate gammaEstimate(const CountFunction& count, const std::vector<double>& grid);

/// a, a + step, ... up to b (inclusive within 1e-9 step).
std::vector<double> makeGrid(double a, double b, double step);

/// Exact (P_T, P^g_T) for a model; trace formula for constant-roof
/// suspensions, closed forms for the flat torus and ellipsoid, and a census
/// enumerated once up to maxTruncation otherwise.
std::function<std::pair<BigInt, BigInt>(double)> countFunction(const ModelSpec& model, double maxTruncation,
                                                               int workers = 1);

/// Model with every period multiplied by c.
ModelSpec scaledModel(const ModelSpec& model, double c);

/// Rebuilds the census of the c-scaled model at truncation cT (or at
/// `truncationOverride`) and compares record multisets with periods divided
/// by c.
bool scalingIdentityCheck(const CensusTable& table, double c, std::optional<double> truncationOverride = {},
                          int workers = 1);

struct SqueezeResult {
  GrowthEstimate estimate;
  double entropy = 0.0;
  double lowerBound = 0.0;
  double upperBound = 0.0;
  /// g - h / max roof
  double lowerDefect = 0.0;
  /// h / min roof - g
  double upperDefect = 0.0;
};

/// Growth of the roof census against h / max roof and h / min roof.
SqueezeResult entropySqueezeCheck(const ToralSuspension& model, const std::vector<double>& grid,
                                  int workers = 1);

}  // namespace anosov::census
