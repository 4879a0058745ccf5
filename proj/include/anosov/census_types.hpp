#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "anosov/symplin.hpp"

namespace anosov {

enum class OrbitType { Hyperbolic, Elliptic, Other };

const char* orbitTypeName(OrbitType t);
OrbitType parseOrbitType(const std::string& name);

/// One generator: an iterate of a simple periodic orbit.
struct OrbitRecord {
  std::string simpleId;
  int iterate = 1;
  double period = 0.0;
  std::int64_t classLabel = 0;
  Parity parity = Parity::Even;
  std::optional<std::int64_t> czIndex;
  bool good = true;
  OrbitType type = OrbitType::Other;
  std::optional<int> holonomySign;
};

/// How the integer degrees of a census relate to Conley-Zehnder indices.
enum class Grading {
  /// czIndex is a genuine (trivialization-dependent) Conley-Zehnder index.
  Integer,
  /// czIndex is the 0/1 lift of the parity; only the parity is meaningful.
  ParityLevel,
};

/// Trigonometric polynomial on the 2-torus:
/// constant + sum_j (cos_j cos(2 pi <k_j, x>) + sin_j sin(2 pi <k_j, x>)).
struct RoofFunction {
  struct Term {
    std::int64_t k1 = 0;
    std::int64_t k2 = 0;
    double cosCoeff = 0.0;
    double sinCoeff = 0.0;
  };

  double constant = 1.0;
  std::vector<Term> terms;
  /// Stated bounds; when absent the coefficient bound constant -/+ sum|coeff| is used.
  std::optional<double> statedMin;
  std::optional<double> statedMax;

  static RoofFunction constantRoof(double value) { return RoofFunction{value, {}, value, value}; }

  bool isConstant() const { return terms.empty(); }
  double min() const;
  double max() const;
  /// Evaluates at the rational point (p1 / den, p2 / den); phases are reduced
  /// modulo den in integer arithmetic before the trigonometric call.
  double atRational(std::int64_t p1, std::int64_t p2, std::int64_t den) const;
  RoofFunction scaled(double c) const;
};

/// Suspension of a hyperbolic toral automorphism under a roof function.
struct ToralSuspension {
  std::int64_t a11 = 2, a12 = 1, a21 = 1, a22 = 1;
  RoofFunction roof = RoofFunction::constantRoof(1.0);

  std::int64_t trace() const { return a11 + a22; }
  std::int64_t det() const { return a11 * a22 - a12 * a21; }
  /// |eigenvalue| > 1.
  double expandingEigenvalue() const;
  /// log of the expanding eigenvalue modulus: the entropy of the roof-1 flow.
  double entropy() const;
  Matrix matrix() const;
  /// Throws ValidationError unless det = 1, |trace| >= 3 and min roof > 0.
  void validate() const;
};

struct FlatTorusModel {
  int n = 2;
  /// Periods scale linearly with this factor (unit-speed geodesics at 1).
  double scale = 1.0;
  void validate() const;
};

struct EllipsoidModel {
  double a = 1.0;
  double b = 1.4142135623730951;
  /// Throws ValidationError unless 0 < a < b and a / b passes the
  /// irrationality guard.
  void validate() const;
};

/// A simple orbit given directly by its period and Conley-Zehnder index; its
/// iterates follow mu(gamma^j) = j mu(gamma).
struct SyntheticOrbit {
  std::string id;
  double period = 1.0;
  std::int64_t index = 0;
  OrbitType type = OrbitType::Hyperbolic;
  std::int64_t classLabel = 0;
};

struct SyntheticModel {
  std::vector<SyntheticOrbit> orbits;
};

using ModelSpec = std::variant<ToralSuspension, FlatTorusModel, EllipsoidModel, SyntheticModel>;

std::string modelKind(const ModelSpec& model);

/// All generators of a model up to action T.
struct CensusTable {
  ModelSpec model;
  double truncation = 0.0;
  Grading grading = Grading::Integer;
  /// Describes how class labels coarsen free homotopy classes.
  std::string labelNote;
  std::vector<OrbitRecord> records;

  std::int64_t countAll() const { return static_cast<std::int64_t>(records.size()); }
  std::int64_t countGood() const;
};

/// Relative slack used whenever a period is compared with a truncation.
inline constexpr double kPeriodSlack = 1e-12;
inline bool withinTruncation(double period, double truncation) {
  return period <= truncation * (1.0 + kPeriodSlack);
}

}  // namespace anosov
