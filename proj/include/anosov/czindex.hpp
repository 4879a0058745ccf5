#pragma once

#include <functional>
#include <vector>

#include "anosov/symplin.hpp"

namespace anosov::cz {

/// Path of symplectic matrices Psi: [0, T] -> Sp(2m) starting at the identity.
///
/// Evaluation must be reentrant: the crossing search calls evaluate() from
/// whatever thread runs it, and censuses evaluate many paths concurrently.
class SymplecticPath {
 public:
  using Function = std::function<Matrix(double)>;

  /// Without a derivative, a central finite difference with step 1e-6 is used.
  SymplecticPath(Index dim, double duration, Function evaluate, Function derivative = {});

  Index dim() const noexcept { return dim_; }
  double duration() const noexcept { return duration_; }
  bool hasAnalyticDerivative() const noexcept { return static_cast<bool>(derivative_); }

  Matrix evaluate(double t) const { return evaluate_(t); }
  Matrix derivative(double t) const;
  Matrix endpoint() const { return evaluate_(duration_); }

  /// S(t) = -J Psi'(t) Psi(t)^{-1}, symmetrized.
  Matrix generator(double t) const;

 private:
  Index dim_;
  double duration_;
  Function evaluate_;
  Function derivative_;
};

struct Crossing {
  double time;
  /// Half-signature of S(0) for the crossing at t = 0; signature of the
  /// crossing form on ker(Psi(t) - I) for interior crossings.
  int contribution;
};

struct CZResult {
  long long index = 0;
  std::vector<Crossing> crossings;
};

struct CrossingOptions {
  int minSamples = 2048;
  /// Floor on grid density for long paths.
  int samplesPerUnitTime = 64;
  double timeTolerance = 1e-12;
  double kernelTolerance = 1e-7;
  double degeneracyCutoff = symplin::kDegeneracyCutoff;
};

/// Conley-Zehnder index by the crossing-form recipe. Throws DegeneracyError
/// for a degenerate endpoint and RegularityError for a crossing whose form is
/// singular on the kernel, or when the crossing set is not stable under a
/// small shift of the sample grid.
CZResult czIndex(const SymplecticPath& path, const CrossingOptions& options = {});

/// Path of the j-th iterate: Psi_j(t + kT) = Psi(t) Psi(T)^k.
SymplecticPath iteratePath(const SymplecticPath& path, int j);

/// parity(czIndex) == detSignParity(endpoint).
bool czParityCrossCheck(const SymplecticPath& path, const CrossingOptions& options = {});

/// t -> R(omega t) on [0, duration], R the planar rotation in the (q, p) plane.
SymplecticPath rotationPath(double angularVelocity, double duration);

/// t -> R(2 pi theta t) on [0, 1]; index 2 floor(theta) + 1 for non-integer theta.
SymplecticPath rotationPath(double theta);

/// t -> diag(e^{rate t}, e^{-rate t}) on [0, duration].
SymplecticPath hyperbolicPath(double rate = 1.0, double duration = 1.0);

/// t -> R(pi t) diag(e^t, e^{-t}) on [0, 1]; endpoint is negative hyperbolic,
/// index 1.
SymplecticPath negativeHyperbolicPath();

/// t -> [[1, t], [0, 1]] on [0, 1]; degenerate endpoint.
SymplecticPath shearPath();

/// Symplectic direct sum, interleaved so the result uses the standard form
/// (q_a, q_b, p_a, p_b). Durations must agree.
SymplecticPath directSum(const SymplecticPath& a, const SymplecticPath& b);

/// Embeds a 2a x 2a and a 2b x 2b matrix block-diagonally in the standard
/// ordering (q_a, q_b, p_a, p_b).
Matrix directSumMatrix(const Matrix& a, const Matrix& b);

}  // namespace anosov::cz
