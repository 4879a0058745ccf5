#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anosov/czindex.hpp"
#include "anosov/symplin.hpp"
#include "anosov/util.hpp"

namespace anosov::corpus {

struct LagrangianSample {
  Matrix a;
  Matrix s;
  symplin::SymplecticMatrix p;
};

/// Random P = [[A, A S], [0, (A^T)^{-1}]] with entries of A and S uniform in
/// [-2, 2], |det A| > 0.1 and |det(I - P)| > 1e-6. With `hyperbolicMargin`
/// > 1, A is also redrawn until no eigenvalue modulus lies in
/// [1/margin, margin].
LagrangianSample randomLagrangianInvariant(Rng& rng, Index m, double hyperbolicMargin = 0.0);

struct CorpusPath {
  std::string name;
  cz::SymplecticPath path;
  /// Independent closed-form index, when one is known.
  std::optional<long long> expectedIndex;
  /// Endpoint spectrum off the unit circle.
  bool hyperbolic = false;
};

/// `rotations` random rotation paths with theta in (0, 5) away from integers,
/// the hyperbolic stretch, the negative-hyperbolic path and direct sums of
/// these up to dimension 6.
std::vector<CorpusPath> czCorpus(Rng& rng, int rotations);

}  // namespace anosov::corpus
