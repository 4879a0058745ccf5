#include "anosov/corpus.hpp"

#include <cmath>

namespace anosov::corpus {

namespace {

Matrix uniformMatrix(Rng& rng, Index m) {
  Matrix x(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) x(r, c) = rng.uniform(-2.0, 2.0);
  return x;
}

bool hasEigenvalueNearCircle(const Matrix& a, double margin) {
  Eigen::EigenSolver<Matrix> es(a, false);
  for (Index i = 0; i < a.rows(); ++i) {
    const double modulus = std::abs(es.eigenvalues()(i));
    if (modulus >= 1.0 / margin && modulus <= margin) return true;
  }
  return false;
}

}  // namespace

LagrangianSample randomLagrangianInvariant(Rng& rng, Index m, double hyperbolicMargin) {
  for (;;) {
    Matrix a = uniformMatrix(rng, m);
    Matrix s = uniformMatrix(rng, m);
    s = 0.5 * (s + s.transpose()).eval();
    if (std::abs(a.determinant()) <= 0.1) continue;
    if (hyperbolicMargin > 1.0 && hasEigenvalueNearCircle(a, hyperbolicMargin)) continue;
    auto p = symplin::makeLagrangianInvariant(a, s);
    const Matrix& pm = p.matrix();
    if (std::abs((Matrix::Identity(2 * m, 2 * m) - pm).determinant()) <= 1e-6) continue;
    return {std::move(a), std::move(s), std::move(p)};
  }
}

std::vector<CorpusPath> czCorpus(Rng& rng, int rotations) {
  std::vector<CorpusPath> out;
  std::vector<std::pair<double, long long>> thetas;
  while (static_cast<int>(thetas.size()) < rotations) {
    const double theta = rng.uniform(0.0, 5.0);
    if (std::abs(theta - std::round(theta)) < 1e-3) continue;
    const auto expected = 2 * static_cast<long long>(std::floor(theta)) + 1;
    thetas.emplace_back(theta, expected);
    out.push_back({"rotation(theta=" + std::to_string(theta) + ")", cz::rotationPath(theta), expected, false});
  }

  const auto hyp = cz::hyperbolicPath();
  const auto neg = cz::negativeHyperbolicPath();
  out.push_back({"hyperbolic", hyp, 0, true});
  out.push_back({"negative-hyperbolic", neg, 1, true});
  out.push_back({"hyperbolic+negative-hyperbolic", cz::directSum(hyp, neg), 1, true});
  out.push_back({"negative-hyperbolic+negative-hyperbolic", cz::directSum(neg, neg), 2, true});
  out.push_back({"hyperbolic+hyperbolic+negative-hyperbolic", cz::directSum(cz::directSum(hyp, hyp), neg), 1,
                 true});

  if (!thetas.empty()) {
    const auto [theta0, index0] = thetas.front();
    const auto rot0 = cz::rotationPath(theta0);
    out.push_back({"rotation+hyperbolic", cz::directSum(rot0, hyp), index0, false});
    out.push_back({"rotation+negative-hyperbolic", cz::directSum(rot0, neg), index0 + 1, false});
    out.push_back({"rotation+hyperbolic+negative-hyperbolic", cz::directSum(cz::directSum(rot0, hyp), neg),
                   index0 + 1, false});
    if (thetas.size() > 1) {
      const auto [theta1, index1] = thetas[1];
      const auto rot1 = cz::rotationPath(theta1);
      out.push_back({"rotation+rotation", cz::directSum(rot0, rot1), index0 + index1, false});
      out.push_back({"rotation+rotation+hyperbolic", cz::directSum(cz::directSum(rot0, rot1), hyp),
                     index0 + index1, false});
    }
  }
  return out;
}

}  // namespace anosov::corpus
