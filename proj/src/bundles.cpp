#include "anosov/bundles.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "anosov/error.hpp"
#include "anosov/util.hpp"

namespace anosov::bundles {

namespace {

Matrix orthonormalize(const Matrix& x) {
  Eigen::HouseholderQR<Matrix> qr(x);
  return qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
}

/// Sine of the largest principal angle between the spans of two orthonormal frames.
double principalAngle(const Matrix& a, const Matrix& b) {
  const Matrix residual = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues()(0);
}

Matrix genericStart(Index rows, Index cols) {
  Rng rng(0x2545F4914F6CDD1DULL);
  Matrix start(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) start(i, j) = rng.uniform(-1.0, 1.0);
  return orthonormalize(start);
}

}  // namespace

void CocycleSample::validate() const {
  if (steps.empty()) throw ValidationError("cocycle has no steps");
  for (const auto& s : steps) {
    if (s.dim() != steps.front().dim()) throw ValidationError("cocycle steps have mixed dimensions");
  }
}

Matrix CocycleSample::product() const {
  validate();
  Matrix p = Matrix::Identity(dim(), dim());
  for (const auto& s : steps) p = s.matrix() * p;
  return p;
}

CocycleSample constantCocycle(const Matrix& step, int length, bool closed) {
  if (length < 1) throw ArgumentError("cocycle length must be >= 1");
  CocycleSample c;
  c.closed = closed;
  const symplin::SymplecticMatrix m(step);
  c.steps.assign(static_cast<std::size_t>(length), m);
  return c;
}

BundleSample computeUnstable(const CocycleSample& cocycle, int iterations, double tol) {
  cocycle.validate();
  if (iterations < 1) throw ArgumentError("computeUnstable: iterations must be >= 1");
  const std::size_t length = cocycle.steps.size();
  const Index n = cocycle.dim();
  const Index m = n / 2;

  std::vector<Matrix> frames(length + 1);
  Matrix start = genericStart(n, m);
  double defect = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < iterations; ++sweep) {
    frames[0] = start;
    for (std::size_t i = 0; i < length; ++i) frames[i + 1] = orthonormalize(cocycle.steps[i].matrix() * frames[i]);
    defect = principalAngle(frames[0], frames[length]);
    start = frames[length];
    if (defect <= tol) break;
  }
  if (!(defect <= tol)) {
    throw HyperbolicityError("computeUnstable: frames did not settle after " + std::to_string(iterations) +
                             " sweeps (defect " + std::to_string(defect) + ")");
  }

  BundleSample bundle;
  bundle.closed = cocycle.closed;
  bundle.defect = defect;
  const Matrix j = symplin::standardJ(m);
  Matrix total = Matrix::Identity(m, m);
  for (std::size_t i = 0; i < length; ++i) {
    const Matrix image = cocycle.steps[i].matrix() * frames[i];
    const Matrix& next = (i + 1 == length) ? frames[0] : frames[i + 1];
    Matrix g = next.transpose() * image;
    const double residual = (image - next * g).norm() / image.norm();
    bundle.invariance = std::max(bundle.invariance, residual);
    if (residual > kInvarianceTol) {
      throw HyperbolicityError("computeUnstable: frame " + std::to_string(i) + " is not carried to the next (residual " +
                               std::to_string(residual) + ")");
    }
    Eigen::JacobiSVD<Matrix> svd(g);
    const auto& sv = svd.singularValues();
    if (!(sv(m - 1) > 0.0) || sv(0) / sv(m - 1) > kMaxTransitionCondition) {
      throw HyperbolicityError("computeUnstable: transition " + std::to_string(i) + " is ill-conditioned");
    }
    bundle.isotropy = std::max(bundle.isotropy, symplin::maxAbs(frames[i].transpose() * j * frames[i]));
    total = g * total;
    bundle.transitions.push_back(std::move(g));
  }

  // the once-around map on E must expand every direction
  Eigen::EigenSolver<Matrix> eig(total, false);
  const double smallest = eig.eigenvalues().cwiseAbs().minCoeff();
  if (!(smallest > 1.0 + 1e-6)) {
    throw HyperbolicityError("computeUnstable: once-around transition has an eigenvalue of modulus " +
                             std::to_string(smallest));
  }
  for (std::size_t i = 0; i < length; ++i) bundle.frames.emplace_back(frames[i], kInvarianceTol);
  return bundle;
}

int holonomySign(const BundleSample& bundle) {
  if (!bundle.closed) throw ValidationError("holonomySign: cocycle is not closed");
  if (bundle.transitions.empty()) throw ValidationError("holonomySign: empty bundle");
  int sign = 1;
  for (const auto& g : bundle.transitions) {
    const double d = g.determinant();
    if (d == 0.0) throw SingularityError("holonomySign: singular transition");
    if (d < 0.0) sign = -sign;
  }
  return sign;
}

ParityEquivalence parityEquivalence(const CocycleSample& cocycle, double tol) {
  ParityEquivalence out;
  out.sign = holonomySign(computeUnstable(cocycle, kMaxPowerIterations, tol));
  out.parity = symplin::detSignParity(symplin::SymplecticMatrix(cocycle.product()));
  out.holds = (out.parity == Parity::Even) == (out.sign == 1);
  return out;
}

bool parityEquivalenceCheck(const CocycleSample& cocycle, double tol) { return parityEquivalence(cocycle, tol).holds; }

void attachHolonomy(CensusTable& table, const ToralSuspension& model, int workers, double tol) {
  model.validate();
  std::map<std::int64_t, int> signs;
  for (const auto& r : table.records) {
    if (r.classLabel < 1) throw ValidationError("attachHolonomy: record '" + r.simpleId + "' has no positive label");
    signs.emplace(r.classLabel, 0);
  }
  std::vector<std::int64_t> lengths;
  for (const auto& [n, s] : signs) lengths.push_back(n);
  std::vector<int> computed(lengths.size());
  const Matrix a = model.matrix();
  parallelFor(lengths.size(), workers, [&](std::size_t i) {
    computed[i] =
        holonomySign(computeUnstable(constantCocycle(a, static_cast<int>(lengths[i])), kMaxPowerIterations, tol));
  });
  for (std::size_t i = 0; i < lengths.size(); ++i) signs[lengths[i]] = computed[i];
  for (auto& r : table.records) r.holonomySign = signs.at(r.classLabel);
}

std::size_t parityMismatches(const CensusTable& table) {
  std::size_t mismatches = 0;
  for (const auto& r : table.records) {
    if (!r.holonomySign) throw ValidationError("record '" + r.simpleId + "' carries no holonomy sign");
    if ((r.parity == Parity::Even) != (*r.holonomySign == 1)) ++mismatches;
  }
  return mismatches;
}

bool homologyNaturalityCheck(const CensusTable& table) {
  std::map<std::int64_t, int> signByLabel;
  bool natural = true;
  for (const auto& r : table.records) {
    if (!r.holonomySign) throw ValidationError("record '" + r.simpleId + "' carries no holonomy sign");
    const auto [it, inserted] = signByLabel.emplace(r.classLabel, *r.holonomySign);
    if (!inserted && it->second != *r.holonomySign) natural = false;
  }
  return natural;
}

}  // namespace anosov::bundles
