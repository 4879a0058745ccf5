#include "anosov/czindex.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "anosov/error.hpp"

namespace anosov::cz {

namespace {

constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kPathSymplecticTol = 1e-7;
constexpr int kValidationSamples = 100;

Matrix rotation(double angle) {
  Matrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

struct SingularSummary {
  double smallest;
  double largest;
};

SingularSummary singularSummary(const Matrix& shifted) {
  Eigen::JacobiSVD<Matrix> svd(shifted);
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

double sigmaMin(const SymplecticPath& path, double t) {
  const Matrix psi = path.evaluate(t);
  return singularSummary(psi - Matrix::Identity(psi.rows(), psi.cols())).smallest;
}

int signatureOf(const Matrix& form, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (form + form.transpose()));
  const auto& values = eig.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  int signature = 0;
  for (Index i = 0; i < values.size(); ++i) {
    if (std::abs(values(i)) <= 1e-8 * scale) {
      throw RegularityError("crossing form is singular on the kernel", t);
    }
    signature += values(i) > 0 ? 1 : -1;
  }
  return signature;
}

/// Golden-section minimization of sigma_min(Psi(t) - I) on [lo, hi].
double refineMinimum(const SymplecticPath& path, double lo, double hi, double tol) {
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invPhi * (hi - lo);
  double x2 = lo + invPhi * (hi - lo);
  double f1 = sigmaMin(path, x1);
  double f2 = sigmaMin(path, x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invPhi * (hi - lo);
      f1 = sigmaMin(path, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invPhi * (hi - lo);
      f2 = sigmaMin(path, x2);
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<Crossing> interiorCrossings(const SymplecticPath& path, int samples, double offset,
                                        const CrossingOptions& options) {
  const double duration = path.duration();
  const double step = (duration - offset) / samples;
  std::vector<double> times(static_cast<std::size_t>(samples) + 1);
  std::vector<double> sigma(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = (i + 1 == times.size()) ? duration : offset + static_cast<double>(i) * step;
    sigma[i] = sigmaMin(path, times[i]);
  }

  std::vector<Crossing> found;
  const std::size_t last = times.size() - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    const bool leftOk = sigma[i] <= sigma[i - 1];
    const bool rightOk = (i == last) || sigma[i] < sigma[i + 1];
    if (!leftOk || !rightOk) continue;
    const double lo = times[i - 1];
    const double hi = (i == last) ? times[i] : times[i + 1];
    const double t = refineMinimum(path, lo, hi, options.timeTolerance);
    if (t <= 0.0 || t >= duration) continue;

    const Matrix psi = path.evaluate(t);
    const Matrix shifted = psi - Matrix::Identity(psi.rows(), psi.cols());
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double threshold = options.kernelTolerance * std::max(1.0, sv(0));
    Index kernelDim = 0;
    for (Index k = 0; k < sv.size(); ++k) {
      if (sv(k) <= threshold) ++kernelDim;
    }
    if (kernelDim == 0) continue;  // near miss

    const Matrix kernel = svd.matrixV().rightCols(kernelDim);
    const Matrix form = kernel.transpose() * path.generator(t) * kernel;
    const int contribution = signatureOf(form, t);
    if (!found.empty() && std::abs(found.back().time - t) < 1e-9) continue;
    found.push_back({t, contribution});
  }
  return found;
}

bool sameCrossings(const std::vector<Crossing>& a, const std::vector<Crossing>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].contribution != b[i].contribution) return false;
    if (std::abs(a[i].time - b[i].time) > 1e-8 * std::max(1.0, a[i].time)) return false;
  }
  return true;
}

}  // namespace

SymplecticPath::SymplecticPath(Index dim, double duration, Function evaluate, Function derivative)
    : dim_(dim), duration_(duration), evaluate_(std::move(evaluate)), derivative_(std::move(derivative)) {
  if (dim_ <= 0 || dim_ % 2 != 0) {
    throw DimensionError("SymplecticPath: dimension must be even and positive");
  }
  if (!(duration_ > 0.0)) throw ArgumentError("SymplecticPath: duration must be positive");
  if (!evaluate_) throw ArgumentError("SymplecticPath: missing evaluation function");

  const Matrix start = evaluate_(0.0);
  if (start.rows() != dim_ || start.cols() != dim_) {
    throw DimensionError("SymplecticPath: evaluate() returned the wrong shape");
  }
  if (symplin::maxAbs(start - Matrix::Identity(dim_, dim_)) > 1e-9) {
    throw ValidationError("SymplecticPath: Psi(0) is not the identity");
  }
  const Matrix j = symplin::standardJ(dim_ / 2);
  for (int i = 0; i < kValidationSamples; ++i) {
    const double t = duration_ * i / (kValidationSamples - 1);
    const Matrix psi = evaluate_(t);
    const double scale = std::max(1.0, symplin::maxAbs(psi));
    if (symplin::maxAbs(psi.transpose() * j * psi - j) > kPathSymplecticTol * scale * scale) {
      throw ValidationError("SymplecticPath: Psi(" + std::to_string(t) + ") is not symplectic");
    }
  }
}

Matrix SymplecticPath::derivative(double t) const {
  if (derivative_) return derivative_(t);
  const double h = kFiniteDifferenceStep;
  if (t - h < 0.0) return (evaluate_(t + h) - evaluate_(t)) / h;
  return (evaluate_(t + h) - evaluate_(t - h)) / (2.0 * h);
}

Matrix SymplecticPath::generator(double t) const {
  const Matrix psi = evaluate_(t);
  const Matrix j = symplin::standardJ(dim_ / 2);
  const Matrix s = -j * derivative(t) * psi.partialPivLu().inverse();
  return 0.5 * (s + s.transpose());
}

CZResult czIndex(const SymplecticPath& path, const CrossingOptions& options) {
  const Matrix end = path.endpoint();
  const double endDet = (end - Matrix::Identity(end.rows(), end.cols())).determinant();
  if (!(std::abs(endDet) > options.degeneracyCutoff)) {
    throw DegeneracyError("czIndex: endpoint has eigenvalue 1 (det(Psi(T) - I) = " +
                          std::to_string(endDet) + ")");
  }

  CZResult result;
  const int start = signatureOf(path.generator(0.0), 0.0);
  if (start % 2 != 0) throw RegularityError("odd signature at t = 0", 0.0);
  result.crossings.push_back({0.0, start / 2});

  const int samples = std::max(options.minSamples,
                               static_cast<int>(std::ceil(path.duration())) * options.samplesPerUnitTime);
  const double shift = path.duration() * 1e-5;

  auto interior = interiorCrossings(path, samples, 0.0, options);
  if (!sameCrossings(interior, interiorCrossings(path, samples, shift, options))) {
    interior = interiorCrossings(path, 4 * samples, 0.0, options);
    if (!sameCrossings(interior, interiorCrossings(path, 4 * samples, shift, options))) {
      const double t = interior.empty() ? path.duration() : interior.front().time;
      throw RegularityError("crossing set unstable under grid shift", t);
    }
  }

  result.crossings.insert(result.crossings.end(), interior.begin(), interior.end());
  for (const auto& c : result.crossings) result.index += c.contribution;
  return result;
}

SymplecticPath iteratePath(const SymplecticPath& path, int j) {
  if (j < 1) throw ArgumentError("iteratePath: iterate must be positive");
  if (j == 1) return path;

  const double period = path.duration();
  auto powers = std::make_shared<std::vector<Matrix>>();
  const Matrix end = path.endpoint();
  powers->push_back(Matrix::Identity(end.rows(), end.cols()));
  for (int k = 1; k < j; ++k) powers->push_back(powers->back() * end);

  auto segment = [period, j](double t) {
    int k = static_cast<int>(std::floor(t / period));
    k = std::clamp(k, 0, j - 1);
    return std::pair{k, t - k * period};
  };
  auto evaluate = [path, powers, segment](double t) -> Matrix {
    const auto [k, s] = segment(t);
    return path.evaluate(s) * (*powers)[static_cast<std::size_t>(k)];
  };
  auto derivative = [path, powers, segment](double t) -> Matrix {
    const auto [k, s] = segment(t);
    return path.derivative(s) * (*powers)[static_cast<std::size_t>(k)];
  };
  return SymplecticPath(path.dim(), j * period, evaluate, derivative);
}

bool czParityCrossCheck(const SymplecticPath& path, const CrossingOptions& options) {
  const CZResult r = czIndex(path, options);
  const symplin::SymplecticMatrix end(path.endpoint(), kPathSymplecticTol);
  return parityOf(r.index) == symplin::detSignParity(end, options.degeneracyCutoff);
}

SymplecticPath rotationPath(double angularVelocity, double duration) {
  return SymplecticPath(
      2, duration, [angularVelocity](double t) { return rotation(angularVelocity * t); },
      [angularVelocity](double t) -> Matrix {
        Matrix d(2, 2);
        const double c = std::cos(angularVelocity * t);
        const double s = std::sin(angularVelocity * t);
        d << -s, -c, c, -s;
        return angularVelocity * d;
      });
}

SymplecticPath rotationPath(double theta) { return rotationPath(2.0 * std::numbers::pi * theta, 1.0); }

SymplecticPath hyperbolicPath(double rate, double duration) {
  return SymplecticPath(
      2, duration,
      [rate](double t) -> Matrix {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = std::exp(rate * t);
        m(1, 1) = std::exp(-rate * t);
        return m;
      },
      [rate](double t) -> Matrix {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = rate * std::exp(rate * t);
        m(1, 1) = -rate * std::exp(-rate * t);
        return m;
      });
}

SymplecticPath negativeHyperbolicPath() {
  const double pi = std::numbers::pi;
  return SymplecticPath(
      2, 1.0,
      [pi](double t) -> Matrix {
        Matrix h = Matrix::Zero(2, 2);
        h(0, 0) = std::exp(t);
        h(1, 1) = std::exp(-t);
        return rotation(pi * t) * h;
      },
      [pi](double t) -> Matrix {
        Matrix h = Matrix::Zero(2, 2);
        h(0, 0) = std::exp(t);
        h(1, 1) = std::exp(-t);
        Matrix dh = Matrix::Zero(2, 2);
        dh(0, 0) = std::exp(t);
        dh(1, 1) = -std::exp(-t);
        Matrix dr(2, 2);
        dr << -std::sin(pi * t), -std::cos(pi * t), std::cos(pi * t), -std::sin(pi * t);
        return pi * dr * h + rotation(pi * t) * dh;
      });
}

SymplecticPath shearPath() {
  return SymplecticPath(
      2, 1.0,
      [](double t) -> Matrix {
        Matrix m(2, 2);
        m << 1.0, t, 0.0, 1.0;
        return m;
      },
      [](double) -> Matrix {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 1) = 1.0;
        return m;
      });
}

Matrix directSumMatrix(const Matrix& a, const Matrix& b) {
  const Index ma = a.rows() / 2;
  const Index mb = b.rows() / 2;
  const Index m = ma + mb;
  // position of each block coordinate in the combined (q_a, q_b, p_a, p_b) order
  std::vector<Index> posA(2 * ma), posB(2 * mb);
  for (Index i = 0; i < ma; ++i) {
    posA[i] = i;
    posA[ma + i] = m + i;
  }
  for (Index i = 0; i < mb; ++i) {
    posB[i] = ma + i;
    posB[mb + i] = m + ma + i;
  }
  Matrix out = Matrix::Zero(2 * m, 2 * m);
  for (Index r = 0; r < 2 * ma; ++r)
    for (Index c = 0; c < 2 * ma; ++c) out(posA[r], posA[c]) = a(r, c);
  for (Index r = 0; r < 2 * mb; ++r)
    for (Index c = 0; c < 2 * mb; ++c) out(posB[r], posB[c]) = b(r, c);
  return out;
}

SymplecticPath directSum(const SymplecticPath& a, const SymplecticPath& b) {
  if (std::abs(a.duration() - b.duration()) > 1e-12 * std::max(1.0, a.duration())) {
    throw ArgumentError("directSum: durations differ");
  }
  auto evaluate = [a, b](double t) { return directSumMatrix(a.evaluate(t), b.evaluate(t)); };
  if (a.hasAnalyticDerivative() && b.hasAnalyticDerivative()) {
    auto derivative = [a, b](double t) { return directSumMatrix(a.derivative(t), b.derivative(t)); };
    return SymplecticPath(a.dim() + b.dim(), a.duration(), evaluate, derivative);
  }
  return SymplecticPath(a.dim() + b.dim(), a.duration(), evaluate);
}

}  // namespace anosov::cz
