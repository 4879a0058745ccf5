#include "anosov/symplin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anosov/error.hpp"

namespace anosov::symplin {

namespace {

void requireEvenSquare(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw DimensionError(std::string(what) + ": expected a square matrix of even size, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double scale2(const Matrix& m) {
  const double s = std::max(1.0, maxAbs(m));
  return s * s;
}

}  // namespace

double maxAbs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix standardJ(Index m) {
  Matrix j = Matrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = -Matrix::Identity(m, m);
  j.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
  return j;
}

bool isSymplectic(const Matrix& m, double tol) {
  requireEvenSquare(m, "isSymplectic");
  const Matrix j = standardJ(m.rows() / 2);
  return maxAbs(m.transpose() * j * m - j) <= tol;
}

SymplecticMatrix::SymplecticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  requireEvenSquare(m_, "SymplecticMatrix");
  const double scale = scale2(m_);
  const Matrix j = standardJ(halfDim());
  const double defect = maxAbs(m_.transpose() * j * m_ - j);
  if (!(defect <= tol * scale)) {
    throw ValidationError("SymplecticMatrix: ||M^T J M - J|| = " + std::to_string(defect));
  }
  const double det = m_.determinant();
  if (!(std::abs(det - 1.0) <= kIdentityTol * scale)) {
    throw ValidationError("SymplecticMatrix: determinant " + std::to_string(det) + " != 1");
  }
}

LagrangianFrame::LagrangianFrame(Matrix frame, double isotropyTol) : f_(std::move(frame)) {
  if (f_.rows() != 2 * f_.cols() || f_.cols() == 0) {
    throw DimensionError("LagrangianFrame: expected a 2m x m frame, got " +
                         std::to_string(f_.rows()) + "x" + std::to_string(f_.cols()));
  }
  Eigen::JacobiSVD<Matrix> svd(f_);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 1e-9 * largest) || largest / smallest > kMaxFrameCondition) {
    throw SingularityError("LagrangianFrame: columns are (nearly) dependent, condition " +
                           std::to_string(largest / smallest));
  }
  const Matrix j = standardJ(f_.cols());
  const double iso = maxAbs(f_.transpose() * j * f_);
  if (!(iso <= isotropyTol * std::max(1.0, largest * largest))) {
    throw IsotropyError("LagrangianFrame: ||F^T J F|| = " + std::to_string(iso));
  }
}

void BlockTriple::validate(double tol) const {
  const Index m = a.rows();
  if (a.cols() != m || b.rows() != m || b.cols() != m || c.rows() != m || c.cols() != m) {
    throw DimensionError("BlockTriple: blocks must all be m x m");
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw SingularityError("BlockTriple: A is singular");
  const Matrix aInvT = lu.inverse().transpose();
  const double scaleC = std::max(1.0, maxAbs(aInvT));
  if (!(maxAbs(c - aInvT) <= tol * scaleC)) {
    throw ValidationError("BlockTriple: C differs from (A^T)^{-1}");
  }
  const Matrix s = lu.solve(b);
  if (!(maxAbs(s - s.transpose()) <= tol * std::max(1.0, maxAbs(s)))) {
    throw ValidationError("BlockTriple: A^{-1} B is not symmetric");
  }
}

SymplecticMatrix makeLagrangianInvariant(const Matrix& a, const Matrix& s) {
  const Index m = a.rows();
  if (a.cols() != m || s.rows() != m || s.cols() != m || m == 0) {
    throw DimensionError("makeLagrangianInvariant: A and S must be square of equal size");
  }
  if (!(maxAbs(s - s.transpose()) <= 1e-9)) {
    throw ValidationError("makeLagrangianInvariant: S is not symmetric");
  }
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw SingularityError("makeLagrangianInvariant: A is singular");

  Matrix p = Matrix::Zero(2 * m, 2 * m);
  p.topLeftCorner(m, m) = a;
  p.topRightCorner(m, m) = a * s;
  p.bottomRightCorner(m, m) = lu.inverse().transpose();
  return SymplecticMatrix(std::move(p));
}

Matrix adaptedSymplecticBasis(const LagrangianFrame& frame) {
  const Matrix& x = frame.frame();
  const Index m = frame.halfDim();
  const Matrix j = standardJ(m);

  const Matrix gram = x.transpose() * x;
  Matrix y = j * x * gram.ldlt().solve(Matrix::Identity(m, m));

  // Normalize the pairing X^T J Y = -I, then remove the isotropy defect of Y
  // with a shear along X (Y <- Y - X K, K = 1/2 Y^T J Y).
  const Matrix pairing = -(x.transpose() * j * y);
  y = y * pairing.partialPivLu().inverse();
  const Matrix defect = y.transpose() * j * y;
  y -= 0.5 * x * defect;

  Matrix q(2 * m, 2 * m);
  q << x, y;
  return q;
}

BlockTriple lagrangianBlockForm(const SymplecticMatrix& p, const LagrangianFrame& e) {
  const Index m = p.halfDim();
  if (e.halfDim() != m) {
    throw DimensionError("lagrangianBlockForm: frame dimension does not match P");
  }
  const Matrix& f = e.frame();
  const Matrix pf = p.matrix() * f;
  const Matrix g = (f.transpose() * f).ldlt().solve(f.transpose() * pf);
  const double residual = maxAbs(pf - f * g);
  if (!(residual <= kIdentityTol * std::max(1.0, maxAbs(pf)))) {
    throw InvarianceError("lagrangianBlockForm: E is not invariant under P (residual " +
                          std::to_string(residual) + ")");
  }

  const Matrix q = adaptedSymplecticBasis(e);
  // Q is symplectic, so Q^{-1} = -J Q^T J.
  const Matrix j = standardJ(m);
  const Matrix qInv = -j * q.transpose() * j;
  const Matrix blocks = qInv * p.matrix() * q;

  BlockTriple triple{blocks.topLeftCorner(m, m), blocks.topRightCorner(m, m),
                     blocks.bottomRightCorner(m, m)};
  triple.validate();
  return triple;
}

double nondegenerateDet(const SymplecticMatrix& p, double cutoff) {
  const Matrix& pm = p.matrix();
  const double det = (Matrix::Identity(pm.rows(), pm.cols()) - pm).determinant();
  if (!(std::abs(det) > cutoff)) {
    throw DegeneracyError("det(I - P) = " + std::to_string(det) + " is within the degeneracy cutoff");
  }
  return det;
}

Parity detSignParity(const SymplecticMatrix& p, double cutoff) {
  const double det = nondegenerateDet(p, cutoff);
  const int sign = det > 0 ? 1 : -1;
  const int orientation = (p.halfDim() % 2 == 0) ? 1 : -1;
  return sign * orientation == 1 ? Parity::Even : Parity::Odd;
}

double detChainCheck(const SymplecticMatrix& p, const LagrangianFrame& e) {
  const double lhs = nondegenerateDet(p);
  const BlockTriple t = lagrangianBlockForm(p, e);
  const Index m = t.a.rows();
  const double detA = t.a.determinant();
  const double detIA = (Matrix::Identity(m, m) - t.a).determinant();
  const double rhs = detIA * detIA / detA * ((m % 2 == 0) ? 1.0 : -1.0);
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

}  // namespace anosov::symplin
