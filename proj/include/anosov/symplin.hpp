#pragma once

#include <Eigen/Dense>

namespace anosov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Parity { Even, Odd };

inline Parity parityOf(long long value) { return (value % 2 == 0) ? Parity::Even : Parity::Odd; }
inline const char* parityName(Parity p) { return p == Parity::Even ? "Even" : "Odd"; }

namespace symplin {

inline constexpr double kSymplecticTol = 1e-9;
inline constexpr double kIdentityTol = 1e-8;
inline constexpr double kDegeneracyCutoff = 1e-10;
inline constexpr double kMaxFrameCondition = 1e8;

/// Largest absolute entry.
double maxAbs(const Matrix& m);

/// Standard symplectic form [[0, -I], [I, 0]] on R^{2m}.
Matrix standardJ(Index m);

/// true iff ||M^T J M - J||_max <= tol. Throws DimensionError unless M is
/// square of even size.
bool isSymplectic(const Matrix& m, double tol = kSymplecticTol);

/// A square matrix of even size preserving the standard symplectic form.
///
/// Validation is scaled by max(1, ||M||_max^2) so that products of many
/// return maps (entries far above 1) are not rejected for round-off in
/// M^T J M alone.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix m, double tol = kSymplecticTol);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  Index halfDim() const noexcept { return m_.rows() / 2; }

 private:
  Matrix m_;
};

/// 2m x m frame spanning an isotropic m-plane.
class LagrangianFrame {
 public:
  explicit LagrangianFrame(Matrix frame, double isotropyTol = kSymplecticTol);

  const Matrix& frame() const noexcept { return f_; }
  Index ambientDim() const noexcept { return f_.rows(); }
  Index halfDim() const noexcept { return f_.cols(); }

 private:
  Matrix f_;
};

/// Blocks of P = [[A, B], [0, C]] in a symplectic basis adapted to an
/// invariant Lagrangian.
struct BlockTriple {
  Matrix a;
  Matrix b;
  Matrix c;

  /// Throws ValidationError unless C = (A^T)^{-1} and A^{-1}B is symmetric.
  void validate(double tol = kIdentityTol) const;
};

/// P = [[A, A S], [0, (A^T)^{-1}]]. Preserves span(e_1..e_m).
SymplecticMatrix makeLagrangianInvariant(const Matrix& a, const Matrix& s);

/// Symplectic basis [X | Y] with X = frame and Y its dual complement:
/// Y = J F (F^T F)^{-1}, then a symplectic Gram-Schmidt pass so that
/// X^T J Y = -I and Y^T J Y = 0 hold to round-off.
Matrix adaptedSymplecticBasis(const LagrangianFrame& frame);

/// Block decomposition of P relative to the invariant Lagrangian E.
BlockTriple lagrangianBlockForm(const SymplecticMatrix& p, const LagrangianFrame& e);

/// det(I - P). Throws DegeneracyError when |det(I - P)| <= cutoff.
double nondegenerateDet(const SymplecticMatrix& p, double cutoff = kDegeneracyCutoff);

/// Parity of the Conley-Zehnder index read off the return map:
/// Even iff (-1)^m sign det(I - P) = +1, m = half dimension.
Parity detSignParity(const SymplecticMatrix& p, double cutoff = kDegeneracyCutoff);

/// Relative error between det(I - P) and (det A)^{-1} det(I - A)^2 (-1)^m.
double detChainCheck(const SymplecticMatrix& p, const LagrangianFrame& e);

}  // namespace symplin
}  // namespace anosov
