#pragma once

// Pauli algebra and the correspondence between pure qubit states and points
// of the unit sphere.

#include "qinvar/linalg2.hpp"

namespace qinvar {

/// Point on the unit sphere S^2.
class BlochVec {
 public:
  /// Accepts vectors whose length is within `tol` of one, then renormalizes.
  /// Throws NotUnitVector otherwise.
  static BlochVec make(const Vec3& u, double tol = 1e-9);

  /// Projects any finite nonzero vector onto the sphere.
  static BlochVec normalized(const Vec3& u);

  const Vec3& vec() const { return u_; }
  double x() const { return u_.x; }
  double y() const { return u_.y; }
  double z() const { return u_.z; }

  BlochVec operator-() const { return BlochVec{Vec3{-u_.x, -u_.y, -u_.z}}; }

 private:
  explicit BlochVec(const Vec3& u) : u_(u) {}
  Vec3 u_;
};

/// Normalized complex 2-vector in canonical global phase: the first component
/// with modulus above 1e-12 is real and nonnegative.
class Spinor {
 public:
  /// Normalizes and applies the canonical phase. Throws InvalidArgument on a
  /// zero or non-finite input.
  static Spinor make(const C2Vec& amplitudes);

  const C2Vec& amplitudes() const { return a_; }
  Complex c0() const { return a_.c0; }
  Complex c1() const { return a_.c1; }

 private:
  explicit Spinor(const C2Vec& a) : a_(a) {}
  C2Vec a_;
};

/// True if a and b differ only by a global phase (within tol per component).
bool equal_up_to_phase(const C2Vec& a, const C2Vec& b, double tol);

/// Hermitian 2x2 operator. The stored matrix is exactly Hermitian.
class Herm2 {
 public:
  /// Throws NotHermitian if some |M - M^dagger| entry exceeds
  /// tol * max(1, max|M_ij|).
  static Herm2 make(const Mat2& m, double tol = 1e-12);

  const Mat2& mat() const { return m_; }

 private:
  explicit Herm2(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

/// Pauli matrix sigma_k for k in {1, 2, 3}.
Herm2 pauli(int k);

/// c1 sigma1 + c2 sigma2 + c3 sigma3 for any real c.
Mat2 sigma_dot(const Vec3& c);

/// u . sigma = [u3, u1 - i u2; u1 + i u2, -u3].
Herm2 spin_op(const BlochVec& u);

/// Same, for a raw vector; throws NotUnitVector if | |u| - 1 | > 1e-9.
Herm2 spin_op(const Vec3& u);

/// Eigenvector of w . sigma for eigenvalue +1. Equals
/// [sqrt((1+w3)/2), (w1 + i w2)/sqrt(2(1+w3))] away from the south pole and
/// [0, 1] at it.
Spinor eigenstate_plus(const BlochVec& w);

/// Eigenvector of w . sigma for eigenvalue -1. Equals
/// [sqrt((1-w3)/2), -(w1 + i w2)/sqrt(2(1-w3))] away from the north pole and
/// [0, 1] at it.
Spinor eigenstate_minus(const BlochVec& w);

/// The w with eigenstate_plus(w) equal to psi up to phase.
BlochVec state_to_bloch(const Spinor& psi);

}  // namespace qinvar
