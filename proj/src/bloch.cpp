#include "qinvar/bloch.hpp"

#include <string>

#include "qinvar/errors.hpp"

namespace qinvar {

namespace {

constexpr double kPhaseCutoff = 1e-12;

}  // namespace

BlochVec BlochVec::make(const Vec3& u, double tol) {
  if (!is_finite(u)) throw NotUnitVector("Bloch vector has non-finite components");
  const double len = length(u);
  if (std::abs(len - 1.0) > tol) {
    throw NotUnitVector("Bloch vector length " + std::to_string(len) + " is not 1");
  }
  return BlochVec{(1.0 / len) * u};
}

BlochVec BlochVec::normalized(const Vec3& u) {
  const double len = length(u);
  if (!is_finite(u) || len == 0.0) throw NotUnitVector("cannot normalize a zero or non-finite vector");
  return BlochVec{(1.0 / len) * u};
}

Spinor Spinor::make(const C2Vec& amplitudes) {
  const double n2 = norm2(amplitudes);
  if (!std::isfinite(n2) || n2 == 0.0) throw InvalidArgument("cannot normalize a zero or non-finite spinor");
  C2Vec a = Complex(1.0 / std::sqrt(n2)) * amplitudes;
  for (const Complex c : {a.c0, a.c1}) {
    const double m = std::abs(c);
    if (m > kPhaseCutoff) {
      a = (std::conj(c) / m) * a;
      break;
    }
  }
  // Remove the rounding residue left on the phase-fixed component.
  if (std::abs(a.c0) > kPhaseCutoff) {
    a.c0 = a.c0.real();
  } else {
    a.c1 = a.c1.real();
  }
  return Spinor{a};
}

bool equal_up_to_phase(const C2Vec& a, const C2Vec& b, double tol) {
  // Align b's phase to a through their overlap.
  const Complex ov = inner(b, a);
  const double m = std::abs(ov);
  if (m == 0.0) return max_abs_diff(a, b) <= tol;
  const C2Vec aligned = (ov / m) * b;
  return max_abs_diff(a, aligned) <= tol;
}

Herm2 Herm2::make(const Mat2& m, double tol) {
  const double bound = tol * std::max(1.0, max_abs(m));
  if (!std::isfinite(max_abs(m)) || max_abs_diff(m, adjoint(m)) > bound) {
    throw NotHermitian("operator is not Hermitian");
  }
  const Complex off = 0.5 * (m.m01 + std::conj(m.m10));
  return Herm2{Mat2{m.m00.real(), off, std::conj(off), m.m11.real()}};
}

Herm2 pauli(int k) {
  switch (k) {
    case 1:
      return Herm2::make({0.0, 1.0, 1.0, 0.0});
    case 2:
      return Herm2::make({0.0, -kI, kI, 0.0});
    case 3:
      return Herm2::make({1.0, 0.0, 0.0, -1.0});
    default:
      throw InvalidArgument("Pauli index must be 1, 2 or 3, got " + std::to_string(k));
  }
}

Mat2 sigma_dot(const Vec3& c) {
  const Complex lower{c.x, c.y};
  return {c.z, std::conj(lower), lower, -c.z};
}

Herm2 spin_op(const BlochVec& u) { return Herm2::make(sigma_dot(u.vec())); }

Herm2 spin_op(const Vec3& u) { return spin_op(BlochVec::make(u)); }

// Each eigenvector has two closed forms; the one whose norm stays away from
// zero is used so the poles need no special casing.
Spinor eigenstate_plus(const BlochVec& w) {
  const Complex t{w.x(), w.y()};
  if (w.z() >= 0.0) return Spinor::make({1.0 + w.z(), t});
  return Spinor::make({std::conj(t), 1.0 - w.z()});
}

Spinor eigenstate_minus(const BlochVec& w) {
  const Complex t{w.x(), w.y()};
  if (w.z() <= 0.0) return Spinor::make({1.0 - w.z(), -t});
  return Spinor::make({-std::conj(t), 1.0 + w.z()});
}

BlochVec state_to_bloch(const Spinor& psi) {
  // With c0 real and nonnegative this is w1 = 2|c0| Re c1, w2 = 2|c0| Im c1,
  // w3 = 2|c0|^2 - 1.
  const Complex cross = std::conj(psi.c0()) * psi.c1();
  return BlochVec::normalized(
      {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(psi.c0()) - std::norm(psi.c1())});
}

}  // namespace qinvar
