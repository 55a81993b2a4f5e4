#pragma once

// Fixed-size kernels for two-level systems: complex 2-vectors, 2x2 complex
// matrices and real 3-vectors. Everything is a plain value type; every
// operation returns a fresh value.

#include <algorithm>
#include <cmath>
#include <complex>

namespace qinvar {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

struct C2Vec {
  Complex c0;
  Complex c1;
};

// Row-major 2x2 complex matrix.
struct Mat2 {
  Complex m00;
  Complex m01;
  Complex m10;
  Complex m11;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// ---- C2Vec ----------------------------------------------------------------

/// Conjugate-linear in the first argument.
inline Complex inner(const C2Vec& a, const C2Vec& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

inline double norm2(const C2Vec& a) { return std::norm(a.c0) + std::norm(a.c1); }

inline C2Vec operator+(const C2Vec& a, const C2Vec& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
inline C2Vec operator-(const C2Vec& a, const C2Vec& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
inline C2Vec operator*(Complex s, const C2Vec& a) { return {s * a.c0, s * a.c1}; }

inline double max_abs_diff(const C2Vec& a, const C2Vec& b) {
  return std::max(std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1));
}

// ---- Mat2 -----------------------------------------------------------------

inline Mat2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}

inline Mat2 operator*(Complex s, const Mat2& a) {
  return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline C2Vec operator*(const Mat2& a, const C2Vec& v) {
  return {a.m00 * v.c0 + a.m01 * v.c1, a.m10 * v.c0 + a.m11 * v.c1};
}

inline Mat2 matmul(const Mat2& a, const Mat2& b) { return a * b; }
inline Mat2 matadd(const Mat2& a, const Mat2& b) { return a + b; }
inline Mat2 scale(Complex s, const Mat2& a) { return s * a; }

inline Mat2 adjoint(const Mat2& a) {
  return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}

inline Complex trace(const Mat2& a) { return a.m00 + a.m11; }

inline Complex det(const Mat2& a) { return a.m00 * a.m11 - a.m01 * a.m10; }

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }
inline Mat2 anticommutator(const Mat2& a, const Mat2& b) { return a * b + b * a; }

/// Largest entrywise modulus.
inline double max_abs(const Mat2& a) {
  return std::max({std::abs(a.m00), std::abs(a.m01), std::abs(a.m10), std::abs(a.m11)});
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

inline double frobenius(const Mat2& a) {
  return std::sqrt(std::norm(a.m00) + std::norm(a.m01) + std::norm(a.m10) + std::norm(a.m11));
}

inline double max_imag(const Mat2& a) {
  return std::max({std::abs(a.m00.imag()), std::abs(a.m01.imag()), std::abs(a.m10.imag()),
                   std::abs(a.m11.imag())});
}

inline double max_imag(const C2Vec& a) {
  return std::max(std::abs(a.c0.imag()), std::abs(a.c1.imag()));
}

// ---- Vec3 -----------------------------------------------------------------

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }

inline double dot3(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

/// Right-handed cross product.
inline Vec3 cross3(const Vec3& u, const Vec3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

/// Signed volume (u x v) . w.
inline double triple3(const Vec3& u, const Vec3& v, const Vec3& w) {
  return dot3(cross3(u, v), w);
}

inline double length(const Vec3& u) { return std::sqrt(dot3(u, u)); }

inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

inline bool is_finite(const Vec3& u) {
  return std::isfinite(u.x) && std::isfinite(u.y) && std::isfinite(u.z);
}

}  // namespace qinvar
