#pragma once

// Two-level linear algebra: spinors, 2x2 complex matrices and the closed-form
// Hermitian eigensystem used throughout the library.

#include <array>
#include <cmath>
#include <complex>

namespace lzm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

/// Pair of amplitudes in the sigma_z basis {|0>, |1>}.
///
/// Used both for normalized states and for unnormalized tangent vectors
/// (parameter derivatives of a state).
struct TwoLevelState {
  cplx c0{};
  cplx c1{};

  static TwoLevelState ground() { return {0.0, 1.0}; }   // |1>
  static TwoLevelState excited() { return {1.0, 0.0}; }  // |0>
  static TwoLevelState plus_x() { return {M_SQRT1_2, M_SQRT1_2}; }
  static TwoLevelState minus_x() { return {M_SQRT1_2, -M_SQRT1_2}; }

  double norm_squared() const { return std::norm(c0) + std::norm(c1); }
  double norm() const { return std::sqrt(norm_squared()); }
  double p0() const { return std::norm(c0); }
  double p1() const { return std::norm(c1); }

  TwoLevelState normalized() const {
    const double n = norm();
    return {c0 / n, c1 / n};
  }

  friend TwoLevelState operator+(const TwoLevelState& a, const TwoLevelState& b) {
    return {a.c0 + b.c0, a.c1 + b.c1};
  }
  friend TwoLevelState operator-(const TwoLevelState& a, const TwoLevelState& b) {
    return {a.c0 - b.c0, a.c1 - b.c1};
  }
  friend TwoLevelState operator*(cplx s, const TwoLevelState& a) { return {s * a.c0, s * a.c1}; }
  friend TwoLevelState operator*(double s, const TwoLevelState& a) { return {s * a.c0, s * a.c1}; }
};

/// <a|b>
inline cplx inner(const TwoLevelState& a, const TwoLevelState& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

/// |<a|b>|^2 / (<a|a><b|b>); equals 1 iff the rays coincide.
inline double fidelity(const TwoLevelState& a, const TwoLevelState& b) {
  return std::norm(inner(a, b)) / (a.norm_squared() * b.norm_squared());
}

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx& operator()(int r, int c) { return m[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return m[2 * r + c]; }

  static Mat2 identity() { return {{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 zero() { return {}; }
  static Mat2 sigma_x() { return {{0.0, 1.0, 1.0, 0.0}}; }
  static Mat2 sigma_y() { return {{0.0, -kI, kI, 0.0}}; }
  static Mat2 sigma_z() { return {{1.0, 0.0, 0.0, -1.0}}; }

  /// (hx sx + hy sy + hz sz) / 2
  static Mat2 from_pauli_half(double hx, double hy, double hz) {
    return {{0.5 * hz, 0.5 * cplx(hx, -hy), 0.5 * cplx(hx, hy), -0.5 * hz}};
  }

  Mat2 adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int k = 0; k < 4; ++k) r.m[k] = a.m[k] + b.m[k];
    return r;
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int k = 0; k < 4; ++k) r.m[k] = a.m[k] - b.m[k];
    return r;
  }
  friend Mat2 operator*(cplx s, const Mat2& a) {
    Mat2 r;
    for (int k = 0; k < 4; ++k) r.m[k] = s * a.m[k];
    return r;
  }
  friend TwoLevelState operator*(const Mat2& a, const TwoLevelState& v) {
    return {a(0, 0) * v.c0 + a(0, 1) * v.c1, a(1, 0) * v.c0 + a(1, 1) * v.c1};
  }
};

/// Frobenius norm of a - a^dagger, scaled; zero for Hermitian input.
inline double hermiticity_defect(const Mat2& a) {
  const Mat2 d = a - a.adjoint();
  double s = 0.0;
  for (const auto& x : d.m) s += std::norm(x);
  return std::sqrt(s);
}

/// Eigen-decomposition of a Hermitian 2x2 matrix. `values[0] <= values[1]`;
/// `vectors[k]` is the unit eigenvector for `values[k]`.
struct HermitianEigen2 {
  std::array<double, 2> values{};
  std::array<TwoLevelState, 2> vectors{};
};

inline HermitianEigen2 hermitian_eigen(const Mat2& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double radius = std::hypot(half_diff, std::abs(b));

  HermitianEigen2 out;
  out.values = {mean - radius, mean + radius};
  if (radius == 0.0) {
    out.vectors = {TwoLevelState{1.0, 0.0}, TwoLevelState{0.0, 1.0}};
    return out;
  }
  // Upper eigenvector from the better-conditioned of the two row equations.
  TwoLevelState upper;
  if (half_diff >= 0.0) {
    upper = {half_diff + radius, std::conj(b)};
  } else {
    upper = {b, radius - half_diff};
  }
  upper = upper.normalized();
  // Orthogonal complement in C^2.
  const TwoLevelState lower{-std::conj(upper.c1), std::conj(upper.c0)};
  out.vectors = {lower, upper};
  return out;
}

}  // namespace lzm
