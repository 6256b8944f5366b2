#pragma once

#include <array>
#include <cmath>

namespace finsler {

using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

inline double det4(const Mat4& a) {
  const double b0 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double b1 = a[0][0] * a[1][2] - a[0][2] * a[1][0];
  const double b2 = a[0][0] * a[1][3] - a[0][3] * a[1][0];
  const double b3 = a[0][1] * a[1][2] - a[0][2] * a[1][1];
  const double b4 = a[0][1] * a[1][3] - a[0][3] * a[1][1];
  const double b5 = a[0][2] * a[1][3] - a[0][3] * a[1][2];
  const double c0 = a[2][0] * a[3][1] - a[2][1] * a[3][0];
  const double c1 = a[2][0] * a[3][2] - a[2][2] * a[3][0];
  const double c2 = a[2][0] * a[3][3] - a[2][3] * a[3][0];
  const double c3 = a[2][1] * a[3][2] - a[2][2] * a[3][1];
  const double c4 = a[2][1] * a[3][3] - a[2][3] * a[3][1];
  const double c5 = a[2][2] * a[3][3] - a[2][3] * a[3][2];
  return b0 * c5 - b1 * c4 + b2 * c3 + b3 * c2 - b4 * c1 + b5 * c0;
}

/// Gauss-Jordan with partial pivoting. Returns false if a pivot vanishes.
inline bool invert4(const Mat4& a, Mat4& out) {
  double w[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      w[i][j] = a[i][j];
      w[i][j + 4] = (i == j) ? 1.0 : 0.0;
    }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(w[r][col]) > std::abs(w[piv][col])) piv = r;
    if (w[piv][col] == 0.0) return false;
    if (piv != col)
      for (int j = 0; j < 8; ++j) std::swap(w[piv][j], w[col][j]);
    const double inv = 1.0 / w[col][col];
    for (int j = 0; j < 8; ++j) w[col][j] *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = w[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 8; ++j) w[r][j] -= f * w[col][j];
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = w[i][j + 4];
  return true;
}

/// Eigenvalues of a symmetric 4x4 matrix by cyclic Jacobi rotations,
/// returned in ascending order.
inline Vec4 sym4_eigenvalues(Mat4 a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  Vec4 ev{a[0][0], a[1][1], a[2][2], a[3][3]};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (ev[j] < ev[i]) std::swap(ev[i], ev[j]);
  return ev;
}

}  // namespace finsler
