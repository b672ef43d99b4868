#include "eccert/kernels.hpp"

// Portable reference backend. The loops below fix the exact floating-point
// evaluation order (four striped accumulators merged as (a0+a1)+(a2+a3),
// explicit multiply-then-add trees) that the SIMD backends replicate; this
// translation unit is built with -ffp-contract=off so the compiler cannot
// fuse any of these into FMA and break cross-backend bit equality.

namespace eccert::kernels {
namespace {

double sum_impl(const double* x, std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i];
    a1 += x[i + 1];
    a2 += x[i + 2];
    a3 += x[i + 3];
  }
  double acc[4] = {a0, a1, a2, a3};
  for (; i < n; ++i) acc[i & 3] += x[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_impl(const double* x, const double* y, std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i] * y[i];
    a1 += x[i + 1] * y[i + 1];
    a2 += x[i + 2] * y[i + 2];
    a3 += x[i + 3] * y[i + 3];
  }
  double acc[4] = {a0, a1, a2, a3};
  for (; i < n; ++i) acc[i & 3] += x[i] * y[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot3_impl(const double* x, const double* y, const double* z,
                 std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += (x[i] * y[i]) * z[i];
    a1 += (x[i + 1] * y[i + 1]) * z[i + 1];
    a2 += (x[i + 2] * y[i + 2]) * z[i + 2];
    a3 += (x[i + 3] * y[i + 3]) * z[i + 3];
  }
  double acc[4] = {a0, a1, a2, a3};
  for (; i < n; ++i) acc[i & 3] += (x[i] * y[i]) * z[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_add_impl(double a, const double* x, double b, const double* y,
                    double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void rotate_points_2d_impl(const double* c, const double* s, std::size_t n,
                           double x, double y, double* xr, double* yr) {
  for (std::size_t i = 0; i < n; ++i) {
    xr[i] = c[i] * x - s[i] * y;
    yr[i] = s[i] * x + c[i] * y;
  }
}

void weighted_rotate_sum_2d_impl(const double* c, const double* s,
                                 const double* w, const double* vx,
                                 const double* vy, std::size_t n,
                                 double out[2]) {
  double ax[4] = {0.0, 0.0, 0.0, 0.0};
  double ay[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const std::size_t k = i + l;
      const double rx = c[k] * vx[k] - s[k] * vy[k];
      const double ry = s[k] * vx[k] + c[k] * vy[k];
      ax[l] += w[k] * rx;
      ay[l] += w[k] * ry;
    }
  }
  for (; i < n; ++i) {
    const double rx = c[i] * vx[i] - s[i] * vy[i];
    const double ry = s[i] * vx[i] + c[i] * vy[i];
    ax[i & 3] += w[i] * rx;
    ay[i & 3] += w[i] * ry;
  }
  out[0] = (ax[0] + ax[1]) + (ax[2] + ax[3]);
  out[1] = (ay[0] + ay[1]) + (ay[2] + ay[3]);
}

void rotate_points_3d_impl(const Rot3View& rot, bool transpose, std::size_t n,
                           double x, double y, double z, double* xr, double* yr,
                           double* zr) {
  // Row pointers for the matrix actually applied: plain uses rows of R,
  // transposed uses columns of R.
  const double* m[9];
  if (!transpose) {
    for (int i = 0; i < 9; ++i) m[i] = rot.r[i];
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[3 * i + j] = rot.r[3 * j + i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    xr[k] = (m[0][k] * x + m[1][k] * y) + m[2][k] * z;
    yr[k] = (m[3][k] * x + m[4][k] * y) + m[5][k] * z;
    zr[k] = (m[6][k] * x + m[7][k] * y) + m[8][k] * z;
  }
}

void weighted_rotate_sum_3d_impl(const Rot3View& rot, const double* w,
                                 const double* vx, const double* vy,
                                 const double* vz, std::size_t n,
                                 double out[3]) {
  double ax[4] = {0.0, 0.0, 0.0, 0.0};
  double ay[4] = {0.0, 0.0, 0.0, 0.0};
  double az[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const std::size_t k = i + l;
      const double rx =
          (rot.r[0][k] * vx[k] + rot.r[1][k] * vy[k]) + rot.r[2][k] * vz[k];
      const double ry =
          (rot.r[3][k] * vx[k] + rot.r[4][k] * vy[k]) + rot.r[5][k] * vz[k];
      const double rz =
          (rot.r[6][k] * vx[k] + rot.r[7][k] * vy[k]) + rot.r[8][k] * vz[k];
      ax[l] += w[k] * rx;
      ay[l] += w[k] * ry;
      az[l] += w[k] * rz;
    }
  }
  for (; i < n; ++i) {
    const double rx =
        (rot.r[0][i] * vx[i] + rot.r[1][i] * vy[i]) + rot.r[2][i] * vz[i];
    const double ry =
        (rot.r[3][i] * vx[i] + rot.r[4][i] * vy[i]) + rot.r[5][i] * vz[i];
    const double rz =
        (rot.r[6][i] * vx[i] + rot.r[7][i] * vy[i]) + rot.r[8][i] * vz[i];
    ax[i & 3] += w[i] * rx;
    ay[i & 3] += w[i] * ry;
    az[i & 3] += w[i] * rz;
  }
  out[0] = (ax[0] + ax[1]) + (ax[2] + ax[3]);
  out[1] = (ay[0] + ay[1]) + (ay[2] + ay[3]);
  out[2] = (az[0] + az[1]) + (az[2] + az[3]);
}

}  // namespace

namespace detail {

const VTable& scalar_table() {
  static const VTable t = {
      sum_impl,
      dot_impl,
      dot3_impl,
      axpy_impl,
      scale_add_impl,
      rotate_points_2d_impl,
      weighted_rotate_sum_2d_impl,
      rotate_points_3d_impl,
      weighted_rotate_sum_3d_impl,
  };
  return t;
}

}  // namespace detail
}  // namespace eccert::kernels
