#include "eccert/kernels.hpp"

// NEON backend (AArch64). float64x2 gives two lanes, so each group of four
// striped accumulators is held in two vectors (lanes 0,1 and 2,3). Explicit
// mul/add intrinsics only — no vfmaq — so results stay bit-identical to the
// scalar backend.

#if defined(__aarch64__)
#include <arm_neon.h>

namespace eccert::kernels {
namespace {

double sum_impl(const double* x, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0);
  float64x2_t a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vld1q_f64(x + i));
    a23 = vaddq_f64(a23, vld1q_f64(x + i + 2));
  }
  double acc[4] = {vgetq_lane_f64(a01, 0), vgetq_lane_f64(a01, 1),
                   vgetq_lane_f64(a23, 0), vgetq_lane_f64(a23, 1)};
  for (; i < n; ++i) acc[i & 3] += x[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_impl(const double* x, const double* y, std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0);
  float64x2_t a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(a01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    a23 = vaddq_f64(a23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double acc[4] = {vgetq_lane_f64(a01, 0), vgetq_lane_f64(a01, 1),
                   vgetq_lane_f64(a23, 0), vgetq_lane_f64(a23, 1)};
  for (; i < n; ++i) acc[i & 3] += x[i] * y[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot3_impl(const double* x, const double* y, const double* z,
                 std::size_t n) {
  float64x2_t a01 = vdupq_n_f64(0.0);
  float64x2_t a23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a01 = vaddq_f64(
        a01, vmulq_f64(vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)),
                       vld1q_f64(z + i)));
    a23 = vaddq_f64(
        a23, vmulq_f64(vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)),
                       vld1q_f64(z + i + 2)));
  }
  double acc[4] = {vgetq_lane_f64(a01, 0), vgetq_lane_f64(a01, 1),
                   vgetq_lane_f64(a23, 0), vgetq_lane_f64(a23, 1)};
  for (; i < n; ++i) acc[i & 3] += (x[i] * y[i]) * z[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_add_impl(double a, const double* x, double b, const double* y,
                    double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)),
                                 vmulq_f64(vb, vld1q_f64(y + i))));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void rotate_points_2d_impl(const double* c, const double* s, std::size_t n,
                           double x, double y, double* xr, double* yr) {
  const float64x2_t vx = vdupq_n_f64(x);
  const float64x2_t vy = vdupq_n_f64(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vc = vld1q_f64(c + i);
    const float64x2_t vs = vld1q_f64(s + i);
    vst1q_f64(xr + i, vsubq_f64(vmulq_f64(vc, vx), vmulq_f64(vs, vy)));
    vst1q_f64(yr + i, vaddq_f64(vmulq_f64(vs, vx), vmulq_f64(vc, vy)));
  }
  for (; i < n; ++i) {
    xr[i] = c[i] * x - s[i] * y;
    yr[i] = s[i] * x + c[i] * y;
  }
}

void weighted_rotate_sum_2d_impl(const double* c, const double* s,
                                 const double* w, const double* vx,
                                 const double* vy, std::size_t n,
                                 double out[2]) {
  float64x2_t ax01 = vdupq_n_f64(0.0), ax23 = vdupq_n_f64(0.0);
  float64x2_t ay01 = vdupq_n_f64(0.0), ay23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int half = 0; half < 2; ++half) {
      const std::size_t k = i + 2 * static_cast<std::size_t>(half);
      const float64x2_t vc = vld1q_f64(c + k);
      const float64x2_t vs = vld1q_f64(s + k);
      const float64x2_t px = vld1q_f64(vx + k);
      const float64x2_t py = vld1q_f64(vy + k);
      const float64x2_t vw = vld1q_f64(w + k);
      const float64x2_t rx = vsubq_f64(vmulq_f64(vc, px), vmulq_f64(vs, py));
      const float64x2_t ry = vaddq_f64(vmulq_f64(vs, px), vmulq_f64(vc, py));
      if (half == 0) {
        ax01 = vaddq_f64(ax01, vmulq_f64(vw, rx));
        ay01 = vaddq_f64(ay01, vmulq_f64(vw, ry));
      } else {
        ax23 = vaddq_f64(ax23, vmulq_f64(vw, rx));
        ay23 = vaddq_f64(ay23, vmulq_f64(vw, ry));
      }
    }
  }
  double ax[4] = {vgetq_lane_f64(ax01, 0), vgetq_lane_f64(ax01, 1),
                  vgetq_lane_f64(ax23, 0), vgetq_lane_f64(ax23, 1)};
  double ay[4] = {vgetq_lane_f64(ay01, 0), vgetq_lane_f64(ay01, 1),
                  vgetq_lane_f64(ay23, 0), vgetq_lane_f64(ay23, 1)};
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
  const double* m[9];
  if (!transpose) {
    for (int i = 0; i < 9; ++i) m[i] = rot.r[i];
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[3 * i + j] = rot.r[3 * j + i];
  }
  const float64x2_t vx = vdupq_n_f64(x);
  const float64x2_t vy = vdupq_n_f64(y);
  const float64x2_t vz = vdupq_n_f64(z);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t r0 = vaddq_f64(
        vaddq_f64(vmulq_f64(vld1q_f64(m[0] + k), vx),
                  vmulq_f64(vld1q_f64(m[1] + k), vy)),
        vmulq_f64(vld1q_f64(m[2] + k), vz));
    const float64x2_t r1 = vaddq_f64(
        vaddq_f64(vmulq_f64(vld1q_f64(m[3] + k), vx),
                  vmulq_f64(vld1q_f64(m[4] + k), vy)),
        vmulq_f64(vld1q_f64(m[5] + k), vz));
    const float64x2_t r2 = vaddq_f64(
        vaddq_f64(vmulq_f64(vld1q_f64(m[6] + k), vx),
                  vmulq_f64(vld1q_f64(m[7] + k), vy)),
        vmulq_f64(vld1q_f64(m[8] + k), vz));
    vst1q_f64(xr + k, r0);
    vst1q_f64(yr + k, r1);
    vst1q_f64(zr + k, r2);
  }
  for (; k < n; ++k) {
    xr[k] = (m[0][k] * x + m[1][k] * y) + m[2][k] * z;
    yr[k] = (m[3][k] * x + m[4][k] * y) + m[5][k] * z;
    zr[k] = (m[6][k] * x + m[7][k] * y) + m[8][k] * z;
  }
}

void weighted_rotate_sum_3d_impl(const Rot3View& rot, const double* w,
                                 const double* vx, const double* vy,
                                 const double* vz, std::size_t n,
                                 double out[3]) {
  float64x2_t ax01 = vdupq_n_f64(0.0), ax23 = vdupq_n_f64(0.0);
  float64x2_t ay01 = vdupq_n_f64(0.0), ay23 = vdupq_n_f64(0.0);
  float64x2_t az01 = vdupq_n_f64(0.0), az23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int half = 0; half < 2; ++half) {
      const std::size_t k = i + 2 * static_cast<std::size_t>(half);
      const float64x2_t px = vld1q_f64(vx + k);
      const float64x2_t py = vld1q_f64(vy + k);
      const float64x2_t pz = vld1q_f64(vz + k);
      const float64x2_t vw = vld1q_f64(w + k);
      const float64x2_t rx = vaddq_f64(
          vaddq_f64(vmulq_f64(vld1q_f64(rot.r[0] + k), px),
                    vmulq_f64(vld1q_f64(rot.r[1] + k), py)),
          vmulq_f64(vld1q_f64(rot.r[2] + k), pz));
      const float64x2_t ry = vaddq_f64(
          vaddq_f64(vmulq_f64(vld1q_f64(rot.r[3] + k), px),
                    vmulq_f64(vld1q_f64(rot.r[4] + k), py)),
          vmulq_f64(vld1q_f64(rot.r[5] + k), pz));
      const float64x2_t rz = vaddq_f64(
          vaddq_f64(vmulq_f64(vld1q_f64(rot.r[6] + k), px),
                    vmulq_f64(vld1q_f64(rot.r[7] + k), py)),
          vmulq_f64(vld1q_f64(rot.r[8] + k), pz));
      if (half == 0) {
        ax01 = vaddq_f64(ax01, vmulq_f64(vw, rx));
        ay01 = vaddq_f64(ay01, vmulq_f64(vw, ry));
        az01 = vaddq_f64(az01, vmulq_f64(vw, rz));
      } else {
        ax23 = vaddq_f64(ax23, vmulq_f64(vw, rx));
        ay23 = vaddq_f64(ay23, vmulq_f64(vw, ry));
        az23 = vaddq_f64(az23, vmulq_f64(vw, rz));
      }
    }
  }
  double ax[4] = {vgetq_lane_f64(ax01, 0), vgetq_lane_f64(ax01, 1),
                  vgetq_lane_f64(ax23, 0), vgetq_lane_f64(ax23, 1)};
  double ay[4] = {vgetq_lane_f64(ay01, 0), vgetq_lane_f64(ay01, 1),
                  vgetq_lane_f64(ay23, 0), vgetq_lane_f64(ay23, 1)};
  double az[4] = {vgetq_lane_f64(az01, 0), vgetq_lane_f64(az01, 1),
                  vgetq_lane_f64(az23, 0), vgetq_lane_f64(az23, 1)};
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

const VTable* neon_table() {
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
  return &t;
}

}  // namespace detail
}  // namespace eccert::kernels

#endif  // __aarch64__
