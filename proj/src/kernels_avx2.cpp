#include "eccert/kernels.hpp"

// AVX2 backend. Each loop reproduces the scalar backend's evaluation tree
// exactly: one 256-bit lane per striped accumulator, explicit mul/add
// intrinsics (never FMA), identical scalar tail handling, and the same
// (a0+a1)+(a2+a3) merge. Results are bit-identical to the scalar backend.

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace eccert::kernels {
namespace {

inline void store4(__m256d v, double out[4]) { _mm256_storeu_pd(out, v); }

double sum_impl(const double* x, std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(x + i));
  }
  double acc[4];
  store4(vacc, acc);
  for (; i < n; ++i) acc[i & 3] += x[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot_impl(const double* x, const double* y, std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    vacc = _mm256_add_pd(vacc, p);
  }
  double acc[4];
  store4(vacc, acc);
  for (; i < n; ++i) acc[i & 3] += x[i] * y[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double dot3_impl(const double* x, const double* y, const double* z,
                 std::size_t n) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(
        _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)),
        _mm256_loadu_pd(z + i));
    vacc = _mm256_add_pd(vacc, p);
  }
  double acc[4];
  store4(vacc, acc);
  for (; i < n; ++i) acc[i & 3] += (x[i] * y[i]) * z[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void axpy_impl(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r =
        _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_add_impl(double a, const double* x, double b, const double* y,
                    double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                                    _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void rotate_points_2d_impl(const double* c, const double* s, std::size_t n,
                           double x, double y, double* xr, double* yr) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vy = _mm256_set1_pd(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d vs = _mm256_loadu_pd(s + i);
    _mm256_storeu_pd(xr + i, _mm256_sub_pd(_mm256_mul_pd(vc, vx), _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(yr + i, _mm256_add_pd(_mm256_mul_pd(vs, vx), _mm256_mul_pd(vc, vy)));
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
  __m256d accx = _mm256_setzero_pd();
  __m256d accy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d px = _mm256_loadu_pd(vx + i);
    const __m256d py = _mm256_loadu_pd(vy + i);
    const __m256d rx = _mm256_sub_pd(_mm256_mul_pd(vc, px), _mm256_mul_pd(vs, py));
    const __m256d ry = _mm256_add_pd(_mm256_mul_pd(vs, px), _mm256_mul_pd(vc, py));
    accx = _mm256_add_pd(accx, _mm256_mul_pd(vw, rx));
    accy = _mm256_add_pd(accy, _mm256_mul_pd(vw, ry));
  }
  double ax[4], ay[4];
  store4(accx, ax);
  store4(accy, ay);
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
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d vz = _mm256_set1_pd(z);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d r0 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(m[0] + k), vx),
                      _mm256_mul_pd(_mm256_loadu_pd(m[1] + k), vy)),
        _mm256_mul_pd(_mm256_loadu_pd(m[2] + k), vz));
    const __m256d r1 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(m[3] + k), vx),
                      _mm256_mul_pd(_mm256_loadu_pd(m[4] + k), vy)),
        _mm256_mul_pd(_mm256_loadu_pd(m[5] + k), vz));
    const __m256d r2 = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(m[6] + k), vx),
                      _mm256_mul_pd(_mm256_loadu_pd(m[7] + k), vy)),
        _mm256_mul_pd(_mm256_loadu_pd(m[8] + k), vz));
    _mm256_storeu_pd(xr + k, r0);
    _mm256_storeu_pd(yr + k, r1);
    _mm256_storeu_pd(zr + k, r2);
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
  __m256d accx = _mm256_setzero_pd();
  __m256d accy = _mm256_setzero_pd();
  __m256d accz = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d px = _mm256_loadu_pd(vx + i);
    const __m256d py = _mm256_loadu_pd(vy + i);
    const __m256d pz = _mm256_loadu_pd(vz + i);
    const __m256d vw = _mm256_loadu_pd(w + i);
    const __m256d rx = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(rot.r[0] + i), px),
                      _mm256_mul_pd(_mm256_loadu_pd(rot.r[1] + i), py)),
        _mm256_mul_pd(_mm256_loadu_pd(rot.r[2] + i), pz));
    const __m256d ry = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(rot.r[3] + i), px),
                      _mm256_mul_pd(_mm256_loadu_pd(rot.r[4] + i), py)),
        _mm256_mul_pd(_mm256_loadu_pd(rot.r[5] + i), pz));
    const __m256d rz = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(rot.r[6] + i), px),
                      _mm256_mul_pd(_mm256_loadu_pd(rot.r[7] + i), py)),
        _mm256_mul_pd(_mm256_loadu_pd(rot.r[8] + i), pz));
    accx = _mm256_add_pd(accx, _mm256_mul_pd(vw, rx));
    accy = _mm256_add_pd(accy, _mm256_mul_pd(vw, ry));
    accz = _mm256_add_pd(accz, _mm256_mul_pd(vw, rz));
  }
  double ax[4], ay[4], az[4];
  store4(accx, ax);
  store4(accy, ay);
  store4(accz, az);
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

const VTable* avx2_table() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
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

#endif  // x86-64
