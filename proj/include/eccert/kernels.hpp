#pragma once

#include <cstddef>

/// \file kernels.hpp
/// Data-parallel inner loops used by the quadrature and rotation-averaging
/// layers: weighted reductions over node buffers and batched application of
/// rotation matrices to points/values.
///
/// Every operation exists as a portable scalar reference implementation and,
/// where the target supports it, a SIMD variant (AVX2 on x86-64, NEON on
/// AArch64). The active variant is selected at runtime from CPU capabilities
/// and can be overridden for testing. All variants are constructed to produce
/// *bit-identical* results: reductions stripe the input over four independent
/// accumulators (the natural SIMD lane structure) and merge them in a fixed
/// order, and the translation units are compiled with floating-point
/// contraction disabled so no backend silently fuses multiply-add.

namespace eccert::kernels {

enum class Backend { scalar, avx2, neon };

/// Human-readable backend name ("scalar", "avx2", "neon").
const char* backend_name(Backend b);

/// Backend the free functions below currently dispatch to.
Backend active_backend();

/// Best backend available on the running CPU (probed once).
Backend preferred_backend();

/// Select a backend explicitly. Returns false and leaves the selection
/// unchanged if the requested backend is unavailable at runtime.
bool select_backend(Backend b);

/// Sum of x[0..n).
double sum(const double* x, std::size_t n);

/// Dot product: sum of x[i]*y[i].
double dot(const double* x, const double* y, std::size_t n);

/// Weighted dot product: sum of x[i]*y[i]*z[i], evaluated as (x*y)*z.
double dot3(const double* x, const double* y, const double* z, std::size_t n);

/// y[i] += a*x[i].
void axpy(double a, const double* x, double* y, std::size_t n);

/// out[i] = a*x[i] + b*y[i]. `out` may alias x or y.
void scale_add(double a, const double* x, double b, const double* y,
               double* out, std::size_t n);

/// Apply a batch of plane rotations R_k = [[c_k, -s_k], [s_k, c_k]] to one
/// point (x, y): xr[k] = c[k]*x - s[k]*y, yr[k] = s[k]*x + c[k]*y.
/// For transposed rotations pass a negated sine array.
void rotate_points_2d(const double* c, const double* s, std::size_t n,
                      double x, double y, double* xr, double* yr);

/// out[2] = sum_k w[k] * (R_k * v_k) for 2-D rotations in (c, s) form and
/// value batch (vx, vy).
void weighted_rotate_sum_2d(const double* c, const double* s, const double* w,
                            const double* vx, const double* vy, std::size_t n,
                            double out[2]);

/// Structure-of-arrays view of a batch of 3x3 rotation matrices; r[3*i + j]
/// points to the array of entries R(i, j) over the batch.
struct Rot3View {
  const double* r[9];
};

/// Apply each matrix of the batch (or its transpose) to one point.
void rotate_points_3d(const Rot3View& rot, bool transpose, std::size_t n,
                      double x, double y, double z, double* xr, double* yr,
                      double* zr);

/// out[3] = sum_k w[k] * (R_k * v_k) for the 3-D batch and values (vx, vy, vz).
void weighted_rotate_sum_3d(const Rot3View& rot, const double* w,
                            const double* vx, const double* vy,
                            const double* vz, std::size_t n, double out[3]);

namespace detail {

/// Function table one backend implements; used by the dispatcher.
struct VTable {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*dot3)(const double*, const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale_add)(double, const double*, double, const double*, double*,
                    std::size_t);
  void (*rotate_points_2d)(const double*, const double*, std::size_t, double,
                           double, double*, double*);
  void (*weighted_rotate_sum_2d)(const double*, const double*, const double*,
                                 const double*, const double*, std::size_t,
                                 double*);
  void (*rotate_points_3d)(const Rot3View&, bool, std::size_t, double, double,
                           double, double*, double*, double*);
  void (*weighted_rotate_sum_3d)(const Rot3View&, const double*, const double*,
                                 const double*, const double*, std::size_t,
                                 double*);
};

const VTable& scalar_table();
const VTable* avx2_table();  // nullptr when not compiled in or CPU lacks AVX2
const VTable* neon_table();  // nullptr when not compiled in

}  // namespace detail

}  // namespace eccert::kernels
