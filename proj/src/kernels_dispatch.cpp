#include "eccert/kernels.hpp"

#include <atomic>

namespace eccert::kernels {

namespace detail {

// Fallback definitions for backends whose translation units are not part of
// this build (each SIMD file only defines its table on its own architecture).
#if !(defined(__x86_64__) || defined(_M_X64))
const VTable* avx2_table() { return nullptr; }
#endif
#if !defined(__aarch64__)
const VTable* neon_table() { return nullptr; }
#endif

}  // namespace detail

namespace {

const detail::VTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &detail::scalar_table();
    case Backend::avx2:
      return detail::avx2_table();
    case Backend::neon:
      return detail::neon_table();
  }
  return nullptr;
}

struct Dispatch {
  std::atomic<Backend> backend;
  std::atomic<const detail::VTable*> table;

  Dispatch() {
    Backend b = preferred_backend();
    backend.store(b, std::memory_order_relaxed);
    table.store(table_for(b), std::memory_order_relaxed);
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

const detail::VTable& active_table() {
  return *dispatch().table.load(std::memory_order_relaxed);
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

Backend preferred_backend() {
  if (detail::avx2_table() != nullptr) return Backend::avx2;
  if (detail::neon_table() != nullptr) return Backend::neon;
  return Backend::scalar;
}

Backend active_backend() {
  return dispatch().backend.load(std::memory_order_relaxed);
}

bool select_backend(Backend b) {
  const detail::VTable* t = table_for(b);
  if (t == nullptr) return false;
  dispatch().backend.store(b, std::memory_order_relaxed);
  dispatch().table.store(t, std::memory_order_relaxed);
  return true;
}

double sum(const double* x, std::size_t n) { return active_table().sum(x, n); }

double dot(const double* x, const double* y, std::size_t n) {
  return active_table().dot(x, y, n);
}

double dot3(const double* x, const double* y, const double* z, std::size_t n) {
  return active_table().dot3(x, y, z, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  active_table().axpy(a, x, y, n);
}

void scale_add(double a, const double* x, double b, const double* y,
               double* out, std::size_t n) {
  active_table().scale_add(a, x, b, y, out, n);
}

void rotate_points_2d(const double* c, const double* s, std::size_t n, double x,
                      double y, double* xr, double* yr) {
  active_table().rotate_points_2d(c, s, n, x, y, xr, yr);
}

void weighted_rotate_sum_2d(const double* c, const double* s, const double* w,
                            const double* vx, const double* vy, std::size_t n,
                            double out[2]) {
  active_table().weighted_rotate_sum_2d(c, s, w, vx, vy, n, out);
}

void rotate_points_3d(const Rot3View& rot, bool transpose, std::size_t n,
                      double x, double y, double z, double* xr, double* yr,
                      double* zr) {
  active_table().rotate_points_3d(rot, transpose, n, x, y, z, xr, yr, zr);
}

void weighted_rotate_sum_3d(const Rot3View& rot, const double* w,
                            const double* vx, const double* vy,
                            const double* vz, std::size_t n, double out[3]) {
  active_table().weighted_rotate_sum_3d(rot, w, vx, vy, vz, n, out);
}

}  // namespace eccert::kernels
