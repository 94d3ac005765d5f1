#include "fo/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace fo::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2sq(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby(double a, const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scal(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void csr_spmv(std::size_t rows, const std::int32_t* row_ptr,
              const std::int32_t* col, const double* val, const double* x,
              double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      s += val[k] * x[col[k]];
    y[i] = s;
  }
}

void project_unit3(double* vx, double* vy, double* vz, const double* freemask,
                   double eps, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double norm =
        std::sqrt(vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i]);
    const double s = 1.0 / (eps + norm);
    const double f = 1.0 + freemask[i] * (s - 1.0);
    vx[i] *= f;
    vy[i] *= f;
    vz[i] *= f;
  }
}

}  // namespace scalar

namespace {

Lane pick_lane() {
#if defined(FO_HAVE_AVX2_LANE)
  bool have = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (const char* env = std::getenv("FO_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Lane::Scalar;
    if (std::strcmp(env, "avx2") == 0 && have) return Lane::Avx2;
  }
  return have ? Lane::Avx2 : Lane::Scalar;
#else
  return Lane::Scalar;
#endif
}

}  // namespace

Lane active_lane() {
  static const Lane lane = pick_lane();
  return lane;
}

const char* lane_name() {
  return active_lane() == Lane::Avx2 ? "avx2" : "scalar";
}

#if defined(FO_HAVE_AVX2_LANE)
#define FO_DISPATCH(fn, ...) \
  return active_lane() == Lane::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define FO_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double dot(const double* x, const double* y, std::size_t n) {
  FO_DISPATCH(dot, x, y, n);
}
double nrm2sq(const double* x, std::size_t n) { FO_DISPATCH(nrm2sq, x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) {
  FO_DISPATCH(axpy, a, x, y, n);
}
void axpby(double a, const double* x, double b, double* y, std::size_t n) {
  FO_DISPATCH(axpby, a, x, b, y, n);
}
void scal(double a, double* x, std::size_t n) { FO_DISPATCH(scal, a, x, n); }
void csr_spmv(std::size_t rows, const std::int32_t* row_ptr,
              const std::int32_t* col, const double* val, const double* x,
              double* y) {
  FO_DISPATCH(csr_spmv, rows, row_ptr, col, val, x, y);
}
void project_unit3(double* vx, double* vy, double* vz, const double* freemask,
                   double eps, std::size_t n) {
  FO_DISPATCH(project_unit3, vx, vy, vz, freemask, eps, n);
}

}  // namespace fo::kernels
