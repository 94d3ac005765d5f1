// AVX2 lane.  This translation unit is compiled with -mavx2 -mfma and must
// only be entered after the runtime CPU check in active_lane().

#include "fo/kernels.hpp"

#if defined(FO_HAVE_AVX2_LANE)

#include <immintrin.h>

#include <cmath>

namespace fo::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2sq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpby(double a, const double* x, double b, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scal(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void csr_spmv(std::size_t rows, const std::int32_t* row_ptr,
              const std::int32_t* col, const double* val, const double* x,
              double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int32_t begin = row_ptr[i];
    const std::int32_t end = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int32_t k = begin;
    for (; k + 4 <= end; k += 4) {
      __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(col + k));
      __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(val + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

void project_unit3(double* vx, double* vy, double* vz, const double* freemask,
                   double eps, std::size_t n) {
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(vx + i);
    __m256d y = _mm256_loadu_pd(vy + i);
    __m256d z = _mm256_loadu_pd(vz + i);
    __m256d nsq = _mm256_mul_pd(x, x);
    nsq = _mm256_fmadd_pd(y, y, nsq);
    nsq = _mm256_fmadd_pd(z, z, nsq);
    __m256d norm = _mm256_sqrt_pd(nsq);
    __m256d s = _mm256_div_pd(one, _mm256_add_pd(veps, norm));
    __m256d m = _mm256_loadu_pd(freemask + i);
    __m256d f = _mm256_fmadd_pd(m, _mm256_sub_pd(s, one), one);
    _mm256_storeu_pd(vx + i, _mm256_mul_pd(x, f));
    _mm256_storeu_pd(vy + i, _mm256_mul_pd(y, f));
    _mm256_storeu_pd(vz + i, _mm256_mul_pd(z, f));
  }
  for (; i < n; ++i) {
    const double norm =
        std::sqrt(vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i]);
    const double s = 1.0 / (eps + norm);
    const double f = 1.0 + freemask[i] * (s - 1.0);
    vx[i] *= f;
    vy[i] *= f;
    vz[i] *= f;
  }
}

}  // namespace fo::kernels::avx2

#endif  // FO_HAVE_AVX2_LANE
