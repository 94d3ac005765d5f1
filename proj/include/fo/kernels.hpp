#pragma once
// Dense and sparse inner-loop kernels with a scalar reference lane and an
// AVX2 lane selected once per process.  The scalar lane fixes the summation
// order (ascending index, left to right); the AVX2 lane reassociates partial
// sums and may differ in the last ulps.  Set FO_SIMD=scalar or FO_SIMD=avx2
// to force a lane.

#include <cstddef>
#include <cstdint>

namespace fo::kernels {

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double nrm2sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void csr_spmv(std::size_t rows, const std::int32_t* row_ptr,
              const std::int32_t* col, const double* val, const double* x,
              double* y);
// Rescale node vectors (vx[i], vy[i], vz[i]) by 1/(eps + |v_i|) where
// freemask[i] is 1.0; leave nodes with freemask 0.0 untouched.
void project_unit3(double* vx, double* vy, double* vz, const double* freemask,
                   double eps, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FO_HAVE_AVX2_LANE 1
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double nrm2sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void csr_spmv(std::size_t rows, const std::int32_t* row_ptr,
              const std::int32_t* col, const double* val, const double* x,
              double* y);
void project_unit3(double* vx, double* vy, double* vz, const double* freemask,
                   double eps, std::size_t n);
}  // namespace avx2
#endif

// Lane selected at startup from CPU features and the FO_SIMD override.
enum class Lane { Scalar, Avx2 };
Lane active_lane();
const char* lane_name();

double dot(const double* x, const double* y, std::size_t n);
double nrm2sq(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void axpby(double a, const double* x, double b, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
void csr_spmv(std::size_t rows, const std::int32_t* row_ptr,
              const std::int32_t* col, const double* val, const double* x,
              double* y);
void project_unit3(double* vx, double* vy, double* vz, const double* freemask,
                   double eps, std::size_t n);

}  // namespace fo::kernels
