#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fo/kernels.hpp"

namespace {

// Sizes straddling the AVX2 width (4 doubles) and remainder handling.
const std::vector<std::size_t> kSizes = {0, 1, 3, 4, 7, 8, 17, 64, 1003};

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// Random square CSR matrix with about nnz_per_row entries per row.
struct Csr {
  std::vector<std::int32_t> row_ptr, col;
  std::vector<double> val;
};

Csr random_csr(std::size_t rows, int nnz_per_row, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int32_t> cols(
      0, static_cast<std::int32_t>(rows == 0 ? 0 : rows - 1));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Csr m;
  m.row_ptr.push_back(0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (int k = 0; k < nnz_per_row; ++k) {
      m.col.push_back(cols(rng));
      m.val.push_back(dist(rng));
    }
    m.row_ptr.push_back(static_cast<std::int32_t>(m.col.size()));
  }
  return m;
}

}  // namespace

TEST_CASE("scalar dot fixes left-to-right summation order") {
  const std::vector<double> x = {1e16, 1.0, -1e16};
  const std::vector<double> y = {1.0, 1.0, 1.0};
  // (1e16 + 1) loses the 1, then -1e16 leaves 0 under left-to-right order.
  CHECK(fo::kernels::scalar::dot(x.data(), y.data(), 3) == 0.0);
}

TEST_CASE("lane equivalence: dot and nrm2sq") {
  for (std::size_t n : kSizes) {
    const auto x = random_vector(n, 11 + n);
    const auto y = random_vector(n, 29 + n);
    const double ref = fo::kernels::scalar::dot(x.data(), y.data(), n);
    const double got = fo::kernels::dot(x.data(), y.data(), n);
    CHECK(std::abs(got - ref) <= 1e-13 * (1.0 + std::abs(ref)));
    const double ref2 = fo::kernels::scalar::nrm2sq(x.data(), n);
    const double got2 = fo::kernels::nrm2sq(x.data(), n);
    CHECK(std::abs(got2 - ref2) <= 1e-13 * (1.0 + ref2));
#if defined(FO_HAVE_AVX2_LANE)
    const double avx = fo::kernels::avx2::dot(x.data(), y.data(), n);
    CHECK(std::abs(avx - ref) <= 1e-13 * (1.0 + std::abs(ref)));
#endif
  }
}

TEST_CASE("lane equivalence: axpy, axpby, scal") {
  for (std::size_t n : kSizes) {
    const auto x = random_vector(n, 3 + n);
    const auto y0 = random_vector(n, 5 + n);

    auto y_ref = y0;
    fo::kernels::scalar::axpy(1.7, x.data(), y_ref.data(), n);
    auto y_got = y0;
    fo::kernels::axpy(1.7, x.data(), y_got.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y_got[i] - y_ref[i]) <= 1e-15 * (1.0 + std::abs(y_ref[i])));

    y_ref = y0;
    fo::kernels::scalar::axpby(-0.3, x.data(), 2.5, y_ref.data(), n);
    y_got = y0;
    fo::kernels::axpby(-0.3, x.data(), 2.5, y_got.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y_got[i] - y_ref[i]) <= 1e-15 * (1.0 + std::abs(y_ref[i])));

    y_ref = y0;
    fo::kernels::scalar::scal(-1.25, y_ref.data(), n);
    y_got = y0;
    fo::kernels::scal(-1.25, y_got.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y_got[i] == y_ref[i]);
  }
}

TEST_CASE("lane equivalence: csr_spmv") {
  for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(64),
                        std::size_t(501)}) {
    const Csr m = random_csr(n, 5, 1000 + n);
    const auto x = random_vector(n, 41 + n);
    std::vector<double> y_ref(n, 0.0), y_got(n, 0.0);
    fo::kernels::scalar::csr_spmv(n, m.row_ptr.data(), m.col.data(),
                                  m.val.data(), x.data(), y_ref.data());
    fo::kernels::csr_spmv(n, m.row_ptr.data(), m.col.data(), m.val.data(),
                          x.data(), y_got.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y_got[i] - y_ref[i]) <=
            1e-13 * (1.0 + std::abs(y_ref[i])));
  }
}

TEST_CASE("lane equivalence: project_unit3, frozen nodes untouched") {
  for (std::size_t n : kSizes) {
    auto vx = random_vector(n, 7 + n);
    auto vy = random_vector(n, 13 + n);
    auto vz = random_vector(n, 17 + n);
    std::vector<double> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = (i % 3 == 0) ? 0.0 : 1.0;
    auto rx = vx, ry = vy, rz = vz;
    const double eps = 1e-8;
    fo::kernels::scalar::project_unit3(rx.data(), ry.data(), rz.data(),
                                       mask.data(), eps, n);
    fo::kernels::project_unit3(vx.data(), vy.data(), vz.data(), mask.data(),
                               eps, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(vx[i] - rx[i]) <= 1e-14);
      CHECK(std::abs(vy[i] - ry[i]) <= 1e-14);
      CHECK(std::abs(vz[i] - rz[i]) <= 1e-14);
      if (mask[i] != 0.0) {
        const double norm = std::sqrt(rx[i] * rx[i] + ry[i] * ry[i] +
                                      rz[i] * rz[i]);
        CHECK(std::abs(norm - 1.0) < 1e-7);
      }
    }
  }
}

TEST_CASE("project_unit3 regularizes near-zero vectors instead of dividing") {
  std::vector<double> vx = {1e-300}, vy = {0.0}, vz = {0.0};
  std::vector<double> mask = {1.0};
  fo::kernels::scalar::project_unit3(vx.data(), vy.data(), vz.data(),
                                     mask.data(), 1e-8, 1);
  CHECK(std::isfinite(vx[0]));
  CHECK(std::abs(vx[0]) < 1.0);
}

TEST_CASE("active lane reports a known name") {
  const char* name = fo::kernels::lane_name();
  const bool known = std::string(name) == "scalar" || std::string(name) == "avx2";
  CHECK(known);
}
