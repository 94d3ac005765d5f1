#include "fo/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "fo/kernels.hpp"

namespace fo {

void SparseMatrix::apply(const double* x, double* y) const {
  kernels::csr_spmv(rows, row_ptr.data(), col_idx.data(), values.data(), x, y);
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& x) const {
  std::vector<double> y(rows, 0.0);
  apply(x.data(), y.data());
  return y;
}

double SparseMatrix::symmetry_defect() const {
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) return 0.0;
  double defect = 0.0;
  for (std::int32_t i = 0; i < rows; ++i) {
    for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const std::int32_t j = col_idx[k];
      if (j < i) continue;
      // Binary search for a_ji in row j.
      const std::int32_t* begin = col_idx.data() + row_ptr[j];
      const std::int32_t* end = col_idx.data() + row_ptr[j + 1];
      const std::int32_t* at = std::lower_bound(begin, end, i);
      const double aji =
          (at != end && *at == i) ? values[at - col_idx.data()] : 0.0;
      defect = std::max(defect, std::abs(values[k] - aji));
    }
  }
  return defect / max_abs;
}

double SparseMatrix::diagonal(std::int32_t i) const {
  for (std::int32_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
    if (col_idx[k] == i) return values[k];
  return 0.0;
}

SparseMatrix TripletBuilder::compress() const {
  SparseMatrix A;
  A.rows = rows_;
  A.cols = cols_;
  std::vector<std::int32_t> count(rows_ + 1, 0);
  for (const auto& e : entries_) {
    if (e.i < 0 || e.i >= rows_ || e.j < 0 || e.j >= cols_)
      throw LinalgError("triplet index out of range");
    count[e.i + 1]++;
  }
  std::vector<std::int32_t> offset(rows_ + 1, 0);
  for (std::int32_t i = 0; i < rows_; ++i) offset[i + 1] = offset[i] + count[i + 1];
  std::vector<std::int32_t> cursor(offset.begin(), offset.end() - 1);
  std::vector<std::int32_t> cols(entries_.size());
  std::vector<double> vals(entries_.size());
  for (const auto& e : entries_) {
    const std::int32_t at = cursor[e.i]++;
    cols[at] = e.j;
    vals[at] = e.v;
  }
  A.row_ptr.assign(rows_ + 1, 0);
  for (std::int32_t i = 0; i < rows_; ++i) {
    std::vector<std::pair<std::int32_t, double>> row;
    row.reserve(offset[i + 1] - offset[i]);
    for (std::int32_t k = offset[i]; k < offset[i + 1]; ++k)
      row.push_back({cols[k], vals[k]});
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t row_start = A.col_idx.size();
    for (const auto& [col, val] : row) {
      if (A.col_idx.size() > row_start && A.col_idx.back() == col)
        A.values.back() += val;
      else {
        A.col_idx.push_back(col);
        A.values.push_back(val);
      }
    }
    A.row_ptr[i + 1] = static_cast<std::int32_t>(A.col_idx.size());
  }
  return A;
}

void eliminate_dirichlet(SparseMatrix& A, const std::vector<char>& constrained,
                         const std::vector<double>& values,
                         std::vector<double>& b) {
  if (A.rows != A.cols) throw LinalgError("elimination needs a square matrix");
  const std::int32_t n = A.rows;
  if (static_cast<std::int32_t>(constrained.size()) != n ||
      static_cast<std::int32_t>(values.size()) != n ||
      static_cast<std::int32_t>(b.size()) != n)
    throw LinalgError("elimination size mismatch");
  for (std::int32_t i = 0; i < n; ++i) {
    if (constrained[i]) continue;
    for (std::int32_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      const std::int32_t j = A.col_idx[k];
      if (constrained[j]) {
        b[i] -= A.values[k] * values[j];
        A.values[k] = 0.0;
      }
    }
  }
  for (std::int32_t i = 0; i < n; ++i) {
    if (!constrained[i]) continue;
    for (std::int32_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      A.values[k] = A.col_idx[k] == i ? 1.0 : 0.0;
    b[i] = values[i];
  }
}

Preconditioner::Preconditioner(const SparseMatrix& A, PreconditionerSpec spec)
    : A_(A), spec_(spec) {
  if (A.rows != A.cols) throw LinalgError("preconditioner needs a square matrix");
  inv_diag_.resize(A.rows);
  for (std::int32_t i = 0; i < A.rows; ++i) {
    const double d = A.diagonal(i);
    if (!(d > 0.0))
      throw LinalgError("non-positive diagonal at row " + std::to_string(i));
    inv_diag_[i] = 1.0 / d;
  }
}

void Preconditioner::apply(const double* r, double* z) const {
  const std::int32_t n = A_.rows;
  switch (spec_.kind) {
    case PreconditionerSpec::Kind::Jacobi: {
      for (std::int32_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
      return;
    }
    case PreconditionerSpec::Kind::SymmetricGaussSeidel: {
      // z = (D+U)^{-1} D (D+L)^{-1} r, symmetric for symmetric A.
      for (std::int32_t i = 0; i < n; ++i) {
        double s = r[i];
        for (std::int32_t k = A_.row_ptr[i]; k < A_.row_ptr[i + 1]; ++k) {
          const std::int32_t j = A_.col_idx[k];
          if (j < i) s -= A_.values[k] * z[j];
        }
        z[i] = s * inv_diag_[i];
      }
      for (std::int32_t i = n - 1; i >= 0; --i) {
        double s = z[i] / inv_diag_[i];
        for (std::int32_t k = A_.row_ptr[i]; k < A_.row_ptr[i + 1]; ++k) {
          const std::int32_t j = A_.col_idx[k];
          if (j > i) s -= A_.values[k] * z[j];
        }
        z[i] = s * inv_diag_[i];
      }
      return;
    }
    case PreconditionerSpec::Kind::CgInner: {
      // Fixed number of Jacobi-preconditioned CG iterations from zero.
      work_.assign(static_cast<std::size_t>(n) * 4, 0.0);
      double* res = work_.data();
      double* p = res + n;
      double* Ap = p + n;
      double* y = Ap + n;
      for (std::int32_t i = 0; i < n; ++i) {
        z[i] = 0.0;
        res[i] = r[i];
        y[i] = inv_diag_[i] * res[i];
        p[i] = y[i];
      }
      double rho = kernels::dot(res, y, n);
      if (rho == 0.0) return;
      for (int it = 0; it < spec_.inner_iterations; ++it) {
        A_.apply(p, Ap);
        const double pap = kernels::dot(p, Ap, n);
        if (pap <= 0.0) throw LinalgError("indefinite operator in inner CG");
        const double alpha = rho / pap;
        kernels::axpy(alpha, p, z, n);
        kernels::axpy(-alpha, Ap, res, n);
        for (std::int32_t i = 0; i < n; ++i) y[i] = inv_diag_[i] * res[i];
        const double rho_next = kernels::dot(res, y, n);
        if (rho_next == 0.0) return;
        kernels::axpby(1.0, y, rho_next / rho, p, n);
        rho = rho_next;
      }
      return;
    }
  }
}

std::vector<double> Preconditioner::apply(const std::vector<double>& r) const {
  std::vector<double> z(r.size(), 0.0);
  apply(r.data(), z.data());
  return z;
}

CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                  std::vector<double>& x, const Preconditioner& M,
                  double rtol, int max_iterations) {
  const std::int32_t n = A.rows;
  if (static_cast<std::int32_t>(b.size()) != n)
    throw LinalgError("cg rhs size mismatch");
  x.assign(n, 0.0);
  std::vector<double> r = b;
  std::vector<double> z(n), p(n), Ap(n);
  const double bnorm = std::sqrt(kernels::nrm2sq(b.data(), n));
  CgResult result;
  if (bnorm == 0.0) {
    result.converged = true;
    return result;
  }
  const double target = rtol * bnorm;
  M.apply(r.data(), z.data());
  p = z;
  double rho = kernels::dot(r.data(), z.data(), n);
  int it = 0;
  while (it < max_iterations) {
    double rnorm = std::sqrt(kernels::nrm2sq(r.data(), n));
    if (rnorm <= target) {
      // Confirm with the true residual; rounding can make the recurrence
      // drift optimistic.
      A.apply(x.data(), Ap.data());
      for (std::int32_t i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
      rnorm = std::sqrt(kernels::nrm2sq(r.data(), n));
      if (rnorm <= target) {
        result.iterations = it;
        result.residual = rnorm;
        result.converged = true;
        return result;
      }
      M.apply(r.data(), z.data());
      p = z;
      rho = kernels::dot(r.data(), z.data(), n);
    }
    A.apply(p.data(), Ap.data());
    const double pap = kernels::dot(p.data(), Ap.data(), n);
    if (pap <= 0.0)
      throw LinalgError("indefinite operator: p'Ap = " + std::to_string(pap));
    const double alpha = rho / pap;
    kernels::axpy(alpha, p.data(), x.data(), n);
    kernels::axpy(-alpha, Ap.data(), r.data(), n);
    M.apply(r.data(), z.data());
    const double rho_next = kernels::dot(r.data(), z.data(), n);
    kernels::axpby(1.0, z.data(), rho_next / rho, p.data(), n);
    rho = rho_next;
    ++it;
  }
  result.iterations = it;
  result.residual = std::sqrt(kernels::nrm2sq(r.data(), n));
  result.converged = result.residual <= target;
  return result;
}

}  // namespace fo
