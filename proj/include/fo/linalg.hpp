#pragma once
// Sparse symmetric linear algebra on CSR storage.  Hot loops (spmv, dot,
// axpy) go through the dispatched kernels.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fo {

struct LinalgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compressed sparse rows with sorted, unique column indices per row.
struct SparseMatrix {
  std::int32_t rows = 0;
  std::int32_t cols = 0;
  std::vector<std::int32_t> row_ptr;
  std::vector<std::int32_t> col_idx;
  std::vector<double> values;

  std::size_t nnz() const { return values.size(); }
  // y = A x
  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;
  // Largest relative symmetry defect |a_ij - a_ji| / max|a|.
  double symmetry_defect() const;
  double diagonal(std::int32_t i) const;
};

// Accumulates duplicate (i, j, v) triplets and compresses to CSR.
class TripletBuilder {
 public:
  TripletBuilder(std::int32_t rows, std::int32_t cols)
      : rows_(rows), cols_(cols) {}
  void add(std::int32_t i, std::int32_t j, double v) {
    entries_.push_back({i, j, v});
  }
  SparseMatrix compress() const;

 private:
  struct Entry {
    std::int32_t i, j;
    double v;
  };
  std::int32_t rows_, cols_;
  std::vector<Entry> entries_;
};

// Symmetric elimination of constrained rows and columns: for constrained i,
// row i and column i are zeroed, the diagonal becomes 1 and b picks up
// -A(:,i) * value_i on free rows and value_i on row i.  Keeps the matrix
// symmetric positive definite.
void eliminate_dirichlet(SparseMatrix& A, const std::vector<char>& constrained,
                         const std::vector<double>& values,
                         std::vector<double>& b);

struct PreconditionerSpec {
  enum class Kind { Jacobi, SymmetricGaussSeidel, CgInner };
  Kind kind = Kind::CgInner;
  int inner_iterations = 30;  // CgInner only
};

// One application of a fixed symmetric positive definite approximate inverse
// of A.  CgInner runs a fixed number of Jacobi-preconditioned CG iterations
// from a zero initial guess.
class Preconditioner {
 public:
  Preconditioner(const SparseMatrix& A, PreconditionerSpec spec);
  // z = P^{-1} r
  void apply(const double* r, double* z) const;
  std::vector<double> apply(const std::vector<double>& r) const;
  const PreconditionerSpec& spec() const { return spec_; }

 private:
  const SparseMatrix& A_;
  PreconditionerSpec spec_;
  std::vector<double> inv_diag_;
  mutable std::vector<double> work_;  // CgInner scratch
};

struct CgResult {
  int iterations = 0;
  double residual = 0.0;  // final |b - A x|_2
  bool converged = false;
};

// Preconditioned conjugate gradients for SPD systems.  Throws LinalgError on
// an indefinite operator (p' A p <= 0).
CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                  std::vector<double>& x, const Preconditioner& M,
                  double rtol, int max_iterations);

}  // namespace fo
