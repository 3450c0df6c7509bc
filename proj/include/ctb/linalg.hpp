#pragma once

#include <cstddef>
#include <vector>

#include "ctb/config.hpp"
#include "ctb/errors.hpp"

namespace ctb {

// Coordinates in a fixed orthonormal basis.
using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& a);
double norm(const Vector& a);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, double s);
void check_finite(const Vector& v, const char* what);

// Symmetric matrix storing only the lower triangle (row-major), so symmetry
// holds by construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int order);
  static SymMatrix identity(int order);
  static SymMatrix diagonal(const Vector& d);
  // Full square input; symmetry verified within sym_tol relative.
  static SymMatrix from_full(const std::vector<Vector>& rows,
                             double sym_tol = 1e-12);

  int order() const { return n_; }
  double operator()(int i, int j) const {
    return i >= j ? tri_[idx(i, j)] : tri_[idx(j, i)];
  }
  void set(int i, int j, double v) {
    if (i >= j)
      tri_[idx(i, j)] = v;
    else
      tri_[idx(j, i)] = v;
  }

  Vector apply(const Vector& x) const;
  double trace() const;
  double frobenius_norm() const;
  double max_abs_entry() const;
  std::vector<Vector> to_full() const;

  bool operator==(const SymMatrix& o) const {
    return n_ == o.n_ && tri_ == o.tri_;
  }

 private:
  static std::size_t idx(int i, int j) {
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
  }
  int n_ = 0;
  std::vector<double> tri_;
};

// Small dense general matrix, row-major. Used for linear images of cones and
// for test-side rotations.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0.0) {}
  static Matrix identity(int n);

  double& at(int i, int j) { return data[std::size_t(i) * cols + j]; }
  double at(int i, int j) const { return data[std::size_t(i) * cols + j]; }
  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& x) const;
  Matrix transposed() const;
};

// Solves M x = v by Gaussian elimination with partial pivoting.
// Throws SingularMap when a pivot falls below 1e-13 * max|entry|.
Vector solve_general(const Matrix& M, const Vector& v);

struct CholeskyFactor {
  int order = 0;
  std::vector<Vector> lower;  // L with positive diagonal, L L^T = S

  Vector solve(const Vector& v) const;  // (L L^T) x = v
};

struct EigenDecomposition {
  Vector values;                // non-increasing
  std::vector<Vector> vectors;  // orthonormal, vectors[k] pairs values[k]

  SymMatrix reconstruct() const;
};

CholeskyFactor cholesky(const SymMatrix& S, const Tolerances& tol = {});
Vector solve_spd(const SymMatrix& S, const Vector& v,
                 const Tolerances& tol = {});
EigenDecomposition sym_eigen(const SymMatrix& S, const Tolerances& tol = {});
SymMatrix matrix_sqrt(const SymMatrix& A, const Tolerances& tol = {});

// Isometric coordinatization of symmetric matrices: off-diagonals scaled by
// sqrt(2) so <svec(S), svec(T)> = trace(S T).
Vector svec(const SymMatrix& S);
SymMatrix smat(const Vector& v);
int svec_dim(int order);              // n(n+1)/2
int smat_order(std::size_t length);   // inverse, throws LengthNotTriangular

double quadratic_form(const Vector& u, const SymMatrix& S);

// Columns of S^{-1}; requires S positive definite.
SymMatrix spd_inverse(const SymMatrix& S, const Tolerances& tol = {});

}  // namespace ctb
