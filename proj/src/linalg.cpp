#include "ctb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ctb {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& a) { return dot(a, a); }
double norm(const Vector& a) { return std::sqrt(norm2(a)); }

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("add: size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("sub: size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scaled(const Vector& a, double s) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

void check_finite(const Vector& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidValue(std::string(what) + ": non-finite entry");
}

SymMatrix::SymMatrix(int order) : n_(order) {
  if (order <= 0) throw InvalidValue("SymMatrix: order must be positive");
  tri_.assign(std::size_t(order) * (order + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int order) {
  SymMatrix s(order);
  for (int i = 0; i < order; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  SymMatrix s(static_cast<int>(d.size()));
  for (int i = 0; i < s.order(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::from_full(const std::vector<Vector>& rows, double sym_tol) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw InvalidValue("from_full: empty matrix");
  double scale = 0.0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n)
      throw DimensionMismatch("from_full: matrix not square");
    for (double x : r) {
      if (!std::isfinite(x)) throw InvalidValue("from_full: non-finite entry");
      scale = std::max(scale, std::abs(x));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(rows[i][j] - rows[j][i]) > sym_tol * (1.0 + scale))
        throw InvalidValue("from_full: matrix not symmetric");
  SymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) s.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
  return s;
}

Vector SymMatrix::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw DimensionMismatch("SymMatrix::apply: size mismatch");
  Vector y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

double SymMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double x : tri_) m = std::max(m, std::abs(x));
  return m;
}

std::vector<Vector> SymMatrix::to_full() const {
  std::vector<Vector> rows(n_, Vector(n_, 0.0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rows;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Vector Matrix::apply(const Vector& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw DimensionMismatch("Matrix::apply: size mismatch");
  Vector y(rows, 0.0);
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols; ++j) s += at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vector Matrix::apply_transpose(const Vector& x) const {
  if (static_cast<int>(x.size()) != rows)
    throw DimensionMismatch("Matrix::apply_transpose: size mismatch");
  Vector y(cols, 0.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) y[j] += at(i, j) * x[i];
  return y;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Vector solve_general(const Matrix& M, const Vector& v) {
  if (M.rows != M.cols) throw DimensionMismatch("solve_general: not square");
  if (static_cast<int>(v.size()) != M.rows)
    throw DimensionMismatch("solve_general: rhs size mismatch");
  const int n = M.rows;
  Matrix a = M;
  Vector x = v;
  double scale = 0.0;
  for (double e : a.data) scale = std::max(scale, std::abs(e));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a.at(i, k)) > std::abs(a.at(piv, k))) piv = i;
    if (std::abs(a.at(piv, k)) <= 1e-13 * (1.0 + scale))
      throw SingularMap("solve_general: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(k, j));
      std::swap(x[piv], x[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a.at(i, k) / a.at(k, k);
      for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
      x[i] -= f * x[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
    x[i] = s / a.at(i, i);
  }
  return x;
}

Vector CholeskyFactor::solve(const Vector& v) const {
  if (static_cast<int>(v.size()) != order)
    throw DimensionMismatch("CholeskyFactor::solve: size mismatch");
  Vector y(order, 0.0);
  for (int i = 0; i < order; ++i) {
    double s = v[i];
    for (int j = 0; j < i; ++j) s -= lower[i][j] * y[j];
    y[i] = s / lower[i][i];
  }
  Vector x(order, 0.0);
  for (int i = order - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < order; ++j) s -= lower[j][i] * x[j];
    x[i] = s / lower[i][i];
  }
  return x;
}

SymMatrix EigenDecomposition::reconstruct() const {
  const int n = static_cast<int>(values.size());
  SymMatrix s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double e = 0.0;
      for (int k = 0; k < n; ++k) e += values[k] * vectors[k][i] * vectors[k][j];
      s.set(i, j, e);
    }
  return s;
}

CholeskyFactor cholesky(const SymMatrix& S, const Tolerances& tol) {
  const int n = S.order();
  const double thr = tol.cholesky_pivot * std::max(S.trace() / n, 0.0);
  CholeskyFactor f;
  f.order = n;
  f.lower.assign(n, Vector(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = S(i, j);
      for (int k = 0; k < j; ++k) s -= f.lower[i][k] * f.lower[j][k];
      if (i == j) {
        if (s <= thr || !std::isfinite(s))
          throw NotPositiveDefinite("cholesky: pivot below threshold at index " +
                                    std::to_string(i));
        f.lower[i][i] = std::sqrt(s);
      } else {
        f.lower[i][j] = s / f.lower[j][j];
      }
    }
  }
  return f;
}

Vector solve_spd(const SymMatrix& S, const Vector& v, const Tolerances& tol) {
  if (static_cast<int>(v.size()) != S.order())
    throw DimensionMismatch("solve_spd: size mismatch");
  return cholesky(S, tol).solve(v);
}

EigenDecomposition sym_eigen(const SymMatrix& S, const Tolerances& tol) {
  const int n = S.order();
  std::vector<Vector> a = S.to_full();
  std::vector<Vector> q(n, Vector(n, 0.0));
  for (int i = 0; i < n; ++i) q[i][i] = 1.0;

  const double fro = std::max(S.frobenius_norm(), 1e-300);
  auto offdiag = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) s += 2.0 * a[i][j] * a[i][j];
    return std::sqrt(s);
  };

  int sweep = 0;
  while (offdiag() > tol.jacobi_offdiag * fro) {
    if (++sweep > tol.jacobi_max_sweeps)
      throw NoConvergence("sym_eigen: Jacobi sweep cap reached");
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apq = a[p][r];
        if (apq == 0.0) continue;
        const double theta = (a[r][r] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p], akr = a[k][r];
          a[k][p] = c * akp - s * akr;
          a[k][r] = s * akp + c * akr;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k], ark = a[r][k];
          a[p][k] = c * apk - s * ark;
          a[r][k] = s * apk + c * ark;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q[k][p], qkr = q[k][r];
          q[k][p] = c * qkp - s * qkr;
          q[k][r] = s * qkp + c * qkr;
        }
      }
    }
  }

  std::vector<int> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(),
            [&](int i, int j) { return a[i][i] > a[j][j]; });

  EigenDecomposition e;
  e.values.resize(n);
  e.vectors.assign(n, Vector(n, 0.0));
  for (int k = 0; k < n; ++k) {
    e.values[k] = a[ord[k]][ord[k]];
    for (int i = 0; i < n; ++i) e.vectors[k][i] = q[i][ord[k]];
  }
  return e;
}

SymMatrix matrix_sqrt(const SymMatrix& A, const Tolerances& tol) {
  EigenDecomposition e = sym_eigen(A, tol);
  const int n = A.order();
  const double lmax = std::abs(e.values.front());
  if (e.values.back() <= 1e-12 * std::max(lmax, 1e-300))
    throw NotPositiveDefinite("matrix_sqrt: matrix not positive definite");
  SymMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += std::sqrt(e.values[k]) * e.vectors[k][i] * e.vectors[k][j];
      b.set(i, j, s);
    }
  return b;
}

int svec_dim(int order) { return order * (order + 1) / 2; }

int smat_order(std::size_t length) {
  // solve n(n+1)/2 = length
  const int n = static_cast<int>((std::sqrt(8.0 * double(length) + 1.0) - 1.0) / 2.0 + 0.5);
  if (n <= 0 || std::size_t(n) * (n + 1) / 2 != length)
    throw LengthNotTriangular("smat: length " + std::to_string(length) +
                              " is not triangular");
  return n;
}

Vector svec(const SymMatrix& S) {
  static const double kRoot2 = std::sqrt(2.0);
  const int n = S.order();
  Vector v(svec_dim(n));
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      v[k++] = (i == j) ? S(i, i) : kRoot2 * S(i, j);
  return v;
}

SymMatrix smat(const Vector& v) {
  static const double kRoot2 = std::sqrt(2.0);
  const int n = smat_order(v.size());
  SymMatrix s(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      s.set(i, j, (i == j) ? v[k] : v[k] / kRoot2);
      ++k;
    }
  return s;
}

double quadratic_form(const Vector& u, const SymMatrix& S) {
  if (static_cast<int>(u.size()) != S.order())
    throw DimensionMismatch("quadratic_form: size mismatch");
  return dot(u, S.apply(u));
}

SymMatrix spd_inverse(const SymMatrix& S, const Tolerances& tol) {
  const int n = S.order();
  CholeskyFactor f = cholesky(S, tol);
  SymMatrix inv(n);
  for (int j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    Vector col = f.solve(e);
    for (int i = j; i < n; ++i) inv.set(i, j, col[i]);
  }
  return inv;
}

}  // namespace ctb
