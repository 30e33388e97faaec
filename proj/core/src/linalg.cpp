#include "dagger/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace dagger {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows_if_empty) {
  std::size_t rows = cols.empty() ? rows_if_empty : cols.front().size();
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape");
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (v[k] != 0) out[i] += a(i, k) * v[k];
  return out;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum shape");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector scale(const Vector& v, const Rational& s) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Matrix rref(Matrix m, std::vector<std::size_t>* pivots) {
  std::size_t lead_row = 0;
  if (pivots) pivots->clear();
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead_row, j));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      Rational factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= factor * m(lead_row, j);
    }
    if (pivots) pivots->push_back(c);
    ++lead_row;
  }
  return m;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

std::vector<Vector> nullspace(const Matrix& m) {
  std::vector<std::size_t> pivots;
  Matrix r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve right-hand side");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

Vector primitive_integer(const Vector& v) {
  Integer lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& q : v) {
    Integer n = q.get_num() * (lcm / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  if (g == 0) return v;
  auto lead = std::find_if(ints.begin(), ints.end(), [](const Integer& n) { return n != 0; });
  if (*lead < 0) g = -g;
  Vector out;
  for (const auto& n : ints) out.emplace_back(n / g);
  return out;
}

ColumnHermite column_hermite(const Matrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_integer(a(i, j))) throw Error(ErrorCode::UnsupportedRing, "integer column reduction needs integer entries");

  const std::size_t n = a.cols();
  std::vector<std::vector<Integer>> cols(n, std::vector<Integer>(a.rows()));
  std::vector<std::vector<Integer>> u(n, std::vector<Integer>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) cols[j][i] = a(i, j).get_num();
    u[j][j] = 1;
  }
  auto axpy = [&](std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < a.rows(); ++i) cols[dst][i] -= k * cols[src][i];
    for (std::size_t i = 0; i < n; ++i) u[dst][i] -= k * u[src][i];
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    std::swap(cols[x], cols[y]);
    std::swap(u[x], u[y]);
  };

  std::size_t next = 0;
  for (std::size_t row = 0; row < a.rows() && next < n; ++row) {
    // Euclid across columns next..n-1 on this row.
    while (true) {
      std::size_t best = n;
      for (std::size_t j = next; j < n; ++j) {
        if (cols[j][row] == 0) continue;
        if (best == n || abs(Rational(cols[j][row])) < abs(Rational(cols[best][row]))) best = j;
      }
      if (best == n) break;
      swap_cols(next, best);
      bool reduced = true;
      for (std::size_t j = next + 1; j < n; ++j) {
        if (cols[j][row] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), cols[j][row].get_mpz_t(), cols[next][row].get_mpz_t());
        axpy(j, next, q);
        if (cols[j][row] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (cols[next][row] == 0) continue;
    if (cols[next][row] < 0) {
      for (auto& x : cols[next]) x = -x;
      for (auto& x : u[next]) x = -x;
    }
    for (std::size_t j = 0; j < next; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), cols[j][row].get_mpz_t(), cols[next][row].get_mpz_t());
      if (q != 0) axpy(j, next, q);
    }
    ++next;
  }

  ColumnHermite out;
  out.rank = next;
  out.basis = Matrix(a.rows(), next);
  for (std::size_t j = 0; j < next; ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out.basis(i, j) = cols[j][i];
  out.transform = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.transform(i, j) = u[j][i];
  return out;
}

namespace {

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norm2;
};

Rational dot(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

GramSchmidt gram_schmidt(const std::vector<Vector>& b) {
  const std::size_t r = b.size();
  GramSchmidt g{std::vector<std::vector<Rational>>(r, std::vector<Rational>(r)), std::vector<Rational>(r)};
  std::vector<Vector> star(r);
  for (std::size_t k = 0; k < r; ++k) {
    star[k] = b[k];
    for (std::size_t j = 0; j < k; ++j) {
      g.mu[k][j] = dot(b[k], star[j]) / g.norm2[j];
      for (std::size_t i = 0; i < star[k].size(); ++i) star[k][i] -= g.mu[k][j] * star[j][i];
    }
    g.norm2[k] = dot(star[k], star[k]);
  }
  return g;
}

Integer nearest_integer(const Rational& q) {
  Integer twice = 2 * q.get_num() + q.get_den();
  Integer den = 2 * q.get_den();
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), den.get_mpz_t());
  return r;
}

}  // namespace

Matrix lll_reduce(const Matrix& basis) {
  const std::size_t r = basis.cols();
  std::vector<Vector> b(r);
  for (std::size_t j = 0; j < r; ++j) b[j] = basis.column(j);
  if (r < 2) return basis;
  const Rational delta(3, 4);
  GramSchmidt g = gram_schmidt(b);
  std::size_t k = 1;
  while (k < r) {
    for (std::size_t j = k; j-- > 0;) {
      Integer c = nearest_integer(g.mu[k][j]);
      if (c == 0) continue;
      for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= Rational(c) * b[j][i];
      g = gram_schmidt(b);
    }
    if (g.norm2[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      g = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return Matrix::from_columns(b, basis.rows());
}

}  // namespace dagger
