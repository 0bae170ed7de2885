#include "flatgraph/lattice.hpp"

#include <stdexcept>
#include <utility>

namespace flatgraph::lattice {

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix to_big(const IntMatrix& rows, std::size_t columns) {
  BigMatrix m(rows.size(), std::vector<BigInt>(columns));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < columns; ++j) m[i][j] = rows[i][j];
  }
  return m;
}

// Column-echelon reduction of A by unimodular column operations, applied to V as well.
// Returns the number of pivot columns; columns [pivots, n) of A end up zero.
std::size_t column_reduce(BigMatrix& a, BigMatrix& v) {
  const std::size_t n = v.size();
  std::size_t pivot = 0;
  auto col_op = [&](std::size_t dst, std::size_t src, const BigInt& factor) {
    for (auto& row : a) row[dst] -= factor * row[src];
    for (auto& row : v) row[dst] -= factor * row[src];
  };
  auto col_swap = [&](std::size_t c1, std::size_t c2) {
    for (auto& row : a) std::swap(row[c1], row[c2]);
    for (auto& row : v) std::swap(row[c1], row[c2]);
  };
  for (std::size_t i = 0; i < a.size() && pivot < n; ++i) {
    // Euclid across columns pivot..n-1 of row i until at most one entry is nonzero.
    while (true) {
      std::size_t best = n;
      for (std::size_t c = pivot; c < n; ++c) {
        if (a[i][c] != 0 && (best == n || abs(a[i][c]) < abs(a[i][best]))) best = c;
      }
      if (best == n) break;
      bool reduced = true;
      for (std::size_t c = pivot; c < n; ++c) {
        if (c == best || a[i][c] == 0) continue;
        BigInt q = a[i][c] / a[i][best];
        col_op(c, best, q);
        if (a[i][c] != 0) reduced = false;
      }
      if (reduced) {
        col_swap(pivot, best);
        ++pivot;
        break;
      }
    }
  }
  return pivot;
}

}  // namespace

std::size_t rank(const IntMatrix& rows, std::size_t columns) {
  BigMatrix a = to_big(rows, columns);
  BigMatrix v(columns, std::vector<BigInt>(columns));
  return column_reduce(a, v);
}

IntMatrix integer_kernel(const IntMatrix& rows, std::size_t columns) {
  BigMatrix a = to_big(rows, columns);
  BigMatrix v(columns, std::vector<BigInt>(columns));
  for (std::size_t i = 0; i < columns; ++i) v[i][i] = 1;
  const std::size_t pivots = column_reduce(a, v);
  IntMatrix basis;
  for (std::size_t c = pivots; c < columns; ++c) {
    std::vector<std::int64_t> vec(columns);
    for (std::size_t r = 0; r < columns; ++r) vec[r] = to_int64(v[r][c]);
    for (auto x : vec) {
      if (x == 0) continue;
      if (x < 0) {
        for (auto& y : vec) y = -y;
      }
      break;
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

std::vector<std::vector<Rational>> inverse(const IntMatrix& square) {
  const std::size_t n = square.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (square[i].size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = square[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && m[p][col] == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(m[p], m[col]);
    const Rational pivot = m[col][col];
    for (auto& x : m[col]) x /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

}  // namespace flatgraph::lattice
