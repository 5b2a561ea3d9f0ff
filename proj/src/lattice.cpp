#include "delzant/lattice.hpp"

#include <algorithm>
#include <utility>

namespace delzant::lattice {

namespace {

// Floor division for arbitrary-sign integers.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Extended gcd: returns g = gcd(a, b) >= 0 and x, y with a*x + b*y = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// Replaces columns (j, k) of m by (p*cj + q*ck, -b*cj + a*ck), a unimodular
// column operation when p*a + q*b = 1.
void combine_columns(IntMatrix& m, std::size_t j, std::size_t k, const Integer& p, const Integer& q,
                     const Integer& a, const Integer& b) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer cj = m(i, j), ck = m(i, k);
    m(i, j) = p * cj + q * ck;
    m(i, k) = -b * cj + a * ck;
  }
}

void swap_columns(IntMatrix& m, std::size_t j, std::size_t k) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, j), m(i, k));
}

void swap_rows(IntMatrix& m, std::size_t i, std::size_t k) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(i, j), m(k, j));
}

}  // namespace

IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

Integer determinant(const IntMatrix& input) {
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(m, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const RationalMatrix& input) {
  RationalMatrix m = input;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pivot, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

IntMatrix column_hermite_form(const IntMatrix& a, IntMatrix* transform) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.cols());
  auto apply_combine = [&](std::size_t j, std::size_t k, const Integer& p, const Integer& q, const Integer& x,
                           const Integer& y) {
    combine_columns(h, j, k, p, q, x, y);
    combine_columns(u, j, k, p, q, x, y);
  };
  std::size_t pivot_col = 0;
  for (std::size_t row = 0; row < h.rows() && pivot_col < h.cols(); ++row) {
    for (std::size_t k = pivot_col + 1; k < h.cols(); ++k) {
      if (h(row, k) == 0) continue;
      if (h(row, pivot_col) == 0) {
        swap_columns(h, pivot_col, k);
        swap_columns(u, pivot_col, k);
        continue;
      }
      Integer p, q;
      const Integer g = extended_gcd(h(row, pivot_col), h(row, k), p, q);
      const Integer x = h(row, pivot_col) / g, y = h(row, k) / g;
      apply_combine(pivot_col, k, p, q, x, y);
    }
    if (h(row, pivot_col) == 0) continue;
    if (h(row, pivot_col) < 0) {
      for (std::size_t i = 0; i < h.rows(); ++i) h(i, pivot_col) = -h(i, pivot_col);
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, pivot_col) = -u(i, pivot_col);
    }
    const Integer pivot = h(row, pivot_col);
    for (std::size_t j = 0; j < pivot_col; ++j) {
      const Integer f = floor_div(h(row, j), pivot);
      if (f == 0) continue;
      for (std::size_t i = 0; i < h.rows(); ++i) h(i, j) -= f * h(i, pivot_col);
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) -= f * u(i, pivot_col);
    }
    ++pivot_col;
  }
  if (transform) *transform = std::move(u);
  return h;
}

std::vector<Integer> elementary_divisors(const IntMatrix& input) {
  IntMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> divisors;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    bool found = false;
    for (;;) {
      std::size_t bi = 0, bj = 0;
      found = false;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(bi, bj)))) {
            bi = i;
            bj = j;
            found = true;
          }
      if (!found) break;
      swap_rows(m, t, bi);
      swap_columns(m, t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Integer q = m(i, t) / m(t, t);
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Integer q = m(t, j) / m(t, t);
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: the pivot must divide every remaining entry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            for (std::size_t c = t; c < cols; ++c) m(t, c) += m(i, c);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (!found) break;
    divisors.push_back(abs(m(t, t)));
  }
  return divisors;
}

bool columns_saturated(const IntMatrix& basis) {
  if (basis.cols() == 0) return true;
  const auto d = elementary_divisors(basis);
  if (d.size() != basis.cols()) return false;
  return std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 1; });
}

IntMatrix integer_kernel(const IntMatrix& a) {
  IntMatrix u;
  const IntMatrix h = column_hermite_form(a, &u);
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < h.rows() && zero; ++i) zero = h(i, j) == 0;
    if (zero) zero_cols.push_back(j);
  }
  IntMatrix k(a.cols(), zero_cols.size());
  for (std::size_t c = 0; c < zero_cols.size(); ++c)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, c) = u(i, zero_cols[c]);
  return column_hermite_form(k);
}

bool solve(const RationalMatrix& a, const RationalVector& b, RationalVector& x) {
  const std::size_t n = a.rows();
  RationalMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != c)
      for (std::size_t j = 0; j <= n; ++j) std::swap(m(c, j), m(pivot, j));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  x.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n) / m(i, i);
  return true;
}

}  // namespace delzant::lattice
