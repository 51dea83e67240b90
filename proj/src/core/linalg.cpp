#include "core/linalg.hpp"

#include "core/errors.hpp"
#include "core/polyfrac.hpp"

namespace symapprox {

namespace {

// a pivot counts as a genericity assumption when it still involves symbols
bool involves_symbols(const Expr& e) {
  return !free_symbols(e).empty() || contains_kind(e, Kind::UnknownApp);
}

void note_genericity(std::vector<Expr>* genericity, const Expr& pivot) {
  if (!genericity || !involves_symbols(pivot)) return;
  Expr p = rational_simplify(pivot);
  for (const auto& g : *genericity)
    if (equal(g, p)) return;
  genericity->push_back(p);
}

// pick a pivot row at column `col`: first a provably nonzero entry, else
// complain about an undecidable one
int pick_pivot(const Matrix& m, size_t col, size_t from,
               std::vector<int>& state) {
  int undecided = -1;
  for (size_t r = from; r < m.size(); ++r) {
    if (state[r] >= 0) continue;  // row already used
    ZeroResult z = is_zero(m[r][col]);
    if (z.state == ZeroState::NonZero) return static_cast<int>(r);
    if (z.state == ZeroState::Unknown && undecided < 0)
      undecided = static_cast<int>(r);
  }
  if (undecided >= 0)
    throw Error(ErrorCode::AmbiguousPivot,
                "cannot decide whether a pivot candidate vanishes: " +
                    std::string("column ") + std::to_string(col));
  return -1;
}

}  // namespace

Vector linear_solve_symbolic(const Matrix& a, const Vector& b,
                             std::vector<Expr>* genericity) {
  const size_t n = a.size();
  if (n == 0 || b.size() != n)
    throw Error(ErrorCode::InvalidArgument, "linear system shape mismatch");
  for (const auto& row : a)
    if (row.size() != n)
      throw Error(ErrorCode::InvalidArgument, "linear system must be square");

  // augmented working copy
  Matrix m(n, Vector(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = rational_simplify(a[i][j]);
    m[i][n] = rational_simplify(b[i]);
  }

  std::vector<int> state(n, -1);  // state[r] = column this row pivots, or -1
  std::vector<int> pivot_row(n, -1);

  for (size_t col = 0; col < n; ++col) {
    int pr = pick_pivot(m, col, 0, state);
    if (pr < 0)
      throw Error(ErrorCode::SingularSystem,
                  "no usable pivot in column " + std::to_string(col));
    state[pr] = static_cast<int>(col);
    pivot_row[col] = pr;
    note_genericity(genericity, m[pr][col]);
    const Expr piv = m[pr][col];
    for (size_t r = 0; r < n; ++r) {
      if (static_cast<int>(r) == pr) continue;
      const Expr& entry = m[r][col];
      if (is_zero(entry).state == ZeroState::Zero) continue;
      Expr factor = rational_simplify(entry / piv);
      for (size_t c = col; c <= n; ++c)
        m[r][c] = rational_simplify(m[r][c] - factor * m[pr][c]);
    }
  }

  Vector x(n);
  for (size_t col = 0; col < n; ++col) {
    int pr = pivot_row[col];
    x[col] = rational_simplify(m[pr][n] / m[pr][col]);
  }
  return x;
}

Expr det_symbolic(const Matrix& a, std::vector<Expr>* genericity) {
  const size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n)
      throw Error(ErrorCode::InvalidArgument, "determinant needs a square matrix");
  if (n == 0) return one();
  if (n == 1) return rational_simplify(a[0][0]);
  if (n == 2)
    return rational_simplify(a[0][0] * a[1][1] - a[0][1] * a[1][0]);
  if (n == 3) {
    Expr d = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    return rational_simplify(d);
  }

  // fraction-free-ish elimination tracking the product of pivots
  Matrix m(n, Vector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = rational_simplify(a[i][j]);
  Expr det = one();
  int sign = 1;
  for (size_t col = 0; col < n; ++col) {
    // find a row at or below `col` with a provably nonzero entry
    int pr = -1, undecided = -1;
    for (size_t r = col; r < n; ++r) {
      ZeroResult z = is_zero(m[r][col]);
      if (z.state == ZeroState::NonZero) {
        pr = static_cast<int>(r);
        break;
      }
      if (z.state == ZeroState::Unknown && undecided < 0)
        undecided = static_cast<int>(r);
    }
    if (pr < 0) {
      if (undecided >= 0)
        throw Error(ErrorCode::AmbiguousPivot,
                    "cannot decide whether a pivot candidate vanishes");
      return zero();  // whole column below is provably zero
    }
    if (static_cast<size_t>(pr) != col) {
      std::swap(m[pr], m[col]);
      sign = -sign;
    }
    note_genericity(genericity, m[col][col]);
    det = rational_simplify(det * m[col][col]);
    for (size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col]).state == ZeroState::Zero) continue;
      Expr factor = rational_simplify(m[r][col] / m[col][col]);
      for (size_t c = col; c < n; ++c)
        m[r][c] = rational_simplify(m[r][c] - factor * m[col][c]);
    }
  }
  if (sign < 0) det = rational_simplify(-det);
  return det;
}

}  // namespace symapprox
