#include "slocal/matgroup.hpp"

#include <algorithm>

#include "slocal/hensel.hpp"

namespace slocal {

namespace {

void require_compatible(const RMatrix& a, const RMatrix& b) {
  if (a.ring() != b.ring()) throw Error(Errc::ring_mismatch, "matrices over different rings");
  if (a.dim() != b.dim()) throw Error(Errc::bad_argument, "matrix dimensions differ");
}

RMatrix diag2(const Ring& ring, const RingElem& u) {
  RMatrix d = RMatrix::identity(ring, 2);
  d.set(0, 0, u);
  d.set(1, 1, invert(u));
  return d;
}

}  // namespace

RMatrix::RMatrix(Ring ring, int n) : ring_(std::move(ring)), n_(n) {
  if (n < 1) throw Error(Errc::bad_argument, "matrix dimension must be positive");
  entries_.assign(static_cast<std::size_t>(n) * n, ring_.zero());
}

RMatrix RMatrix::identity(const Ring& ring, int n) {
  RMatrix m(ring, n);
  for (int i = 0; i < n; ++i) m.set(i, i, ring.one());
  return m;
}

std::size_t RMatrix::index(int r, int c) const {
  if (r < 0 || r >= n_ || c < 0 || c >= n_)
    throw Error(Errc::bad_argument, "matrix index out of range");
  return static_cast<std::size_t>(r) * n_ + c;
}

void RMatrix::set(int r, int c, RingElem v) {
  if (v.ring() != ring_) throw Error(Errc::ring_mismatch, "entry from a different ring");
  entries_[index(r, c)] = std::move(v);
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  require_compatible(*this, o);
  RMatrix out(ring_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const RingElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        const RingElem& b = o.at(k, j);
        if (b.is_zero()) continue;
        out.set(i, j, out.at(i, j) + a * b);
      }
    }
  return out;
}

bool RMatrix::operator==(const RMatrix& o) const {
  if (ring_ != o.ring_ || n_ != o.n_) return false;
  return entries_ == o.entries_;
}

bool RMatrix::is_identity() const { return *this == identity(ring_, n_); }

RMatrix elementary(const Ring& ring, int n, int i, int j, const RingElem& x) {
  if (i < 1 || i > n || j < 1 || j > n || i == j)
    throw Error(Errc::bad_argument, "elementary matrix requires 1 <= i, j <= n and i != j");
  RMatrix m = RMatrix::identity(ring, n);
  m.set(i - 1, j - 1, x);
  return m;
}

RMatrix mat_mul(const RMatrix& a, const RMatrix& b) { return a * b; }

RingElem det(const RMatrix& m) {
  const Ring& ring = m.ring();
  const int n = m.dim();
  RMatrix a = m;
  bool negate = false;
  RingElem result = ring.one();
  for (int col = 0; col < n; ++col) {
    // Pivot on the minimal-valuation entry so every quotient below divides
    // exactly in the model.
    int best = -1;
    unsigned best_v = 0;
    for (int r = col; r < n; ++r) {
      const Valuation v = valuation(a.at(r, col));
      if (!v.is_exact()) continue;
      if (best == -1 || v.value() < best_v) {
        best = r;
        best_v = v.value();
      }
    }
    if (best == -1) return ring.zero();
    if (best != col) {
      for (int c = col; c < n; ++c) {
        RingElem tmp = a.at(col, c);
        a.set(col, c, a.at(best, c));
        a.set(best, c, tmp);
      }
      negate = !negate;
    }
    const RingElem pivot = a.at(col, col);
    const RingElem uinv = invert(shift_down(pivot, best_v));
    for (int r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      const RingElem q = shift_down(a.at(r, col), best_v) * uinv;
      for (int c = col; c < n; ++c) a.set(r, c, a.at(r, c) - q * a.at(col, c));
    }
    result = result * pivot;
  }
  return negate ? -result : result;
}

RMatrix mat_inverse(const RMatrix& m) {
  const Ring& ring = m.ring();
  const int n = m.dim();
  RMatrix a = m;
  RMatrix b = RMatrix::identity(ring, n);
  for (int col = 0; col < n; ++col) {
    int pivot_row = -1;
    for (int r = col; r < n; ++r) {
      if (is_unit(a.at(r, col))) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == -1)
      throw Error(Errc::non_invertible, "no unit pivot: determinant is not a unit");
    if (pivot_row != col) {
      for (int c = 0; c < n; ++c) {
        RingElem tmp = a.at(col, c);
        a.set(col, c, a.at(pivot_row, c));
        a.set(pivot_row, c, tmp);
        tmp = b.at(col, c);
        b.set(col, c, b.at(pivot_row, c));
        b.set(pivot_row, c, tmp);
      }
    }
    const RingElem pinv = invert(a.at(col, col));
    for (int c = 0; c < n; ++c) {
      a.set(col, c, a.at(col, c) * pinv);
      b.set(col, c, b.at(col, c) * pinv);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      const RingElem q = a.at(r, col);
      for (int c = 0; c < n; ++c) {
        a.set(r, c, a.at(r, c) - q * a.at(col, c));
        b.set(r, c, b.at(r, c) - q * b.at(col, c));
      }
    }
  }
  return b;
}

RMatrix commutator(const RMatrix& a, const RMatrix& b) {
  require_compatible(a, b);
  return a * b * mat_inverse(a) * mat_inverse(b);
}

ElementaryWord::ElementaryWord(Ring ring, int n) : ring_(std::move(ring)), n_(n) {
  if (n < 2) throw Error(Errc::bad_argument, "elementary words require dimension >= 2");
}

void ElementaryWord::push_back(int i, int j, RingElem x) {
  if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
    throw Error(Errc::bad_argument, "letter requires 1 <= i, j <= n and i != j");
  if (x.ring() != ring_) throw Error(Errc::ring_mismatch, "letter entry from a different ring");
  letters_.push_back(Letter{i, j, std::move(x)});
}

void ElementaryWord::append(const ElementaryWord& other) {
  if (other.ring_ != ring_ || other.n_ != n_)
    throw Error(Errc::bad_argument, "appending a word over a different ring or dimension");
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
}

ElementaryWord ElementaryWord::inverse() const {
  ElementaryWord w(ring_, n_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.push_back(it->i, it->j, -it->x);
  return w;
}

RMatrix evaluate_word(const ElementaryWord& w) {
  RMatrix m = RMatrix::identity(w.ring(), w.dim());
  // Right-multiplying by E_{i,j}(x) adds column i scaled by x to column j.
  for (const Letter& l : w.letters()) {
    if (l.x.is_zero()) continue;
    for (int r = 0; r < w.dim(); ++r)
      m.set(r, l.j - 1, m.at(r, l.j - 1) + m.at(r, l.i - 1) * l.x);
  }
  return m;
}

ElementaryWord weyl_word(const Ring& ring) {
  ElementaryWord w(ring, 2);
  const RingElem one = ring.one();
  w.push_back(2, 1, -one);
  w.push_back(1, 2, one);
  w.push_back(2, 1, -one);
  return w;
}

ElementaryWord diag_word(const RingElem& a1) {
  if (!is_unit(a1)) throw Error(Errc::non_unit, "diagonal factorization requires a unit");
  const Ring& ring = a1.ring();
  const RingElem inv = invert(a1);
  const RingElem one = ring.one();
  ElementaryWord w(ring, 2);
  w.push_back(1, 2, -a1);
  w.push_back(2, 1, a1 - one);
  w.push_back(1, 2, one);
  w.push_back(2, 1, inv - one);
  w.push_back(1, 2, -a1 * (one - a1 * a1));
  return w;
}

namespace {

void push_nonzero(ElementaryWord& w, int i, int j, const RingElem& x) {
  if (!x.is_zero()) w.push_back(i, j, x);
}

// Letters of diag_word(a1) with the 2x2 slots (1,2) mapped to rows/columns
// (row1, row2), zero letters dropped; a1 == 1 contributes nothing.
void append_diag_block(ElementaryWord& w, const RingElem& a1, int row1, int row2) {
  if (a1.is_one()) return;
  const ElementaryWord block = diag_word(a1);
  for (const Letter& l : block.letters()) {
    const int i = l.i == 1 ? row1 : row2;
    const int j = l.j == 1 ? row1 : row2;
    push_nonzero(w, i, j, l.x);
  }
}

// Factorization of M with unit (1,1) entry:
// M = E21(a^-1 c) * diag(a, a^-1) * E12(a^-1 b).
ElementaryWord decompose_sl2_core(const RMatrix& m) {
  const Ring& ring = m.ring();
  const RingElem& a = m.at(0, 0);
  if (!is_unit(a))
    throw Error(Errc::precision_loss, "no unit pivot among candidate entries");
  const RingElem ainv = invert(a);
  ElementaryWord w(ring, 2);
  push_nonzero(w, 2, 1, ainv * m.at(1, 0));
  append_diag_block(w, ainv, 1, 2);
  push_nonzero(w, 1, 2, ainv * m.at(0, 1));
  return w;
}

}  // namespace

ElementaryWord decompose_sl2(const RMatrix& m) {
  if (m.dim() != 2) throw Error(Errc::bad_argument, "decompose_sl2 requires a 2x2 matrix");
  if (!det(m).is_one()) throw Error(Errc::not_sl, "determinant is not 1");
  if (is_unit(m.at(0, 0))) return decompose_sl2_core(m);
  // (1,1) entry is not a unit, so the (2,1) entry is: correct with the Weyl
  // factor, M = W * (W^-1 M).
  const Ring& ring = m.ring();
  ElementaryWord w = weyl_word(ring);
  const RMatrix wm = evaluate_word(w.inverse()) * m;
  w.append(decompose_sl2_core(wm));
  return w;
}

ElementaryWord decompose_sln(const RMatrix& m) {
  const Ring& ring = m.ring();
  const int n = m.dim();
  if (n < 2) throw Error(Errc::bad_argument, "decomposition requires dimension >= 2");
  if (!det(m).is_one()) throw Error(Errc::not_sl, "determinant is not 1");

  RMatrix a = m;
  std::vector<Letter> left_ops;   // applied L_t ... L_1 * M, in recorded order
  std::vector<Letter> right_ops;  // applied M * R_1 ... R_s, in recorded order

  auto apply_left = [&](int i, int j, const RingElem& x) {
    // row_i += x * row_j
    for (int c = 0; c < n; ++c) a.set(i - 1, c, a.at(i - 1, c) + x * a.at(j - 1, c));
    left_ops.push_back(Letter{i, j, x});
  };
  auto apply_right = [&](int i, int j, const RingElem& x) {
    // col_j += col_i * x
    for (int r = 0; r < n; ++r) a.set(r, j - 1, a.at(r, j - 1) + a.at(r, i - 1) * x);
    right_ops.push_back(Letter{i, j, x});
  };

  for (int k = 0; k < n - 1; ++k) {
    if (!is_unit(a.at(k, k))) {
      int r = -1;
      for (int i = k + 1; i < n; ++i) {
        if (is_unit(a.at(i, k))) {
          r = i;
          break;
        }
      }
      if (r == -1)
        throw Error(Errc::precision_loss, "no unit pivot among candidate entries");
      apply_left(k + 1, r + 1, ring.one());
    }
    const RingElem pinv = invert(a.at(k, k));
    for (int i = k + 1; i < n; ++i)
      if (!a.at(i, k).is_zero()) apply_left(i + 1, k + 1, -(a.at(i, k) * pinv));
    for (int j = k + 1; j < n; ++j)
      if (!a.at(k, j).is_zero()) apply_right(k + 1, j + 1, -(pinv * a.at(k, j)));
  }

  // a is now diagonal with unit entries multiplying to 1.
  ElementaryWord w(ring, n);
  for (const Letter& l : left_ops) push_nonzero(w, l.i, l.j, -l.x);
  RingElem prefix = ring.one();
  for (int k = 0; k < n - 1; ++k) {
    prefix = prefix * a.at(k, k);
    append_diag_block(w, invert(prefix), k + 1, k + 2);
  }
  for (auto it = right_ops.rbegin(); it != right_ops.rend(); ++it)
    push_nonzero(w, it->i, it->j, -it->x);
  return w;
}

ElementaryWord el_diagonal_word(unsigned k, const RingElem& x) {
  const Ring& ring = x.ring();
  if (k < 1 || 2 * k >= ring.precision())
    throw Error(Errc::bad_argument, "requires 1 <= k and 2k < precision");
  ElementaryWord w(ring, 2);
  if (x.is_zero()) return w;
  const RingElem pik = ring.pi_pow(k);
  const RingElem delta = ring.one() + ring.pi_pow(2 * k) * x;
  const RingElem dinv = invert(delta);
  w.push_back(2, 1, -(pik * dinv));
  w.push_back(1, 2, pik * x);
  w.push_back(2, 1, pik);
  w.push_back(1, 2, -(pik * x * dinv));
  return w;
}

IdentityReport steinberg_check(const Ring& ring, int n, const RingElem& x, const RingElem& y) {
  if (n < 3) throw Error(Errc::bad_argument, "the relation lives in dimension >= 3");
  const RMatrix lhs = commutator(elementary(ring, n, 1, 2, x), elementary(ring, n, 2, 3, y));
  const RMatrix rhs = elementary(ring, n, 1, 3, x * y);
  return IdentityReport{lhs == rhs, lhs, rhs};
}

PerfectnessWitness perfectness_witness(const RingElem& x) {
  const Ring& ring = x.ring();
  const RingElem q = unit_with_unit_square_minus_one(ring);
  const RingElem s = q * q - ring.one();
  const RingElem t = invert(s) * x;
  const RMatrix lhs = commutator(diag2(ring, q), elementary(ring, 2, 1, 2, t));
  const RMatrix rhs = elementary(ring, 2, 1, 2, x);
  return PerfectnessWitness{q, t, lhs == rhs};
}

IdentityReport dilation_commutator_check(unsigned k, const RingElem& y, unsigned t,
                                         const RingElem& x) {
  const Ring& ring = y.ring();
  if (!is_unit(y)) throw Error(Errc::non_unit, "y must be a unit");
  if (x.ring() != ring) throw Error(Errc::ring_mismatch, "x and y from different rings");
  const RingElem d = ring.one() + ring.pi_pow(k) * y;
  if (!is_unit(d)) throw Error(Errc::non_unit, "1 + pi^k y is not invertible");
  const RMatrix lhs = commutator(diag2(ring, d), elementary(ring, 2, 1, 2, ring.pi_pow(t) * x));
  const RingElem entry =
      ring.pi_pow(k + t) * y * x * (ring.from_integer(2L) + ring.pi_pow(k) * y);
  const RMatrix rhs = elementary(ring, 2, 1, 2, entry);
  return IdentityReport{lhs == rhs, lhs, rhs};
}

std::vector<RMatrix> column_group_generators(const Ring& ring, int n, int col, unsigned k) {
  if (col < 1 || col > n) throw Error(Errc::bad_argument, "column out of range");
  std::vector<RMatrix> gens;
  gens.reserve(static_cast<std::size_t>(n) - 1);
  for (int i = 1; i <= n; ++i)
    if (i != col) gens.push_back(elementary(ring, n, i, col, ring.pi_pow(k)));
  return gens;
}

}  // namespace slocal
