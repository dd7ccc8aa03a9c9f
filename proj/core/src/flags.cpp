#include "slocal/flags.hpp"

#include <algorithm>

namespace slocal {

namespace {

using QRows = std::vector<std::vector<mpq_class>>;

// Canonical reduced row echelon form; returns the pivot columns.  Zero rows
// are removed.
std::vector<int> rref_in_place(QRows& rows, int width) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (int col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t sel = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    const mpq_class inv = mpq_class(1) / rows[rank][col];
    for (int j = col; j < width; ++j) rows[rank][j] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const mpq_class f = rows[r][col];
      for (int j = col; j < width; ++j) rows[r][j] -= f * rows[rank][j];
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

// Basis of {x : A x = 0} for A given by rows.
QRows kernel_basis(QRows rows, int width) {
  const std::vector<int> pivots = rref_in_place(rows, width);
  std::vector<bool> is_pivot(static_cast<std::size_t>(width), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  QRows out;
  for (int f = 0; f < width; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<mpq_class> v(static_cast<std::size_t>(width), mpq_class(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<std::size_t>(pivots[r])] = -rows[r][static_cast<std::size_t>(f)];
    out.push_back(std::move(v));
  }
  return out;
}

// Incremental independence tester over an echelonized row collection.
class SpanBuilder {
 public:
  explicit SpanBuilder(int width) : width_(width) {}

  bool add(std::vector<mpq_class> v) {
    for (const auto& [lead, row] : rows_) {
      if (v[static_cast<std::size_t>(lead)] == 0) continue;
      const mpq_class f = v[static_cast<std::size_t>(lead)];
      for (int j = 0; j < width_; ++j) v[static_cast<std::size_t>(j)] -= f * row[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < width_; ++j) {
      if (v[static_cast<std::size_t>(j)] != 0) {
        const mpq_class inv = mpq_class(1) / v[static_cast<std::size_t>(j)];
        for (int l = j; l < width_; ++l) v[static_cast<std::size_t>(l)] *= inv;
        rows_.emplace_back(j, std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return true;
      }
    }
    return false;
  }

 private:
  int width_;
  std::vector<std::pair<int, std::vector<mpq_class>>> rows_;
};

}  // namespace

QMatrix::QMatrix(int dim) : n_(dim) {
  if (dim < 1) throw Error(Errc::bad_argument, "dimension must be positive");
  e_.assign(static_cast<std::size_t>(dim) * dim, mpq_class(0));
}

QMatrix QMatrix::identity(int dim) {
  QMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, mpq_class(1));
  return m;
}

void QMatrix::set(int r, int c, mpq_class v) {
  if (r < 0 || r >= n_ || c < 0 || c >= n_)
    throw Error(Errc::bad_argument, "matrix index out of range");
  e_[static_cast<std::size_t>(r) * n_ + c] = std::move(v);
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (n_ != o.n_) throw Error(Errc::bad_argument, "matrix dimensions differ");
  QMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const mpq_class& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (o.at(k, j) == 0) continue;
        out.e_[static_cast<std::size_t>(i) * n_ + j] += a * o.at(k, j);
      }
    }
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (n_ != o.n_) throw Error(Errc::bad_argument, "matrix dimensions differ");
  QMatrix out(n_);
  for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - o.e_[i];
  return out;
}

bool QMatrix::operator==(const QMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }

bool QMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const mpq_class& x) { return x == 0; });
}

QMatrix QMatrix::inverse() const {
  QMatrix a = *this;
  QMatrix b = identity(n_);
  for (int col = 0; col < n_; ++col) {
    int sel = -1;
    for (int r = col; r < n_; ++r)
      if (a.at(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel == -1) throw Error(Errc::non_invertible, "matrix is singular");
    if (sel != col)
      for (int c = 0; c < n_; ++c) {
        std::swap(a.e_[static_cast<std::size_t>(col) * n_ + c],
                  a.e_[static_cast<std::size_t>(sel) * n_ + c]);
        std::swap(b.e_[static_cast<std::size_t>(col) * n_ + c],
                  b.e_[static_cast<std::size_t>(sel) * n_ + c]);
      }
    const mpq_class inv = mpq_class(1) / a.at(col, col);
    for (int c = 0; c < n_; ++c) {
      a.e_[static_cast<std::size_t>(col) * n_ + c] *= inv;
      b.e_[static_cast<std::size_t>(col) * n_ + c] *= inv;
    }
    for (int r = 0; r < n_; ++r) {
      if (r == col || a.at(r, col) == 0) continue;
      const mpq_class f = a.at(r, col);
      for (int c = 0; c < n_; ++c) {
        a.e_[static_cast<std::size_t>(r) * n_ + c] -= f * a.at(col, c);
        b.e_[static_cast<std::size_t>(r) * n_ + c] -= f * b.at(col, c);
      }
    }
  }
  return b;
}

bool is_unipotent(const QMatrix& m) {
  const QMatrix nil = m - QMatrix::identity(m.dim());
  QMatrix power = nil;
  for (int i = 1; i < m.dim(); ++i) {
    if (power.is_zero()) return true;
    power = power * nil;
  }
  return power.is_zero();
}

Subspace Subspace::zero(int ambient) {
  if (ambient < 1) throw Error(Errc::bad_argument, "ambient dimension must be positive");
  return Subspace(ambient);
}

Subspace Subspace::full(int ambient) {
  Subspace s = zero(ambient);
  for (int i = 0; i < ambient; ++i) {
    std::vector<mpq_class> row(static_cast<std::size_t>(ambient), mpq_class(0));
    row[static_cast<std::size_t>(i)] = 1;
    s.rows_.push_back(std::move(row));
  }
  return s;
}

Subspace Subspace::from_rows(int ambient, QRows rows) {
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != ambient)
      throw Error(Errc::bad_argument, "row width differs from ambient dimension");
  Subspace s = zero(ambient);
  rref_in_place(rows, ambient);
  s.rows_ = std::move(rows);
  return s;
}

bool Subspace::contains_vector(std::span<const mpq_class> v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw Error(Errc::bad_argument, "vector width differs from ambient dimension");
  std::vector<mpq_class> w(v.begin(), v.end());
  for (const auto& row : rows_) {
    int lead = 0;
    while (row[static_cast<std::size_t>(lead)] == 0) ++lead;
    if (w[static_cast<std::size_t>(lead)] == 0) continue;
    const mpq_class f = w[static_cast<std::size_t>(lead)];
    for (int j = 0; j < ambient_; ++j) w[static_cast<std::size_t>(j)] -= f * row[static_cast<std::size_t>(j)];
  }
  return std::all_of(w.begin(), w.end(), [](const mpq_class& x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_)
    throw Error(Errc::bad_argument, "subspaces with different ambient dimensions");
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [&](const auto& row) { return contains_vector(row); });
}

bool Subspace::operator==(const Subspace& o) const {
  return ambient_ == o.ambient_ && rows_ == o.rows_;
}

Subspace fixed_space(const QMatrix& m) {
  const QMatrix a = m - QMatrix::identity(m.dim());
  QRows rows;
  rows.reserve(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) {
    std::vector<mpq_class> row;
    row.reserve(static_cast<std::size_t>(m.dim()));
    for (int j = 0; j < m.dim(); ++j) row.push_back(a.at(i, j));
    rows.push_back(std::move(row));
  }
  return Subspace::from_rows(m.dim(), kernel_basis(std::move(rows), m.dim()));
}

Subspace intersect(std::span<const Subspace> spaces) {
  if (spaces.empty()) throw Error(Errc::bad_argument, "nothing to intersect");
  const int ambient = spaces.front().ambient();
  QRows constraints;
  for (const Subspace& s : spaces) {
    if (s.ambient() != ambient)
      throw Error(Errc::bad_argument, "subspaces with different ambient dimensions");
    // The annihilating constraints of s are the kernel of its basis matrix.
    for (auto& c : kernel_basis(s.basis(), ambient)) constraints.push_back(std::move(c));
  }
  return Subspace::from_rows(ambient, kernel_basis(std::move(constraints), ambient));
}

Subspace preimage_space(const QMatrix& a, const Subspace& w) {
  const int d = a.dim();
  if (w.ambient() != d)
    throw Error(Errc::bad_argument, "target space has a different ambient dimension");
  // x maps into w exactly when every constraint of w annihilates a x.
  QRows stacked;
  for (const auto& c : kernel_basis(w.basis(), d)) {
    std::vector<mpq_class> row(static_cast<std::size_t>(d), mpq_class(0));
    for (int j = 0; j < d; ++j) {
      mpq_class acc = 0;
      for (int l = 0; l < d; ++l) acc += c[static_cast<std::size_t>(l)] * a.at(l, j);
      row[static_cast<std::size_t>(j)] = std::move(acc);
    }
    stacked.push_back(std::move(row));
  }
  return Subspace::from_rows(d, kernel_basis(std::move(stacked), d));
}

HyperplaneReport hyperplane_bound_check(std::span<const Subspace> hyperplanes) {
  if (hyperplanes.empty()) throw Error(Errc::bad_argument, "no hyperplanes given");
  const int ambient = hyperplanes.front().ambient();
  for (const Subspace& w : hyperplanes)
    if (w.dim() != ambient - 1)
      throw Error(Errc::bad_argument, "subspace of codimension other than one");
  const Subspace meet = intersect(hyperplanes);
  const int bound = ambient - static_cast<int>(hyperplanes.size());
  return HyperplaneReport{meet.dim(), bound, meet.dim() >= bound};
}

Flag::Flag(int ambient, std::vector<Subspace> spaces)
    : ambient_(ambient), spaces_(std::move(spaces)) {
  if (spaces_.empty() || spaces_.front().dim() != 0)
    throw Error(Errc::bad_argument, "flag must start at the zero subspace");
  for (std::size_t i = 0; i < spaces_.size(); ++i) {
    if (spaces_[i].ambient() != ambient_)
      throw Error(Errc::bad_argument, "flag member with wrong ambient dimension");
    if (i > 0 && !(spaces_[i].contains(spaces_[i - 1]) &&
                   spaces_[i].dim() > spaces_[i - 1].dim()))
      throw Error(Errc::bad_argument, "flag members must increase strictly");
  }
}

namespace {

struct QuotientSetup {
  QRows complement;     // greedy standard-vector completion of V
  QMatrix basis_inverse;  // inverse of [V basis | complement] as columns
};

QuotientSetup quotient_setup(const Subspace& v) {
  const int d = v.ambient();
  QuotientSetup setup{{}, QMatrix(d)};
  SpanBuilder span(d);
  for (const auto& row : v.basis()) span.add(row);
  for (int i = 0; i < d && static_cast<int>(setup.complement.size()) < d - v.dim(); ++i) {
    std::vector<mpq_class> e(static_cast<std::size_t>(d), mpq_class(0));
    e[static_cast<std::size_t>(i)] = 1;
    if (span.add(e)) setup.complement.push_back(std::move(e));
  }
  QMatrix s(d);
  for (int c = 0; c < v.dim(); ++c)
    for (int r = 0; r < d; ++r) s.set(r, c, v.basis()[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
  for (int c = 0; c < static_cast<int>(setup.complement.size()); ++c)
    for (int r = 0; r < d; ++r)
      s.set(r, v.dim() + c, setup.complement[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
  setup.basis_inverse = s.inverse();
  return setup;
}

// Action induced by m on ambient/v, in the complement coordinates.
QMatrix induced_action(const QMatrix& m, const Subspace& v, const QuotientSetup& setup) {
  const int d = m.dim();
  const int r = static_cast<int>(setup.complement.size());
  QMatrix out(r);
  for (int i = 0; i < r; ++i) {
    // image of the i-th complement vector
    std::vector<mpq_class> w(static_cast<std::size_t>(d), mpq_class(0));
    for (int row = 0; row < d; ++row) {
      mpq_class acc = 0;
      for (int col = 0; col < d; ++col)
        acc += m.at(row, col) * setup.complement[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      w[static_cast<std::size_t>(row)] = std::move(acc);
    }
    // coordinates in the [basis | complement] frame; keep the complement part
    for (int row = 0; row < r; ++row) {
      mpq_class acc = 0;
      for (int col = 0; col < d; ++col)
        acc += setup.basis_inverse.at(v.dim() + row, col) * w[static_cast<std::size_t>(col)];
      out.set(row, i, std::move(acc));
    }
  }
  return out;
}

}  // namespace

Flag jh_series(std::span<const QMatrix> mats) {
  if (mats.empty()) throw Error(Errc::bad_argument, "empty matrix set");
  const int d = mats.front().dim();
  for (const QMatrix& m : mats) {
    if (m.dim() != d) throw Error(Errc::bad_argument, "matrices of different dimensions");
    if (!is_unipotent(m))
      throw Error(Errc::non_unipotent, "input matrix is not unipotent");
  }

  std::vector<Subspace> spaces{Subspace::zero(d)};
  Subspace v = spaces.front();
  while (v.dim() < d) {
    const QuotientSetup setup = quotient_setup(v);
    std::vector<Subspace> fixed;
    fixed.reserve(mats.size());
    for (const QMatrix& m : mats) fixed.push_back(fixed_space(induced_action(m, v, setup)));
    const Subspace common = intersect(fixed);
    if (common.dim() == 0)
      throw Error(Errc::stalled_flag,
                  "common fixed space of the quotient action is trivial");
    QRows rows = v.basis();
    for (const auto& qrow : common.basis()) {
      std::vector<mpq_class> lifted(static_cast<std::size_t>(d), mpq_class(0));
      for (std::size_t j = 0; j < qrow.size(); ++j)
        for (int col = 0; col < d; ++col)
          lifted[static_cast<std::size_t>(col)] += qrow[j] * setup.complement[j][static_cast<std::size_t>(col)];
      rows.push_back(std::move(lifted));
    }
    Subspace next = Subspace::from_rows(d, std::move(rows));
    if (next.dim() <= v.dim())
      throw Error(Errc::stalled_flag, "flag step failed to grow");
    spaces.push_back(next);
    v = std::move(next);
  }
  return Flag(d, std::move(spaces));
}

bool flag_invariant_under(std::span<const QMatrix> gens, const Flag& flag) {
  for (const QMatrix& g : gens) {
    // singular generators are rejected up front
    QMatrix check = g;
    (void)check.inverse();
    for (const Subspace& v : flag.spaces()) {
      if (v.dim() == 0 || v.dim() == flag.ambient()) continue;
      QRows image;
      image.reserve(v.basis().size());
      for (const auto& row : v.basis()) {
        std::vector<mpq_class> w(static_cast<std::size_t>(flag.ambient()), mpq_class(0));
        for (int r = 0; r < flag.ambient(); ++r) {
          mpq_class acc = 0;
          for (int c = 0; c < flag.ambient(); ++c) acc += g.at(r, c) * row[static_cast<std::size_t>(c)];
          w[static_cast<std::size_t>(r)] = std::move(acc);
        }
        image.push_back(std::move(w));
      }
      if (Subspace::from_rows(flag.ambient(), std::move(image)) != v) return false;
    }
  }
  return true;
}

QMatrix adapted_basis(const Flag& flag) {
  const int d = flag.ambient();
  SpanBuilder span(d);
  QRows cols;
  for (const Subspace& v : flag.spaces()) {
    for (const auto& row : v.basis())
      if (span.add(row)) cols.push_back(row);
    if (static_cast<int>(cols.size()) != v.dim())
      throw Error(Errc::bad_argument, "malformed flag basis");
  }
  for (int i = 0; i < d && static_cast<int>(cols.size()) < d; ++i) {
    std::vector<mpq_class> e(static_cast<std::size_t>(d), mpq_class(0));
    e[static_cast<std::size_t>(i)] = 1;
    if (span.add(e)) cols.push_back(std::move(e));
  }
  QMatrix t(d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) t.set(r, c, cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
  return t;
}

}  // namespace slocal
