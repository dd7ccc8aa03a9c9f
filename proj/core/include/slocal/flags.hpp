#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "slocal/errors.hpp"

namespace slocal {

/// Square matrix with exact rational entries, 0-based access.
class QMatrix {
 public:
  QMatrix(int dim);  ///< zero matrix
  static QMatrix identity(int dim);

  int dim() const { return n_; }
  const mpq_class& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * n_ + c]; }
  void set(int r, int c, mpq_class v);

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  bool operator==(const QMatrix& o) const;
  bool operator!=(const QMatrix& o) const { return !(*this == o); }

  QMatrix inverse() const;  ///< throws Errc::non_invertible when singular
  bool is_zero() const;

 private:
  int n_;
  std::vector<mpq_class> e_;
};

/// (M - I)^dim = 0, checked exactly.
bool is_unipotent(const QMatrix& m);

/// Rational subspace in canonical reduced row echelon form; equality is
/// structural on the RREF basis, so it decides subspace equality.
class Subspace {
 public:
  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  static Subspace from_rows(int ambient, std::vector<std::vector<mpq_class>> rows);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<mpq_class>>& basis() const { return rows_; }

  bool contains_vector(std::span<const mpq_class> v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  Subspace(int ambient) : ambient_(ambient) {}
  int ambient_;
  std::vector<std::vector<mpq_class>> rows_;
};

/// Kernel of (M - I): the maximal 1-eigenspace.
Subspace fixed_space(const QMatrix& m);

/// Exact intersection by stacking the linear constraints of each space.
Subspace intersect(std::span<const Subspace> spaces);

/// {x : a x in w} for a linear (not necessarily invertible) map a.
Subspace preimage_space(const QMatrix& a, const Subspace& w);

struct HyperplaneReport {
  int dimension;                ///< dim of the intersection
  int lower_bound;              ///< D - n, possibly negative
  bool holds;                   ///< dimension >= max(lower_bound, 0)
};

/// Intersection bound for codimension-one subspaces: n hyperplanes in a
/// D-dimensional space meet in dimension at least D - n.
HyperplaneReport hyperplane_bound_check(std::span<const Subspace> hyperplanes);

/// Strictly increasing chain {0} = V_0 < V_1 < ... < V_e.
class Flag {
 public:
  Flag(int ambient, std::vector<Subspace> spaces);  ///< validates the chain

  int ambient() const { return ambient_; }
  std::size_t length() const { return spaces_.size() - 1; }  ///< e
  const std::vector<Subspace>& spaces() const { return spaces_; }

 private:
  int ambient_;
  std::vector<Subspace> spaces_;
};

/// Common 1-eigenspace flag of a set of unipotent matrices: V_1 is the
/// intersection of the fixed spaces, and V_j is the preimage of the common
/// fixed space of the induced actions on ambient/V_{j-1}.  Ends at the full
/// space for sets generating a unipotent group; throws Errc::non_unipotent
/// when an input matrix is not unipotent and Errc::stalled_flag if a step
/// fails to grow.
Flag jh_series(std::span<const QMatrix> mats);

/// True if and only if g V_j = V_j for every generator and every step.
bool flag_invariant_under(std::span<const QMatrix> gens, const Flag& flag);

/// Invertible matrix whose leading dim(V_j) columns span V_j for every j;
/// conjugation T^-1 M T sends flag-preserving matrices to block upper
/// triangular form.
QMatrix adapted_basis(const Flag& flag);

}  // namespace slocal
