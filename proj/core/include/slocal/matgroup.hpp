#pragma once

#include <vector>

#include "slocal/localring.hpp"

namespace slocal {

/// Square matrix over a Ring, row-major, with exact entries.  Entry access
/// is 0-based; the elementary-letter API below is 1-based to match the usual
/// E_{i,j} indexing.
class RMatrix {
 public:
  RMatrix(Ring ring, int n);  ///< zero matrix
  static RMatrix identity(const Ring& ring, int n);

  int dim() const { return n_; }
  const Ring& ring() const { return ring_; }

  const RingElem& at(int r, int c) const { return entries_[index(r, c)]; }
  void set(int r, int c, RingElem v);

  RMatrix operator*(const RMatrix& o) const;
  bool operator==(const RMatrix& o) const;
  bool operator!=(const RMatrix& o) const { return !(*this == o); }

  bool is_identity() const;

 private:
  std::size_t index(int r, int c) const;
  Ring ring_;
  int n_;
  std::vector<RingElem> entries_;
};

/// E_{i,j}(x): identity plus x in position (i, j), 1-based, i != j.
RMatrix elementary(const Ring& ring, int n, int i, int j, const RingElem& x);

RMatrix mat_mul(const RMatrix& a, const RMatrix& b);

/// Exact determinant modulo pi^N, via elimination on minimal-valuation
/// pivots (divisions happen at matching valuations only).
RingElem det(const RMatrix& m);

/// Inverse of a matrix with unit determinant (Gauss-Jordan on unit pivots).
/// Throws Errc::non_invertible otherwise.
RMatrix mat_inverse(const RMatrix& m);

/// A B A^-1 B^-1.
RMatrix commutator(const RMatrix& a, const RMatrix& b);

struct Letter {
  int i;  ///< 1-based row
  int j;  ///< 1-based column
  RingElem x;
};

/// Ordered product of elementary letters, evaluated left to right.
class ElementaryWord {
 public:
  ElementaryWord(Ring ring, int n);

  int dim() const { return n_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }

  void push_back(int i, int j, RingElem x);      ///< validates i != j, bounds
  void append(const ElementaryWord& other);
  ElementaryWord inverse() const;                ///< reversed, negated letters

 private:
  Ring ring_;
  int n_;
  std::vector<Letter> letters_;
};

RMatrix evaluate_word(const ElementaryWord& w);

/// Three-letter word for [[0,1],[-1,0]].
ElementaryWord weyl_word(const Ring& ring);

/// Five-letter word for diag(a1^-1, a1), a1 a unit:
/// E12(-a1) E21(a1-1) E12(1) E21(a1^-1 - 1) E12(-a1(1-a1^2)).
ElementaryWord diag_word(const RingElem& a1);

/// Factorization of M in SL_2 into at most 13 elementary letters:
/// an optional Weyl correction when the (1,1) entry is not a unit, one
/// letter clearing each off-diagonal entry, and diag_word for the rest.
ElementaryWord decompose_sl2(const RMatrix& m);

/// Factorization for any n >= 2: Gaussian elimination on unit pivots with
/// every row/column operation recorded, then the terminal diagonal factored
/// through adjacent 2x2 blocks.
ElementaryWord decompose_sln(const RMatrix& m);

/// Word with every letter entry of valuation >= k evaluating to
/// diag(1 + pi^(2k) x, (1 + pi^(2k) x)^-1).  Requires k >= 1 and 2k < N;
/// x = 0 yields the empty word.
ElementaryWord el_diagonal_word(unsigned k, const RingElem& x);

struct IdentityReport {
  bool holds;
  RMatrix lhs;
  RMatrix rhs;
};

/// [E12(x), E23(y)] = E13(xy) in dimension n >= 3.
IdentityReport steinberg_check(const Ring& ring, int n, const RingElem& x, const RingElem& y);

struct PerfectnessWitness {
  RingElem q;
  RingElem t;
  bool holds;  ///< [diag(q, q^-1), E12(t)] = E12(x) verified exactly
};

/// Exhibits E12(x) as a commutator [diag(q, q^-1), E12(t)] with q^2 - 1 a
/// unit; requires residue field larger than F_3.
PerfectnessWitness perfectness_witness(const RingElem& x);

/// [diag(1 + pi^k y, (1 + pi^k y)^-1), E12(pi^t x)] =
/// E12(pi^(k+t) y x (2 + pi^k y)); y must be a unit and 1 + pi^k y
/// invertible.
IdentityReport dilation_commutator_check(unsigned k, const RingElem& y, unsigned t,
                                         const RingElem& x);

/// The n-1 commuting generators E_{i,col}(pi^k), i != col (col 1-based).
std::vector<RMatrix> column_group_generators(const Ring& ring, int n, int col, unsigned k);

}  // namespace slocal
