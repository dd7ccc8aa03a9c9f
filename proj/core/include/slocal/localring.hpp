#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slocal/errors.hpp"

namespace slocal {

enum class Characteristic { zero, positive };

/// pi-adic valuation of a residue known modulo pi^N.  An element that is
/// zero in the model has valuation at least N; that state is kept distinct
/// from every exact value instead of being clamped.
class Valuation {
 public:
  static Valuation exact(unsigned v) { return Valuation(v); }
  static Valuation at_least_precision() { return Valuation(); }

  bool is_exact() const { return v_.has_value(); }
  unsigned value() const {
    if (!v_) throw Error(Errc::bad_argument, "valuation is not exact at this precision");
    return *v_;
  }

  bool operator==(const Valuation& o) const = default;
  /// at_least_precision compares greater than every exact valuation.
  bool operator<(const Valuation& o) const {
    if (!v_) return false;
    if (!o.v_) return true;
    return *v_ < *o.v_;
  }

  std::string to_string() const;

 private:
  Valuation() = default;
  explicit Valuation(unsigned v) : v_(v) {}
  std::optional<unsigned> v_;
};

class RingElem;

/// Descriptor of a complete discrete valuation ring with residue field F_p,
/// modeled at fixed precision N: Z/p^N (characteristic zero, pi = p) or
/// F_p[t]/(t^N) (positive characteristic, pi = t).  Immutable and cheap to
/// copy; equality is structural on (characteristic, p, N).
class Ring {
 public:
  Ring(Characteristic chr, std::uint64_t p, unsigned precision);

  Characteristic characteristic() const;
  std::uint64_t residue_char() const;  ///< p
  unsigned precision() const;          ///< N
  const mpz_class& modulus() const;    ///< p^N; characteristic zero only

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }

  RingElem zero() const;
  RingElem one() const;
  RingElem uniformizer() const;
  RingElem pi_pow(unsigned k) const;

  /// Canonical image of an integer: residue mod p^N, or the constant
  /// polynomial with value mod p in positive characteristic.
  RingElem from_integer(const mpz_class& v) const;
  RingElem from_integer(long v) const;
  /// Positive characteristic only: element from coefficients (lowest degree
  /// first, arbitrary integers; reduced mod p and truncated/padded to N).
  RingElem from_coefficients(const std::vector<std::int64_t>& coeffs) const;

  std::string to_string() const;

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
  friend class RingElem;
};

Ring make_ring(Characteristic chr, std::uint64_t p, unsigned precision);

/// Element of a Ring in canonical reduced form: least nonnegative residue
/// below p^N, or a coefficient vector of length N over {0..p-1}.  Values are
/// immutable; all arithmetic is exact modulo pi^N.
class RingElem {
 public:
  const Ring& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;

  const mpz_class& residue() const;                       ///< characteristic zero payload
  const std::vector<std::uint32_t>& coefficients() const; ///< positive characteristic payload

  std::string to_string() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

 private:
  explicit RingElem(Ring ring) : ring_(std::move(ring)) {}
  Ring ring_;
  mpz_class residue_;
  std::vector<std::uint32_t> coeffs_;
  friend class Ring;
  friend RingElem shift_down(const RingElem&, unsigned);
};

enum class RingOp { add, sub, mul, neg };

/// Dispatcher form of the arithmetic operators; `neg` ignores b.
RingElem ring_arith(RingOp op, const RingElem& a, const RingElem& b);

Valuation valuation(const RingElem& a);
bool is_unit(const RingElem& a);

/// Multiplicative inverse of a unit (extended Euclid / power series
/// inversion).  Throws Errc::non_unit otherwise.
RingElem invert(const RingElem& a);

/// Exact division by pi^k for an element of valuation >= k.  The result is
/// one canonical representative of the quotient (which is only determined
/// modulo pi^(N-k)).
RingElem shift_down(const RingElem& a, unsigned k);

/// Smallest k such that pi^k * O (taken in the model, i.e. modulo pi^N) is
/// contained in the additive closure of the generators; nullopt when all
/// generators are zero, in which case finite index cannot be certified.
/// In characteristic zero this is the minimum valuation of the generators;
/// in positive characteristic the closure is the F_p-span and k may be as
/// large as N when no proper monomial tail is covered.
std::optional<unsigned> additive_subgroup_level(std::span<const RingElem> gens);

}  // namespace slocal
