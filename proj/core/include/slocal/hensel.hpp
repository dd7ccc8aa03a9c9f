#pragma once

#include <cstdint>
#include <vector>

#include "slocal/localring.hpp"

namespace slocal {

/// Dense polynomial over a Ring, coefficients lowest degree first.  The
/// stored length is authoritative: a leading coefficient that happens to be
/// zero in the model is kept, and degree() is the index of the last stored
/// coefficient.
struct Polynomial {
  Ring ring;
  std::vector<RingElem> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

Polynomial make_polynomial(const Ring& ring, const std::vector<mpz_class>& int_coeffs);

RingElem poly_eval(const Polynomial& f, const RingElem& a);
Polynomial poly_deriv(const Polynomial& f);

struct LiftResult {
  RingElem root;
  /// Valuation of the residual f(a) before each Newton update, in order.
  /// Strictly increasing; the final entry is the last inexact residual seen.
  std::vector<unsigned> residual_valuations;
};

/// Newton lifting of an approximate root.  Requires f(a) = 0 modulo
/// f'(a)^2 * pi, read at finite precision as the valuation inequality
/// val(f(a)) >= 2 val(f'(a)) + 1; returns a root a0 of f in the model with
/// a0 = a modulo f'(a) * pi.  If f(a) is already zero in the model, a is
/// returned unchanged.
///
/// Throws Errc::hypothesis_failed when the inequality does not hold (in
/// particular when f'(a) vanishes in the model while f(a) does not), and
/// Errc::no_convergence if the residual valuation ever fails to increase,
/// which signals precision exhaustion.
RingElem hensel_lift(const Polynomial& f, const RingElem& a);
LiftResult hensel_lift_trace(const Polynomial& f, const RingElem& a);

/// A unit q with q^4 = -r in the model, r a positive integer.
struct RootWitness {
  RingElem q;
  std::uint64_t r;
  RingElem certificate;  ///< q^4 + r, zero in the model
};

/// Witness that -r has a fourth root in the ring: r = 31 and start a = 1
/// for p = 2, r = p - 1 and start a = p - 1 for odd p.  Characteristic zero
/// only; throws Errc::characteristic_mismatch otherwise.
RootWitness fourth_root_witness(const Ring& ring);

/// A unit q with q^2 - 1 also a unit; requires residue field larger than
/// F_3 (throws Errc::residue_field_too_small for p = 2, 3).  Any residue
/// c outside {0, 1, p-1} works; c = 2 is chosen.
RingElem unit_with_unit_square_minus_one(const Ring& ring);

}  // namespace slocal
