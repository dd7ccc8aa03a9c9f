#include "slocal/hensel.hpp"

namespace slocal {

Polynomial make_polynomial(const Ring& ring, const std::vector<mpz_class>& int_coeffs) {
  Polynomial f{ring, {}};
  f.coeffs.reserve(int_coeffs.size());
  for (const auto& c : int_coeffs) f.coeffs.push_back(ring.from_integer(c));
  return f;
}

RingElem poly_eval(const Polynomial& f, const RingElem& a) {
  if (a.ring() != f.ring) throw Error(Errc::ring_mismatch, "argument not in the polynomial's ring");
  RingElem acc = f.ring.zero();
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * a + *it;
  return acc;
}

Polynomial poly_deriv(const Polynomial& f) {
  Polynomial d{f.ring, {}};
  for (std::size_t i = 1; i < f.coeffs.size(); ++i)
    d.coeffs.push_back(f.ring.from_integer(static_cast<long>(i)) * f.coeffs[i]);
  return d;
}

LiftResult hensel_lift_trace(const Polynomial& f, const RingElem& start) {
  const Ring& ring = f.ring;
  const unsigned n = ring.precision();
  const Polynomial fp = poly_deriv(f);

  RingElem a = start;
  RingElem fa = poly_eval(f, a);
  LiftResult out{a, {}};
  if (fa.is_zero()) return out;

  RingElem fpa = poly_eval(fp, a);
  const Valuation dv = valuation(fpa);
  if (!dv.is_exact())
    throw Error(Errc::hypothesis_failed, "derivative vanishes in the model");
  const unsigned e = dv.value();
  {
    const Valuation rv = valuation(fa);
    if (rv.is_exact() && rv.value() < 2 * e + 1)
      throw Error(Errc::hypothesis_failed,
                  "val(f(a)) = " + rv.to_string() + " < 2*val(f'(a)) + 1 = " +
                      std::to_string(2 * e + 1));
  }

  unsigned prev = 0;
  bool have_prev = false;
  while (!fa.is_zero()) {
    const Valuation rv = valuation(fa);
    const unsigned v = rv.value();  // fa nonzero, so exact and < n
    if (have_prev && v <= prev)
      throw Error(Errc::no_convergence,
                  "residual valuation stalled at " + std::to_string(v) +
                      " (precision " + std::to_string(n) + " exhausted)");
    out.residual_valuations.push_back(v);
    prev = v;
    have_prev = true;

    RingElem dcur = poly_eval(fp, a);
    const Valuation dvc = valuation(dcur);
    if (!dvc.is_exact())
      throw Error(Errc::no_convergence, "derivative vanished in the model during iteration");
    const unsigned ec = dvc.value();
    // Division arranged at matching valuations: f(a)/f'(a) =
    // (f(a)/pi^e) * (f'(a)/pi^e)^-1 with the second factor a unit.
    RingElem h = shift_down(fa, ec) * invert(shift_down(dcur, ec));
    a = a - h;
    fa = poly_eval(f, a);
  }

  out.root = a;
  return out;
}

RingElem hensel_lift(const Polynomial& f, const RingElem& a) {
  return hensel_lift_trace(f, a).root;
}

RootWitness fourth_root_witness(const Ring& ring) {
  if (ring.characteristic() != Characteristic::zero)
    throw Error(Errc::characteristic_mismatch,
                "fourth root witness is constructed in characteristic zero only");
  const std::uint64_t p = ring.residue_char();
  const std::uint64_t r = (p == 2) ? 31 : p - 1;
  // f = x^4 + r, started at 1 for p = 2 and at p - 1 otherwise.
  Polynomial f = make_polynomial(
      ring, {mpz_class(static_cast<unsigned long>(r)), mpz_class(0), mpz_class(0),
             mpz_class(0), mpz_class(1)});
  const RingElem start =
      ring.from_integer(mpz_class(static_cast<unsigned long>(p == 2 ? 1 : p - 1)));
  RingElem q = hensel_lift(f, start);
  RingElem cert = q * q;
  cert = cert * cert + ring.from_integer(mpz_class(static_cast<unsigned long>(r)));
  return RootWitness{q, r, cert};
}

RingElem unit_with_unit_square_minus_one(const Ring& ring) {
  if (ring.residue_char() <= 3)
    throw Error(Errc::residue_field_too_small,
                "requires residue field with more than 3 elements");
  return ring.from_integer(2L);
}

}  // namespace slocal
