#include "slocal/localring.hpp"

#include <algorithm>
#include <sstream>

namespace slocal {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::bad_argument: return "BadArgument";
    case Errc::ring_mismatch: return "RingMismatch";
    case Errc::non_unit: return "NonUnit";
    case Errc::non_invertible: return "NonInvertible";
    case Errc::not_sl: return "NotSL";
    case Errc::precision_loss: return "PrecisionLoss";
    case Errc::hypothesis_failed: return "HypothesisFailed";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::characteristic_mismatch: return "CharacteristicMismatch";
    case Errc::residue_field_too_small: return "ResidueFieldTooSmall";
    case Errc::resource_cap: return "ResourceCapExceeded";
    case Errc::abelianization_trivial: return "AbelianizationTrivial";
    case Errc::non_unipotent: return "NonUnipotentInput";
    case Errc::stalled_flag: return "StalledFlag";
    case Errc::subgroup_mismatch: return "SubgroupMismatch";
  }
  return "UnknownError";
}

std::string Valuation::to_string() const {
  return v_ ? std::to_string(*v_) : std::string("AtLeastPrecision");
}

namespace {

bool is_prime_u64(std::uint64_t p) {
  mpz_class z(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

// Inverse of a mod m for machine-word m, via extended Euclid.
std::uint64_t inverse_mod_u64(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) throw Error(Errc::non_unit, "element has no inverse modulo " + std::to_string(m));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

}  // namespace

struct Ring::Rep {
  Characteristic chr;
  std::uint64_t p;
  unsigned precision;
  mpz_class modulus;  // p^precision, characteristic zero only
};

Ring::Ring(Characteristic chr, std::uint64_t p, unsigned precision) {
  if (precision == 0) throw Error(Errc::bad_argument, "precision must be at least 1");
  if (p < 2 || !is_prime_u64(p))
    throw Error(Errc::bad_argument, std::to_string(p) + " is not prime");
  if (chr == Characteristic::positive && p > 0xffffffffULL)
    throw Error(Errc::bad_argument, "positive characteristic supports p < 2^32");
  auto rep = std::make_shared<Rep>();
  rep->chr = chr;
  rep->p = p;
  rep->precision = precision;
  if (chr == Characteristic::zero) {
    mpz_ui_pow_ui(rep->modulus.get_mpz_t(), static_cast<unsigned long>(p), precision);
  }
  rep_ = std::move(rep);
}

Characteristic Ring::characteristic() const { return rep_->chr; }
std::uint64_t Ring::residue_char() const { return rep_->p; }
unsigned Ring::precision() const { return rep_->precision; }

const mpz_class& Ring::modulus() const {
  if (rep_->chr != Characteristic::zero)
    throw Error(Errc::characteristic_mismatch, "modulus is defined for characteristic zero only");
  return rep_->modulus;
}

bool Ring::operator==(const Ring& o) const {
  return rep_->chr == o.rep_->chr && rep_->p == o.rep_->p &&
         rep_->precision == o.rep_->precision;
}

std::string Ring::to_string() const {
  std::ostringstream os;
  if (rep_->chr == Characteristic::zero)
    os << "Z/" << rep_->p << "^" << rep_->precision;
  else
    os << "F_" << rep_->p << "[t]/(t^" << rep_->precision << ")";
  return os.str();
}

RingElem Ring::zero() const { return from_integer(mpz_class(0)); }
RingElem Ring::one() const { return from_integer(mpz_class(1)); }

RingElem Ring::uniformizer() const { return pi_pow(1); }

RingElem Ring::pi_pow(unsigned k) const {
  RingElem e(*this);
  if (rep_->chr == Characteristic::zero) {
    if (k < rep_->precision)
      mpz_ui_pow_ui(e.residue_.get_mpz_t(), static_cast<unsigned long>(rep_->p), k);
    // else stays 0
  } else {
    e.coeffs_.assign(rep_->precision, 0);
    if (k < rep_->precision) e.coeffs_[k] = 1;
  }
  return e;
}

RingElem Ring::from_integer(const mpz_class& v) const {
  RingElem e(*this);
  if (rep_->chr == Characteristic::zero) {
    mpz_mod(e.residue_.get_mpz_t(), v.get_mpz_t(), rep_->modulus.get_mpz_t());
  } else {
    mpz_class r;
    mpz_class p(static_cast<unsigned long>(rep_->p));
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    e.coeffs_.assign(rep_->precision, 0);
    e.coeffs_[0] = static_cast<std::uint32_t>(r.get_ui());
  }
  return e;
}

RingElem Ring::from_integer(long v) const { return from_integer(mpz_class(v)); }

RingElem Ring::from_coefficients(const std::vector<std::int64_t>& coeffs) const {
  if (rep_->chr != Characteristic::positive)
    throw Error(Errc::characteristic_mismatch,
                "coefficient construction requires positive characteristic");
  RingElem e(*this);
  e.coeffs_.assign(rep_->precision, 0);
  const auto p = static_cast<std::int64_t>(rep_->p);
  for (std::size_t i = 0; i < coeffs.size() && i < rep_->precision; ++i) {
    std::int64_t c = coeffs[i] % p;
    if (c < 0) c += p;
    e.coeffs_[i] = static_cast<std::uint32_t>(c);
  }
  return e;
}

Ring make_ring(Characteristic chr, std::uint64_t p, unsigned precision) {
  return Ring(chr, p, precision);
}

bool RingElem::is_zero() const {
  if (ring_.characteristic() == Characteristic::zero) return residue_ == 0;
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c == 0; });
}

bool RingElem::is_one() const { return *this == ring_.one(); }

const mpz_class& RingElem::residue() const {
  if (ring_.characteristic() != Characteristic::zero)
    throw Error(Errc::characteristic_mismatch, "residue payload requires characteristic zero");
  return residue_;
}

const std::vector<std::uint32_t>& RingElem::coefficients() const {
  if (ring_.characteristic() != Characteristic::positive)
    throw Error(Errc::characteristic_mismatch,
                "coefficient payload requires positive characteristic");
  return coeffs_;
}

std::string RingElem::to_string() const {
  if (ring_.characteristic() == Characteristic::zero) return residue_.get_str();
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ",";
    os << coeffs_[i];
  }
  os << "]";
  return os.str();
}

namespace {
void require_same_ring(const RingElem& a, const RingElem& b) {
  if (a.ring() != b.ring())
    throw Error(Errc::ring_mismatch, "operands belong to different rings");
}
}  // namespace

RingElem RingElem::operator+(const RingElem& o) const {
  require_same_ring(*this, o);
  RingElem r(ring_);
  if (ring_.characteristic() == Characteristic::zero) {
    r.residue_ = residue_ + o.residue_;
    mpz_mod(r.residue_.get_mpz_t(), r.residue_.get_mpz_t(), ring_.modulus().get_mpz_t());
  } else {
    const std::uint64_t p = ring_.residue_char();
    r.coeffs_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      r.coeffs_[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(coeffs_[i]) + o.coeffs_[i]) % p);
  }
  return r;
}

RingElem RingElem::operator-() const {
  RingElem r(ring_);
  if (ring_.characteristic() == Characteristic::zero) {
    if (residue_ == 0)
      r.residue_ = 0;
    else
      r.residue_ = ring_.modulus() - residue_;
  } else {
    const std::uint64_t p = ring_.residue_char();
    r.coeffs_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      r.coeffs_[i] = coeffs_[i] == 0 ? 0 : static_cast<std::uint32_t>(p - coeffs_[i]);
  }
  return r;
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator*(const RingElem& o) const {
  require_same_ring(*this, o);
  RingElem r(ring_);
  if (ring_.characteristic() == Characteristic::zero) {
    r.residue_ = residue_ * o.residue_;
    mpz_mod(r.residue_.get_mpz_t(), r.residue_.get_mpz_t(), ring_.modulus().get_mpz_t());
  } else {
    const std::uint64_t p = ring_.residue_char();
    const std::size_t n = coeffs_.size();
    r.coeffs_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (o.coeffs_[j] == 0) continue;
        std::uint64_t acc = r.coeffs_[i + j] +
            static_cast<std::uint64_t>(coeffs_[i]) * o.coeffs_[j] % p;
        r.coeffs_[i + j] = static_cast<std::uint32_t>(acc % p);
      }
    }
  }
  return r;
}

bool RingElem::operator==(const RingElem& o) const {
  if (ring_ != o.ring_) return false;
  if (ring_.characteristic() == Characteristic::zero) return residue_ == o.residue_;
  return coeffs_ == o.coeffs_;
}

RingElem ring_arith(RingOp op, const RingElem& a, const RingElem& b) {
  switch (op) {
    case RingOp::add: return a + b;
    case RingOp::sub: return a - b;
    case RingOp::mul: return a * b;
    case RingOp::neg: return -a;
  }
  throw Error(Errc::bad_argument, "unknown ring operation");
}

Valuation valuation(const RingElem& a) {
  if (a.is_zero()) return Valuation::at_least_precision();
  if (a.ring().characteristic() == Characteristic::zero) {
    mpz_class r = a.residue();
    const mpz_class p(static_cast<unsigned long>(a.ring().residue_char()));
    unsigned v = 0;
    while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
      ++v;
    }
    return Valuation::exact(v);
  }
  const auto& c = a.coefficients();
  for (unsigned i = 0; i < c.size(); ++i)
    if (c[i] != 0) return Valuation::exact(i);
  return Valuation::at_least_precision();
}

bool is_unit(const RingElem& a) {
  Valuation v = valuation(a);
  return v.is_exact() && v.value() == 0;
}

RingElem invert(const RingElem& a) {
  if (!is_unit(a)) throw Error(Errc::non_unit, "element of positive valuation has no inverse");
  const Ring& ring = a.ring();
  if (ring.characteristic() == Characteristic::zero) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), a.residue().get_mpz_t(), ring.modulus().get_mpz_t()) == 0)
      throw Error(Errc::non_unit, "element is not invertible");
    return ring.from_integer(inv);
  }
  // Power series inversion: solve a * b = 1 coefficient by coefficient.
  const std::uint64_t p = ring.residue_char();
  const auto& ac = a.coefficients();
  const std::size_t n = ac.size();
  std::vector<std::int64_t> b(n, 0);
  const std::uint64_t b0 = inverse_mod_u64(ac[0], p);
  b[0] = static_cast<std::int64_t>(b0);
  for (std::size_t k = 1; k < n; ++k) {
    std::uint64_t s = 0;
    for (std::size_t i = 1; i <= k; ++i)
      s = (s + static_cast<std::uint64_t>(ac[i]) * static_cast<std::uint64_t>(b[k - i])) % p;
    b[k] = static_cast<std::int64_t>((p - s) % p * b0 % p);
  }
  return ring.from_coefficients(b);
}

RingElem shift_down(const RingElem& a, unsigned k) {
  if (k == 0) return a;
  Valuation v = valuation(a);
  if (v.is_exact() && v.value() < k)
    throw Error(Errc::bad_argument, "valuation too small for exact division by pi^k");
  const Ring& ring = a.ring();
  RingElem r(ring);
  if (ring.characteristic() == Characteristic::zero) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(ring.residue_char()), k);
    mpz_divexact(r.residue_.get_mpz_t(), a.residue().get_mpz_t(), pk.get_mpz_t());
  } else {
    const auto& c = a.coefficients();
    r.coeffs_.assign(c.size(), 0);
    for (std::size_t i = k; i < c.size(); ++i) r.coeffs_[i - k] = c[i];
  }
  return r;
}

namespace {

// Row echelon span over F_p, rows normalized to leading coefficient 1.
class FpSpan {
 public:
  FpSpan(std::uint64_t p, std::size_t width) : p_(p), width_(width) {}

  void add(std::vector<std::uint32_t> row) {
    reduce(row);
    for (std::size_t l = 0; l < width_; ++l) {
      if (row[l] != 0) {
        const std::uint64_t inv = inverse_mod_u64(row[l], p_);
        for (auto& c : row) c = static_cast<std::uint32_t>(c * inv % p_);
        rows_.push_back({l, std::move(row)});
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return;
      }
    }
  }

  bool contains(std::vector<std::uint32_t> row) const {
    reduce(row);
    return std::all_of(row.begin(), row.end(), [](std::uint32_t c) { return c == 0; });
  }

 private:
  void reduce(std::vector<std::uint32_t>& row) const {
    for (const auto& [lead, basis] : rows_) {
      const std::uint64_t c = row[lead];
      if (c == 0) continue;
      for (std::size_t j = lead; j < width_; ++j) {
        const std::uint64_t sub = static_cast<std::uint64_t>(basis[j]) * c % p_;
        row[j] = static_cast<std::uint32_t>((row[j] + p_ - sub) % p_);
      }
    }
  }

  std::uint64_t p_;
  std::size_t width_;
  std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> rows_;
};

}  // namespace

std::optional<unsigned> additive_subgroup_level(std::span<const RingElem> gens) {
  if (gens.empty()) throw Error(Errc::bad_argument, "generator list is empty");
  const Ring& ring = gens.front().ring();
  for (const auto& g : gens)
    if (g.ring() != ring) throw Error(Errc::ring_mismatch, "generators from different rings");

  if (std::all_of(gens.begin(), gens.end(), [](const RingElem& g) { return g.is_zero(); }))
    return std::nullopt;

  if (ring.characteristic() == Characteristic::zero) {
    // The additive closure is the cyclic subgroup generated by the gcd,
    // which is pi^k O for k the minimal valuation.
    unsigned best = ring.precision();
    for (const auto& g : gens) {
      Valuation v = valuation(g);
      if (v.is_exact()) best = std::min(best, v.value());
    }
    return best;
  }

  // Positive characteristic: the closure is the F_p-span of the generators.
  const unsigned n = ring.precision();
  FpSpan span(ring.residue_char(), n);
  for (const auto& g : gens) span.add(g.coefficients());
  unsigned k = n;
  for (unsigned j = n; j-- > 0;) {
    std::vector<std::uint32_t> mono(n, 0);
    mono[j] = 1;
    if (!span.contains(std::move(mono))) break;
    k = j;
  }
  return k;
}

}  // namespace slocal
