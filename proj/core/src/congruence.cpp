#include "slocal/congruence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace slocal {

namespace {

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1)
    throw Error(Errc::non_invertible, "value not invertible modulo " + std::to_string(m));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::uint64_t pow_u64_checked(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (v > limit / base) throw Error(Errc::bad_argument, "modulus exceeds supported range");
    v *= base;
  }
  return v;
}

}  // namespace

FiniteMat::FiniteMat(std::uint32_t modulus, int n) : q_(modulus), n_(n) {
  if (modulus < 2) throw Error(Errc::bad_argument, "modulus must be at least 2");
  if (n < 1 || n > max_dim)
    throw Error(Errc::bad_argument, "dimension must be between 1 and 4");
  std::fill(std::begin(e_), std::end(e_), 0u);
}

FiniteMat FiniteMat::identity(std::uint32_t modulus, int n) {
  FiniteMat m(modulus, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FiniteMat FiniteMat::elementary(std::uint32_t modulus, int n, int i, int j, std::uint64_t x) {
  if (i < 1 || i > n || j < 1 || j > n || i == j)
    throw Error(Errc::bad_argument, "elementary matrix requires 1 <= i, j <= n and i != j");
  FiniteMat m = identity(modulus, n);
  m.set(i - 1, j - 1, x);
  return m;
}

void FiniteMat::set(int r, int c, std::uint64_t v) {
  if (r < 0 || r >= n_ || c < 0 || c >= n_)
    throw Error(Errc::bad_argument, "matrix index out of range");
  e_[static_cast<std::size_t>(r) * n_ + c] = static_cast<std::uint32_t>(v % q_);
}

FiniteMat FiniteMat::operator*(const FiniteMat& o) const {
  if (q_ != o.q_ || n_ != o.n_)
    throw Error(Errc::bad_argument, "matrices with different modulus or dimension");
  FiniteMat out(q_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::uint64_t acc = 0;
      for (int k = 0; k < n_; ++k)
        acc += static_cast<std::uint64_t>(at(i, k)) * o.at(k, j);
      out.e_[static_cast<std::size_t>(i) * n_ + j] = static_cast<std::uint32_t>(acc % q_);
    }
  return out;
}

bool FiniteMat::operator==(const FiniteMat& o) const {
  if (q_ != o.q_ || n_ != o.n_) return false;
  return std::equal(e_, e_ + static_cast<std::size_t>(n_) * n_, o.e_);
}

namespace {

// Determinant of the minor dropping row `dr` and column `dc`, for n <= 4.
std::uint64_t det_rec(const std::uint32_t* e, int n, std::uint32_t q,
                      unsigned row_mask, unsigned col_mask) {
  int rows[FiniteMat::max_dim], cols[FiniteMat::max_dim], k = 0, l = 0;
  for (int i = 0; i < n; ++i) {
    if (!(row_mask & (1u << i))) rows[k++] = i;
    if (!(col_mask & (1u << i))) cols[l++] = i;
  }
  if (k == 1) return e[rows[0] * n + cols[0]];
  std::uint64_t acc = 0;
  bool neg = false;
  for (int j = 0; j < k; ++j) {
    const std::uint64_t a = e[rows[0] * n + cols[j]];
    if (a != 0) {
      const std::uint64_t minor =
          det_rec(e, n, q, row_mask | (1u << rows[0]), col_mask | (1u << cols[j]));
      const std::uint64_t term = a * minor % q;
      acc = neg ? (acc + q - term) % q : (acc + term) % q;
    }
    neg = !neg;
  }
  return acc;
}

}  // namespace

std::uint32_t FiniteMat::det() const {
  return static_cast<std::uint32_t>(det_rec(e_, n_, q_, 0, 0));
}

bool FiniteMat::is_invertible() const {
  return std::gcd<std::uint64_t, std::uint64_t>(det(), q_) == 1;
}

FiniteMat FiniteMat::inverse() const {
  const std::uint64_t d = det();
  if (std::gcd<std::uint64_t, std::uint64_t>(d, q_) != 1)
    throw Error(Errc::non_invertible, "determinant is not a unit");
  const std::uint64_t dinv = inverse_mod(d, q_);
  FiniteMat out(q_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      // adjugate entry (i, j) = (-1)^(i+j) * minor(j, i)
      std::uint64_t minor = n_ == 1 ? 1 : det_rec(e_, n_, q_, 1u << j, 1u << i);
      std::uint64_t v = minor * dinv % q_;
      if ((i + j) % 2 == 1 && v != 0) v = q_ - v;
      out.e_[static_cast<std::size_t>(i) * n_ + j] = static_cast<std::uint32_t>(v);
    }
  return out;
}

unsigned __int128 FiniteMat::key(unsigned bits_per_entry) const {
  unsigned __int128 k = 0;
  for (int i = 0; i < n_ * n_; ++i) k = (k << bits_per_entry) | e_[i];
  return k;
}

FiniteMat FiniteMat::unpack(unsigned __int128 key, unsigned bits_per_entry, std::uint32_t modulus,
                            int n) {
  FiniteMat m(modulus, n);
  const unsigned __int128 mask = (static_cast<unsigned __int128>(1) << bits_per_entry) - 1;
  for (int i = n * n - 1; i >= 0; --i) {
    m.e_[i] = static_cast<std::uint32_t>(key & mask);
    key >>= bits_per_entry;
  }
  return m;
}

FiniteMat project(const RMatrix& m, unsigned level) {
  const Ring& ring = m.ring();
  if (ring.characteristic() != Characteristic::zero)
    throw Error(Errc::characteristic_mismatch, "projection targets Z/p^m quotients");
  if (level < 1 || level > ring.precision())
    throw Error(Errc::bad_argument, "reduction level exceeds ring precision");
  const std::uint64_t q = pow_u64_checked(ring.residue_char(), level, 0xffffffffULL);
  FiniteMat out(static_cast<std::uint32_t>(q), m.dim());
  mpz_class qz(static_cast<unsigned long>(q)), r;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      mpz_mod(r.get_mpz_t(), m.at(i, j).residue().get_mpz_t(), qz.get_mpz_t());
      out.set(i, j, r.get_ui());
    }
  return out;
}

std::size_t FiniteGroup::KeyHash::operator()(unsigned __int128 k) const {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return static_cast<std::size_t>(mix(static_cast<std::uint64_t>(k) ^
                                      mix(static_cast<std::uint64_t>(k >> 64))));
}

FiniteMat FiniteGroup::element(std::size_t idx) const {
  return FiniteMat::unpack(elements_.at(idx), bits_, q_, n_);
}

bool FiniteGroup::contains(const FiniteMat& m) const {
  if (m.modulus() != q_ || m.dim() != n_) return false;
  return members_.contains(m.key(bits_));
}

std::vector<int> FiniteGroup::word_for(const FiniteMat& m) const {
  if (!has_words_)
    throw Error(Errc::bad_argument, "closure was built without word tracking");
  const auto it = position_.find(m.key(bits_));
  if (it == position_.end()) throw Error(Errc::bad_argument, "element not in the group");
  std::vector<int> codes;
  std::uint32_t idx = it->second;
  while (idx != 0) {
    codes.push_back(via_[idx]);
    idx = parent_[idx];
  }
  return codes;  // outermost factor first: left-to-right product
}

FiniteGroup group_closure(std::vector<FiniteMat> gens, const ClosureOptions& opts) {
  if (gens.empty())
    throw Error(Errc::bad_argument,
                "cannot infer modulus and dimension from an empty generator list");
  const std::uint32_t q = gens.front().modulus();
  const int n = gens.front().dim();
  return group_closure(q, n, std::move(gens), opts);
}

FiniteGroup group_closure(std::uint32_t modulus, int n, std::vector<FiniteMat> gens,
                          const ClosureOptions& opts) {
  FiniteGroup g;
  g.q_ = modulus;
  g.n_ = n;
  g.bits_ = static_cast<unsigned>(std::bit_width(modulus - 1u));
  if (g.bits_ * static_cast<unsigned>(n) * n > 128)
    throw Error(Errc::bad_argument, "modulus too large to pack elements for closure");
  for (const auto& gen : gens) {
    if (gen.modulus() != modulus || gen.dim() != n)
      throw Error(Errc::bad_argument, "generator with mismatched modulus or dimension");
    if (!gen.is_invertible())
      throw Error(Errc::non_invertible, "generators must be invertible");
  }
  g.generators_ = std::move(gens);

  std::vector<std::pair<FiniteMat, int>> multipliers;
  for (std::size_t i = 0; i < g.generators_.size(); ++i) {
    multipliers.emplace_back(g.generators_[i], static_cast<int>(i));
    FiniteMat inv = g.generators_[i].inverse();
    if (inv != g.generators_[i]) multipliers.emplace_back(std::move(inv), ~static_cast<int>(i));
  }

  const FiniteMat id = FiniteMat::identity(modulus, n);
  const auto id_key = id.key(g.bits_);
  g.members_.insert(id_key);
  g.elements_.push_back(id_key);
  g.has_words_ = opts.track_words;
  if (g.has_words_) {
    g.parent_.push_back(0);
    g.via_.push_back(0);
    g.position_.emplace(id_key, 0);
  }

  struct Pending {
    unsigned __int128 key;
    unsigned __int128 parent;
    int code;
  };

  std::vector<unsigned __int128> frontier{id_key};
  while (!frontier.empty()) {
    std::vector<Pending> found;
    for (const auto key : frontier) {
      const FiniteMat x = FiniteMat::unpack(key, g.bits_, modulus, n);
      for (const auto& [s, code] : multipliers) {
        const FiniteMat y = s * x;
        const auto yk = y.key(g.bits_);
        if (g.members_.insert(yk).second) {
          if (g.members_.size() > opts.element_cap)
            throw Error(Errc::resource_cap,
                        "closure exceeded element cap " + std::to_string(opts.element_cap));
          found.push_back(Pending{yk, key, code});
        }
      }
    }
    std::sort(found.begin(), found.end(),
              [](const Pending& a, const Pending& b) { return a.key < b.key; });
    frontier.clear();
    for (const Pending& pnd : found) {
      frontier.push_back(pnd.key);
      if (g.has_words_) {
        g.position_.emplace(pnd.key, static_cast<std::uint32_t>(g.elements_.size()));
        g.parent_.push_back(g.position_.at(pnd.parent));
        g.via_.push_back(pnd.code);
      }
      g.elements_.push_back(pnd.key);
    }
  }
  return g;
}

std::uint64_t subgroup_index(const FiniteGroup& h, const FiniteGroup& g) {
  if (h.modulus() != g.modulus() || h.dim() != g.dim())
    throw Error(Errc::subgroup_mismatch, "groups over different quotients");
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!g.contains(h.element(i)))
      throw Error(Errc::subgroup_mismatch, "subgroup element outside the ambient group");
  if (g.size() % h.size() != 0)
    throw std::logic_error("index is not integral; closure is corrupt");
  return g.size() / h.size();
}

std::uint64_t el_image_index(int n, std::uint64_t p, unsigned k, unsigned m,
                             const ClosureOptions& opts) {
  if (n < 2 || n > FiniteMat::max_dim)
    throw Error(Errc::bad_argument, "dimension must be between 2 and 4");
  if (k >= m) throw Error(Errc::bad_argument, "requires k < m");
  const std::uint64_t q = pow_u64_checked(p, m, 0xffffffffULL);
  const auto qu = static_cast<std::uint32_t>(q);

  std::vector<FiniteMat> full;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) full.push_back(FiniteMat::elementary(qu, n, i, j, 1));
  const FiniteGroup g = group_closure(qu, n, std::move(full), opts);

  const std::uint64_t pk = pow_u64_checked(p, k, 0xffffffffULL);
  const std::uint64_t range = pow_u64_checked(p, m - k, 0xffffffffULL);
  std::vector<FiniteMat> el;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        for (std::uint64_t u = 0; u < range; ++u)
          el.push_back(FiniteMat::elementary(qu, n, i, j, pk * u % q));
  const FiniteGroup h = group_closure(qu, n, std::move(el), opts);

  return subgroup_index(h, g);
}

FiniteGroup derived_subgroup(const FiniteGroup& g, const ClosureOptions& opts) {
  const std::uint32_t q = g.modulus();
  const int n = g.dim();
  const FiniteMat id = FiniteMat::identity(q, n);

  std::vector<FiniteMat> conjugators;
  for (const auto& gen : g.generators()) {
    conjugators.push_back(gen);
    FiniteMat inv = gen.inverse();
    if (inv != gen) conjugators.push_back(std::move(inv));
  }

  std::vector<FiniteMat> s;
  auto add_unique = [&](const FiniteMat& m) {
    if (m == id) return false;
    if (std::find(s.begin(), s.end(), m) != s.end()) return false;
    s.push_back(m);
    return true;
  };
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const FiniteMat c =
          gens[i] * gens[j] * gens[i].inverse() * gens[j].inverse();
      add_unique(c);
    }

  while (true) {
    FiniteGroup d = group_closure(q, n, s, opts);
    bool grew = false;
    const std::size_t snapshot = s.size();
    for (std::size_t i = 0; i < snapshot; ++i)
      for (const auto& t : conjugators) {
        const FiniteMat c = t * s[i] * t.inverse();
        if (!d.contains(c) && add_unique(c)) grew = true;
      }
    if (!grew) return d;
  }
}

namespace {

// The quotient G/D handled through canonical coset representatives: the
// lexicographically least element of x*D.
class CosetContext {
 public:
  CosetContext(const FiniteGroup& d, unsigned bits) : bits_(bits) {
    reps_.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) reps_.push_back(d.element(i));
  }

  FiniteMat canon(const FiniteMat& x) const {
    FiniteMat best = x * reps_[0];
    auto best_key = best.key(bits_);
    for (std::size_t i = 1; i < reps_.size(); ++i) {
      FiniteMat cand = x * reps_[i];
      const auto ck = cand.key(bits_);
      if (ck < best_key) {
        best = cand;
        best_key = ck;
      }
    }
    return best;
  }

  FiniteMat mul(const FiniteMat& a, const FiniteMat& b) const { return canon(a * b); }

 private:
  unsigned bits_;
  std::vector<FiniteMat> reps_;
};

struct SmithResult {
  std::vector<mpz_class> diag;                // length = columns
  std::vector<std::vector<mpz_class>> vcols;  // accumulated column transform V
};

// Smith normal form of an integer matrix with at least as many rows as
// columns, tracking the unimodular column transform.
SmithResult smith_normal_form(std::vector<std::vector<mpz_class>> m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::vector<mpz_class>> v(cols, std::vector<mpz_class>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;

  auto swap_rows = [&](std::size_t a, std::size_t b) { std::swap(m[a], m[b]); };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    for (auto& row : v) std::swap(row[a], row[b]);
  };
  auto row_sub = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t j2 = 0; j2 < cols; ++j2) m[dst][j2] -= q * m[src][j2];
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t i2 = 0; i2 < rows; ++i2) m[i2][dst] -= q * m[i2][src];
    for (std::size_t i2 = 0; i2 < cols; ++i2) v[i2][dst] -= q * v[i2][src];
  };

  const std::size_t lim = std::min(rows, cols);
  for (std::size_t t = 0; t < lim; ++t) {
    while (true) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 &&
              (pi == rows || cmp(abs(m[i][j]), abs(m[pi][pj])) < 0)) {
            pi = i;
            pj = j;
          }
      if (pi == rows) goto finished;  // trailing block is zero
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (m[i][t] != 0) {
          row_sub(i, t, m[i][t] / m[t][t]);
          if (m[i][t] != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        if (m[t][j] != 0) {
          col_sub(j, t, m[t][j] / m[t][t]);
          if (m[t][j] != 0) clean = false;
        }
      if (!clean) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (m[i][j] % m[t][t] != 0) {
            // pull the offending row up so the pivot eventually divides it
            for (std::size_t j2 = 0; j2 < cols; ++j2) m[t][j2] += m[i][j2];
            fixed = true;
          }
      if (!fixed) break;
    }
    if (m[t][t] < 0) {
      for (std::size_t i = 0; i < rows; ++i) m[i][t] = -m[i][t];
      for (std::size_t i = 0; i < cols; ++i) v[i][t] = -v[i][t];
    }
  }
finished:
  SmithResult out;
  out.diag.resize(cols, 0);
  for (std::size_t t = 0; t < lim; ++t) out.diag[t] = m[t][t];
  out.vcols = std::move(v);
  return out;
}

struct AbelianQuotient {
  std::uint64_t order = 1;
  std::vector<std::uint64_t> factors;  // ascending, > 1
  // generator coordinates per *kept* factor, aligned with factors
  std::vector<std::vector<std::uint64_t>> gen_coords;
};

AbelianQuotient abelian_quotient(const FiniteGroup& g, const ClosureOptions& opts) {
  AbelianQuotient out;
  const FiniteGroup d = derived_subgroup(g, opts);
  if (d.size() == g.size()) return out;  // perfect group
  out.order = g.size() / d.size();

  const unsigned bits = static_cast<unsigned>(std::bit_width(g.modulus() - 1u));
  const CosetContext ctx(d, bits);
  const FiniteMat id_rep = ctx.canon(FiniteMat::identity(g.modulus(), g.dim()));

  const auto& gens = g.generators();
  const std::size_t r = gens.size();
  std::vector<FiniteMat> images;
  std::vector<std::uint64_t> orders;
  for (const auto& gen : gens) {
    FiniteMat img = ctx.canon(gen);
    std::uint64_t ord = 1;
    FiniteMat acc = img;
    while (acc != id_rep) {
      acc = ctx.mul(acc, img);
      ++ord;
      if (ord > out.order) throw std::logic_error("coset order exceeds quotient order");
    }
    images.push_back(std::move(img));
    orders.push_back(ord);
  }

  // Relation lattice of the generator images: the diagonal order relations
  // plus every in-box tuple multiplying to the identity coset.
  std::vector<std::vector<mpz_class>> relations;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<mpz_class> row(r, 0);
    row[i] = static_cast<unsigned long>(orders[i]);
    relations.push_back(std::move(row));
  }
  std::vector<std::uint64_t> tuple(r, 0);
  std::function<void(std::size_t, const FiniteMat&)> enumerate =
      [&](std::size_t i, const FiniteMat& acc) {
        if (i == r) {
          const bool all_zero = std::all_of(tuple.begin(), tuple.end(),
                                            [](std::uint64_t a) { return a == 0; });
          if (!all_zero && acc == id_rep) {
            std::vector<mpz_class> row(r);
            for (std::size_t l = 0; l < r; ++l) row[l] = static_cast<unsigned long>(tuple[l]);
            relations.push_back(std::move(row));
          }
          return;
        }
        FiniteMat cur = acc;
        for (std::uint64_t a = 0; a < orders[i]; ++a) {
          tuple[i] = a;
          enumerate(i + 1, cur);
          if (a + 1 < orders[i]) cur = ctx.mul(cur, images[i]);
        }
        tuple[i] = 0;
      };
  enumerate(0, id_rep);

  SmithResult snf = smith_normal_form(std::move(relations), r);
  mpz_class total = 1;
  for (const auto& s : snf.diag) total *= s;
  if (total != static_cast<unsigned long>(out.order))
    throw std::logic_error("invariant factor product disagrees with quotient order");

  for (std::size_t j = 0; j < r; ++j) {
    if (snf.diag[j] <= 1) continue;
    const std::uint64_t s = static_cast<std::uint64_t>(snf.diag[j].get_ui());
    out.factors.push_back(s);
    std::vector<std::uint64_t> coords;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class c = snf.vcols[i][j] % static_cast<long>(s);
      if (c < 0) c += static_cast<long>(s);
      coords.push_back(c.get_ui());
    }
    out.gen_coords.push_back(std::move(coords));
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> abelianization(const FiniteGroup& g, const ClosureOptions& opts) {
  return abelian_quotient(g, opts).factors;
}

std::uint64_t sl_order_formula(int n, std::uint64_t p, unsigned m) {
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class pn;
  mpz_pow_ui(pn.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_class order = 1;
  mpz_class pi = 1;
  for (int i = 0; i < n; ++i) {
    order *= pn - pi;
    pi *= pz;
  }
  order /= pz - 1;
  mpz_class level;
  mpz_pow_ui(level.get_mpz_t(), pz.get_mpz_t(),
             static_cast<unsigned long>(m - 1) * (static_cast<unsigned long>(n) * n - 1));
  order *= level;
  if (!order.fits_ulong_p())
    throw Error(Errc::bad_argument, "order exceeds 64 bits");
  return order.get_ui();
}

RepDescription nontrivial_rep(std::uint64_t p, unsigned target_dim, const ClosureOptions& opts) {
  if (p != 2 && p != 3)
    throw Error(Errc::bad_argument, "construction applies to p = 2 and p = 3 only");
  if (target_dim < 2) throw Error(Errc::bad_argument, "target dimension must be at least 2");
  const unsigned k = (p == 2) ? 3 : 1;
  const std::uint64_t q = pow_u64_checked(p, 2 * k, 0xffffffffULL);
  const auto qu = static_cast<std::uint32_t>(q);

  std::vector<FiniteMat> gens{FiniteMat::elementary(qu, 2, 1, 2, 1),
                              FiniteMat::elementary(qu, 2, 2, 1, 1)};
  const FiniteGroup g = group_closure(qu, 2, gens, opts);
  const AbelianQuotient quot = abelian_quotient(g, opts);
  if (quot.factors.empty())
    throw Error(Errc::abelianization_trivial,
                "abelianization is trivial; no cyclic factor to rotate through");

  RepDescription rep;
  rep.p = p;
  rep.k = k;
  rep.cyclic_order = quot.factors.back();
  rep.target_dim = target_dim;
  const auto& coords = quot.gen_coords.back();
  for (std::size_t i = 0; i < gens.size(); ++i)
    rep.generator_images.push_back(RepDescription::GeneratorImage{gens[i], coords[i]});
  return rep;
}

bool rep_kills_word(const RepDescription& rep, std::span<const int> word) {
  const std::uint64_t c = rep.cyclic_order;
  std::uint64_t sum = 0;
  for (const int code : word) {
    const std::size_t idx = static_cast<std::size_t>(code >= 0 ? code : ~code);
    if (idx >= rep.generator_images.size())
      throw Error(Errc::bad_argument, "word references an unknown generator");
    const std::uint64_t a = rep.generator_images[idx].angle_multiple % c;
    sum = (sum + (code >= 0 ? a : c - a)) % c;
  }
  return sum == 0;
}

std::vector<std::vector<double>> rotation_block_display(const RepDescription& rep,
                                                        std::uint64_t multiple) {
  const unsigned d = rep.target_dim;
  std::vector<std::vector<double>> m(d, std::vector<double>(d, 0.0));
  for (unsigned i = 0; i < d; ++i) m[i][i] = 1.0;
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(multiple % rep.cyclic_order) /
                       static_cast<double>(rep.cyclic_order);
  m[0][0] = std::cos(theta);
  m[0][1] = -std::sin(theta);
  m[1][0] = std::sin(theta);
  m[1][1] = std::cos(theta);
  return m;
}

}  // namespace slocal
