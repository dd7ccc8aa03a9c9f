#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "slocal/matgroup.hpp"

namespace slocal {

/// Matrix over Z/q with q = p^m, canonical residues in [0, q).  Dimension is
/// limited to 4, which keeps a matrix packable into a 128-bit key for the
/// closure hash set.
class FiniteMat {
 public:
  static constexpr int max_dim = 4;

  FiniteMat(std::uint32_t modulus, int n);  ///< zero matrix
  static FiniteMat identity(std::uint32_t modulus, int n);
  static FiniteMat elementary(std::uint32_t modulus, int n, int i, int j, std::uint64_t x);

  std::uint32_t modulus() const { return q_; }
  int dim() const { return n_; }

  std::uint32_t at(int r, int c) const { return e_[static_cast<std::size_t>(r) * n_ + c]; }
  void set(int r, int c, std::uint64_t v);

  FiniteMat operator*(const FiniteMat& o) const;
  bool operator==(const FiniteMat& o) const;
  bool operator!=(const FiniteMat& o) const { return !(*this == o); }

  std::uint32_t det() const;
  bool is_invertible() const;
  FiniteMat inverse() const;  ///< adjugate / det; throws Errc::non_invertible

  /// Entry-major packing; numeric order of keys equals row-major
  /// lexicographic order of entries.
  unsigned __int128 key(unsigned bits_per_entry) const;
  static FiniteMat unpack(unsigned __int128 key, unsigned bits_per_entry, std::uint32_t modulus,
                          int n);

 private:
  std::uint32_t q_;
  int n_;
  std::uint32_t e_[max_dim * max_dim];
};

/// Entry-wise reduction of a characteristic-zero matrix modulo p^m;
/// requires m <= ring precision.
FiniteMat project(const RMatrix& m, unsigned level);

struct ClosureOptions {
  std::size_t element_cap = std::size_t(1) << 22;
  bool track_words = false;  ///< record one generator word per element
};

/// Finite matrix group produced by breadth-first closure.  Elements are
/// enumerated deterministically: BFS layer by layer, lexicographically
/// within each layer.  Immutable once built.
class FiniteGroup {
 public:
  std::size_t size() const { return elements_.size(); }
  std::uint32_t modulus() const { return q_; }
  int dim() const { return n_; }
  const std::vector<FiniteMat>& generators() const { return generators_; }

  FiniteMat element(std::size_t idx) const;
  bool contains(const FiniteMat& m) const;

  /// Word over the generators (letters: index g >= 0 means generators()[g],
  /// ~g means its inverse) whose left-to-right product is the element.
  /// Requires track_words at closure time.
  std::vector<int> word_for(const FiniteMat& m) const;

 private:
  friend FiniteGroup group_closure(std::uint32_t, int, std::vector<FiniteMat>,
                                   const ClosureOptions&);
  std::uint32_t q_ = 0;
  int n_ = 0;
  unsigned bits_ = 0;
  std::vector<FiniteMat> generators_;
  std::vector<unsigned __int128> elements_;  // BFS order
  struct KeyHash {
    std::size_t operator()(unsigned __int128 k) const;
  };
  std::unordered_set<unsigned __int128, KeyHash> members_;
  // parallel to elements_, valid when words were tracked:
  bool has_words_ = false;
  std::vector<std::uint32_t> parent_;
  std::vector<int> via_;
  std::unordered_map<unsigned __int128, std::uint32_t, KeyHash> position_;
};

/// Breadth-first closure of the generators under left multiplication by
/// generators and their inverses.  Throws Errc::resource_cap when the
/// element cap is exceeded.
FiniteGroup group_closure(std::vector<FiniteMat> gens, const ClosureOptions& opts = {});
/// As above with explicit context, allowing an empty generator list (the
/// trivial group).
FiniteGroup group_closure(std::uint32_t modulus, int n, std::vector<FiniteMat> gens,
                          const ClosureOptions& opts = {});

/// |G| / |H| with exact divisibility; throws Errc::subgroup_mismatch when H
/// is not contained in G.
std::uint64_t subgroup_index(const FiniteGroup& h, const FiniteGroup& g);

/// Index of the subgroup generated by all E_{i,j}(p^k u), u over Z/p^(m-k),
/// inside SL_n(Z/p^m).  Equals 1 for k = 0.
std::uint64_t el_image_index(int n, std::uint64_t p, unsigned k, unsigned m,
                             const ClosureOptions& opts = {});

/// Normal closure of the commutators of generator pairs.
FiniteGroup derived_subgroup(const FiniteGroup& g, const ClosureOptions& opts = {});

/// Invariant factors of G / [G, G], ascending divisibility chain, trivial
/// factors omitted (an empty result means the group is perfect).
std::vector<std::uint64_t> abelianization(const FiniteGroup& g, const ClosureOptions& opts = {});

/// |SL_n(Z/p^m)| by the standard order formula; used as a cross-check
/// against enumeration, never as its replacement.
std::uint64_t sl_order_formula(int n, std::uint64_t p, unsigned m);

/// Homomorphism from the SL_2 generators E12(1), E21(1) onto a cyclic group
/// of rotations: each generator maps to the D x D block-diagonal matrix
/// rotating the leading plane by 2*pi*angle_multiple/cyclic_order.  Angles
/// are exact integers; no floating point is stored.
struct RepDescription {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t cyclic_order = 0;
  unsigned target_dim = 0;
  struct GeneratorImage {
    FiniteMat generator;
    std::uint64_t angle_multiple;
  };
  std::vector<GeneratorImage> generator_images;
};

/// Nontrivial rotation representation for p in {2, 3}, built from the
/// abelianization of SL_2(Z/p^(2k)) with k = 3 for p = 2 and k = 1 for
/// p = 3.  Throws Errc::bad_argument for other p and
/// Errc::abelianization_trivial if no cyclic factor exists (which would
/// contradict the construction).
RepDescription nontrivial_rep(std::uint64_t p, unsigned target_dim,
                              const ClosureOptions& opts = {});

/// Exact check that a relator word (encoded as in FiniteGroup::word_for)
/// maps to the identity rotation: the signed angle sum vanishes mod c.
bool rep_kills_word(const RepDescription& rep, std::span<const int> word);

/// Display-only float rendering of the rotation block for a given angle
/// multiple.
std::vector<std::vector<double>> rotation_block_display(const RepDescription& rep,
                                                        std::uint64_t multiple);

}  // namespace slocal
