#pragma once

// Independent reference computations used to freeze expected values.  These
// deliberately avoid the library code paths they are checking against.

#include <cstdint>
#include <set>
#include <vector>

#include "slocal/matgroup.hpp"

namespace oracles {

/// Inverse of a mod m via extended Euclid; 0 when none exists.
std::uint64_t exgcd_inverse(std::uint64_t a, std::uint64_t m);

/// Closure of the generators under addition mod `mod`, by worklist.
std::set<std::uint64_t> additive_closure(const std::vector<std::uint64_t>& gens,
                                         std::uint64_t mod);

/// All roots of the polynomial (coefficients lowest first) mod `mod` lying
/// in the residue class `base` mod `stride`.
std::vector<std::uint64_t> polynomial_roots(const std::vector<std::uint64_t>& coeffs,
                                            std::uint64_t mod, std::uint64_t base,
                                            std::uint64_t stride);

/// Number of 2x2 matrices over Z/q with determinant 1, by full enumeration.
std::uint64_t count_sl2_elements(std::uint64_t q);

/// Determinant by cofactor expansion: division-free, independent of the
/// elimination-based implementation.
slocal::RingElem cofactor_det(const slocal::RMatrix& m);

}  // namespace oracles
