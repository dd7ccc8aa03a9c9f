#pragma once

#include <nlohmann/json.hpp>

#include <random>
#include <span>
#include <string>
#include <vector>

#include "slocal/congruence.hpp"
#include "slocal/flags.hpp"
#include "slocal/hensel.hpp"
#include "slocal/matgroup.hpp"

namespace slocal::verify {

struct Options {
  std::uint64_t seed = 20260809;
  std::size_t element_cap = std::size_t(1) << 22;
  std::string golden_path;     ///< empty: use the built-in pinned values
  bool enforce_runtime = true; ///< fail a criterion that overruns its budget
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  ///< 0 when no budget applies
};

/// Runs the whole lemma-check suite (criteria 1-10) and reports per-criterion
/// outcomes; nothing throws, failures are captured in the results.
std::vector<CriterionResult> run_all(const Options& opts = {});
bool all_passed(std::span<const CriterionResult> results);

struct IdentitySuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
};

/// The exact matrix identities, each over `instances` random inputs.
std::vector<IdentitySuiteResult> run_identity_suite(std::uint64_t seed, std::size_t instances);

// Deterministic samplers shared by the suite and the CLI.
RingElem random_element(const Ring& ring, std::mt19937_64& rng);
RingElem random_unit(const Ring& ring, std::mt19937_64& rng);
/// Random SL_n element as a product of random elementary letters.
RMatrix random_sl(const Ring& ring, int n, std::mt19937_64& rng, int letters = 0);
/// Random SL_2 element drawn entry-wise; covers both unit and non-unit
/// (1,1) corners.
RMatrix random_sl2_entrywise(const Ring& ring, std::mt19937_64& rng);

struct GoldenEntry {
  nlohmann::json query;
  std::uint64_t value = 0;
  std::string oracle;
};

std::vector<GoldenEntry> builtin_el_index_golden();
std::vector<GoldenEntry> load_golden(const std::string& path);
void write_golden(const std::string& path, std::span<const GoldenEntry> entries);
/// Recomputes the pinned indices through group_closure/subgroup_index
/// directly (the enumeration oracle), bypassing el_image_index.
std::vector<GoldenEntry> compute_el_index_golden(std::size_t element_cap);

}  // namespace slocal::verify
