#pragma once

#include <stdexcept>
#include <string>

namespace slocal {

/// Classified failure conditions raised by the library.
enum class Errc {
  bad_argument,
  ring_mismatch,
  non_unit,
  non_invertible,
  not_sl,
  precision_loss,
  hypothesis_failed,
  no_convergence,
  characteristic_mismatch,
  residue_field_too_small,
  resource_cap,
  abelianization_trivial,
  non_unipotent,
  stalled_flag,
  subgroup_mismatch,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace slocal
