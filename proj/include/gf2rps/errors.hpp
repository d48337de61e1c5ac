#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gf2rps {

// Every precondition or validation failure in the library throws Error.
// The code tells callers (and the CLI exit-code mapping) what went wrong;
// index_a/index_b carry the offending positions where that makes sense
// (e.g. which pair of moduli failed the coprimality check).
enum class Errc {
    division_by_zero,
    both_zero,
    not_invertible,
    invalid_modulus,
    too_few_moduli,
    degree_zero_modulus,
    not_coprime,
    partial_vector,
    partial_input,
    bad_plan,
    empty_known_set,
    degree_overflow,
    degree_too_large,
    condition_violated,
    swap_condition_violated,
    index_product_mismatch,
    even_n,
    bad_argument,
    parse_error,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what, std::int64_t a = -1, std::int64_t b = -1)
        : std::runtime_error(what), code_(code), a_(a), b_(b) {}

    Errc code() const noexcept { return code_; }
    std::int64_t index_a() const noexcept { return a_; }
    std::int64_t index_b() const noexcept { return b_; }

  private:
    Errc code_;
    std::int64_t a_;
    std::int64_t b_;
};

} // namespace gf2rps
