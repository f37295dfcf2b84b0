#pragma once

#include <stdexcept>
#include <string>

namespace mubgeo {

enum class Errc {
    not_prime,
    is_two,
    out_of_range,
    zero_division,
    modulus_mismatch,
    dimension_mismatch,
    index_out_of_range,
    same_column,
    computational_basis,
    not_normalized,
    overflow,
    not_representable,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mubgeo
