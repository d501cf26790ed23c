#pragma once

#include <cstdint>

namespace supertrace {

// Z/2 degree of a homogeneous element: even = bosonic, odd = fermionic.
enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return Parity((static_cast<int>(a) + static_cast<int>(b)) & 1);
}

inline int sign_of_swap(Parity a, Parity b) {
    return (a == Parity::odd && b == Parity::odd) ? -1 : 1;
}

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

}  // namespace supertrace
