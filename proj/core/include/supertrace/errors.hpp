#pragma once

#include <stdexcept>
#include <string>

namespace supertrace {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegistryMismatch : Error { using Error::Error; };
struct LabelReused : Error { using Error::Error; };
struct NonHomogeneous : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct ParityMismatch : Error { using Error::Error; };
struct BadArity : Error { using Error::Error; };
struct NotMultilinear : Error { using Error::Error; };
struct NotHomogeneous : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace supertrace
