#pragma once

#include <stdexcept>
#include <string>

namespace gmmp {

// Input that fails structural validation (ring mismatch, twist mismatch,
// inhomogeneous element, bad fixture, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken internal invariant (a Massey value failing the cocycle test,
// a basis-property violation in the local tower, ...). These indicate a bug,
// not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

inline void require_internal(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

} // namespace gmmp
