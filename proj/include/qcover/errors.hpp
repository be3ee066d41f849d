#pragma once

#include <stdexcept>
#include <string>

namespace qcover {

/// Machine-distinguishable failure categories. The CLI maps these to exit
/// codes: size_gate -> 3, everything else -> 2.
enum class errc {
    not_prime_power,
    division_by_zero,
    mismatch,      // incompatible field/ambient between operands
    range,         // argument outside the documented domain
    empty_family,
    infeasible,    // parameter combination admits no object
    size_gate,     // instance exceeds the configured desk-scale limit
    parse,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace qcover
