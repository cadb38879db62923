#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ccqsim {

using Complex = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Error taxonomy maps onto CLI exit codes: ConfigError -> 1,
// NumericalError -> 2, IoError -> 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-fatal advisories (bad-cavity ratio, perturbative drive guard) go to
// stderr so batch runs keep a record without aborting.
void warn(const std::string& msg);

}  // namespace ccqsim
