// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace outage_lab {

/// Quadrature or root-finding did not reach the requested tolerance.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what), achieved_tolerance_(achieved_tolerance) {}
    double achieved_tolerance() const noexcept { return achieved_tolerance_; }

private:
    double achieved_tolerance_;
};

/// Input is outside the regime a formula is valid in (e.g. rate above the
/// ergodic capacity for the low-rate exponent machinery).
class regime_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Product-tail order above the configured recursion depth limit.
class unsupported_order_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace outage_lab
