#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bezred/matrix.hpp"

namespace bezred {

/// Ground-truth property report for a finite ring, computed by exhaustive
/// enumeration over index tables only — none of the library's gcd, division,
/// witness or reduction routines are used, so the report can stand as an
/// independent check against them.
struct PropertyReport {
    std::string ring;
    bool bezout = false;        // every ideal (a, b) is principal
    bool hermite = false;       // every (a, b) = c * (a1, b1) with (a1, b1) unimodular
    bool sr1 = false;           // every unimodular (a, b) has a + b*y a unit
    bool all_adequate = false;  // every c admits an adequate pair against every a
    bool clean = false;         // every x = idempotent + unit
    bool edr_2x2 = false;       // every 2x2 matrix is equivalent to a chained diagonal
    std::optional<std::string> bezout_counterexample;
    std::optional<std::string> hermite_counterexample;
    std::optional<std::string> sr1_counterexample;
    std::optional<std::string> all_adequate_counterexample;
    std::optional<std::string> clean_counterexample;
    std::optional<std::string> edr_2x2_counterexample;
};

/// Exhaustive report for a finite ring of at most min(max_size, 64) elements.
PropertyReport ring_property_report(const RingPtr& ring, long long max_size = 64);

struct ElementChecks {
    bool is_clean = false;    // x = e + u with e idempotent, u a unit
    bool is_regular = false;  // some y has x*y*x = x
};
ElementChecks element_checks(const Elem& x, long long max_size = 64);

/// d_1, ..., d_r over Z or GF(p)[x]: d_k is the canonical gcd (nonnegative,
/// respectively monic) of all k x k minors, computed with local integer and
/// polynomial arithmetic only.
std::vector<Elem> determinantal_divisors(const Matrix& a);

struct CrossValidation {
    bool pass = true;
    long long checked = 0;
    std::string failure;  // first failure, empty when pass
};

/// Finite rings: reduce and verify every 2x2 matrix. Z: reduce seeded random
/// matrices and compare the diagonal against determinantal-divisor quotients.
CrossValidation cross_validate_reduction(const RingPtr& ring, long long max_size = 64);

}  // namespace bezred
