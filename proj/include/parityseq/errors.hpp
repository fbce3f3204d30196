#pragma once

#include <stdexcept>
#include <string>

namespace parityseq {

/// A stated hypothesis of an identity, congruence, or transform does not
/// hold for the given inputs (wrong parity, wrong residue class, composite
/// modulus, missing table entry, ...).  Distinct from a refuted statement:
/// a hypothesis error means "not applicable", never "false".
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity that must be p-integral is not (its denominator is divisible
/// by p), so reduction mod p^k is undefined.
class valuation_error : public std::runtime_error {
public:
    explicit valuation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace parityseq
