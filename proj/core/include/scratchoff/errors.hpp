#pragma once

#include <stdexcept>
#include <string>

namespace scratchoff {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numeric argument violates a declared precondition or range.
class InvalidParameter : public Error {
    using Error::Error;
};

// puzzle math ---------------------------------------------------------------

/// zeta_paper_literal only supports the single-success expansion.
class UnsupportedOrder : public Error {
    using Error::Error;
};

/// Exhaustive enumeration requested beyond the feasible trial count.
class TooLarge : public Error {
    using Error::Error;
};

// hash puzzle ---------------------------------------------------------------

class DifficultyOutOfRange : public Error {
    using Error::Error;
};

// validator set / betting rounds --------------------------------------------

class CapExceeded : public Error {
    using Error::Error;
};

class AlreadyBonded : public Error {
    using Error::Error;
};

class NotBonded : public Error {
    using Error::Error;
};

class InsufficientDeposit : public Error {
    using Error::Error;
};

class OverStake : public Error {
    using Error::Error;
};

class UnknownNode : public Error {
    using Error::Error;
};

class RoundClosed : public Error {
    using Error::Error;
};

class NotEnoughNodes : public Error {
    using Error::Error;
};

class NodeNotInS : public Error {
    using Error::Error;
};

class NoNodes : public Error {
    using Error::Error;
};

// adversary games -----------------------------------------------------------

/// A claimed ticket reuses a (puz, m) pair the adversary obtained from the
/// Work oracle; the claim is disqualified.
class TranscriptViolation : public Error {
    using Error::Error;
};

// configuration -------------------------------------------------------------

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class UnknownKey : public Error {
    using Error::Error;
};

class RangeError : public Error {
    using Error::Error;
};

} // namespace scratchoff
