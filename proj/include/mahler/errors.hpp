#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mahler {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Invalid equation or document content (bad q, zero a_0, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

class InconsistentSeeds : public Error {
public:
    using Error::Error;
};

class Underdetermined : public Error {
public:
    Underdetermined(const std::string& what, std::size_t missing)
        : Error(what), missing_(missing) {}
    /// Number of additional seed values needed to pin the initial block.
    std::size_t missing() const noexcept { return missing_; }

private:
    std::size_t missing_;
};

class PointOutOfRange : public Error {
public:
    using Error::Error;
};

class MixedBase : public Error {
public:
    using Error::Error;
};

class ClearingFailure : public Error {
public:
    using Error::Error;
};

class InsufficientTruncation : public Error {
public:
    using Error::Error;
};

class NotRegular : public Error {
public:
    NotRegular(const std::string& what, long failure_k) : Error(what), k_(failure_k) {}
    long failure_k() const noexcept { return k_; }

private:
    long k_;
};

class TailDiverges : public Error {
public:
    using Error::Error;
};

class DeclaredBoundViolated : public Error {
public:
    DeclaredBoundViolated(const std::string& what, std::size_t index) : Error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class BetaNotContracting : public Error {
public:
    using Error::Error;
};

class ZeroForm : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace mahler
