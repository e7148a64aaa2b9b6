#pragma once

#include <stdexcept>
#include <string>

namespace lindisk {

// Exit codes used by the command-line driver:
//   0 success, 1 verification failure, 2 precision exhausted,
//   3 parse/config error, 4 hypothesis/guard violation, 5 truncation too short.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg, 3) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg, 3) {}
};

class FieldMismatch : public Error {
public:
    explicit FieldMismatch(const std::string& msg) : Error("field mismatch: " + msg, 3) {}
};

class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& msg)
        : Error("precision exhausted: " + msg, 2) {}
};

class DivisionByUncertifiedZero : public Error {
public:
    explicit DivisionByUncertifiedZero(const std::string& msg)
        : Error("division by (uncertified) zero: " + msg, 2) {}
};

class IndistinguishableFromRootOfUnity : public Error {
public:
    explicit IndistinguishableFromRootOfUnity(const std::string& msg)
        : Error("multiplier indistinguishable from a root of unity: " + msg, 4) {}
};

class UnsupportedResidueOrder : public Error {
public:
    explicit UnsupportedResidueOrder(const std::string& msg)
        : Error("unsupported residue order: " + msg, 4) {}
};

class HypothesisViolated : public Error {
public:
    explicit HypothesisViolated(const std::string& msg)
        : Error("hypothesis violated: " + msg, 4) {}
};

class OutsideConvergenceCertificate : public Error {
public:
    explicit OutsideConvergenceCertificate(const std::string& msg)
        : Error("outside convergence certificate: " + msg, 4) {}
};

class UnsupportedDegree : public Error {
public:
    explicit UnsupportedDegree(const std::string& msg)
        : Error("unsupported degree: " + msg, 4) {}
};

class TruncationTooShort : public Error {
public:
    explicit TruncationTooShort(const std::string& msg)
        : Error("truncation too short: " + msg, 5) {}
};

} // namespace lindisk
