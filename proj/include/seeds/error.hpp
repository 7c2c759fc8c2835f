#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace seeds {

enum class ErrorCode {
    MissingLabel,
    EmptyData,
    InvalidArgument,
    NonpositiveBandwidth,
    DegenerateSample,
    DimensionMismatch,
    InsufficientAtRisk,
    InsufficientKernelMass,
    NoAtRisk,
    NoUnlabeledAtRisk,
    SolverDiverged,
    SingularAfterRidge,
    AllComponentsAbsent,
    ParseError,
    InvariantViolation,
    IoError,
    ConfigError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonpositiveBandwidth: return "NonpositiveBandwidth";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InsufficientAtRisk: return "InsufficientAtRisk";
    case ErrorCode::InsufficientKernelMass: return "InsufficientKernelMass";
    case ErrorCode::NoAtRisk: return "NoAtRisk";
    case ErrorCode::NoUnlabeledAtRisk: return "NoUnlabeledAtRisk";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::SingularAfterRidge: return "SingularAfterRidge";
    case ErrorCode::AllComponentsAbsent: return "AllComponentsAbsent";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Malformed input file; line and column are 1-based, line 1 is the header.
class ParseFailure : public Error {
public:
    ParseFailure(std::string file, long line, long column, std::string reason)
        : Error(ErrorCode::ParseError, file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + reason),
          file_(std::move(file)), line_(line), column_(column), reason_(std::move(reason))
    {
    }

    const std::string& file() const noexcept { return file_; }
    long line() const noexcept { return line_; }
    long column() const noexcept { return column_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string file_;
    long line_;
    long column_;
    std::string reason_;
};

// A record breaks a model invariant. `row` is the 1-based data row of the
// input file when the record came from one, else 0.
class InvariantFailure : public Error {
public:
    InvariantFailure(std::string rule, const std::string& what, long row = 0)
        : Error(ErrorCode::InvariantViolation, what), rule_(std::move(rule)), row_(row)
    {
    }

    const std::string& rule() const noexcept { return rule_; }
    long row() const noexcept { return row_; }

private:
    std::string rule_;
    long row_;
};

} // namespace seeds
