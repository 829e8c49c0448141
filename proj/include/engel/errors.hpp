#pragma once

#include <stdexcept>
#include <string>

namespace engel {

// Stable machine-readable codes; the CLI maps these to error JSON on stderr.
enum class ErrorCode {
    NotSolvedForm,
    DegenerateComplement,
    DegreeCapExceeded,
    NotEngelPoint,
    WellDefinednessViolated,
    NotOnZeroSet,
    NotTransverse,
    PathTouchesC,
    WrongLinkCount,
    CycleMeetsC,
    NonTransverseIntersection,
    NewtonDiverged,
    PresentationMismatch,
    DegreeMismatch,
    UnknownEntry,
    BadModulus,
    DegenerateMetric,
    SyntaxError,
    SemanticError,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

// Parse errors carry a source location (1-based line/column).
class ParseError : public Error {
  public:
    ParseError(ErrorCode code, const std::string& message, int line, int col)
        : Error(code, message + " at line " + std::to_string(line) + ", col " + std::to_string(col)),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

  private:
    int line_;
    int col_;
};

} // namespace engel
