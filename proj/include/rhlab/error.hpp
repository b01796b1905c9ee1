#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rhlab {

enum class ErrorCode {
    InvalidArgument,   // bad parameter value (exponent out of range, empty domain, ...)
    InvalidSpec,       // malformed generator descriptor
    NonPositiveValue,  // nonpositive value in a generator descriptor
    NotIntegrable,     // pow:a with a <= -1
    CubeOutOfRange,    // cube address outside the grid
    OverlappingCubes,  // packing cubes are not pairwise disjoint
    DuplicateCube,     // repeated cube in a custom family
    HeaderMismatch,    // file header missing or inconsistent with the request
    CellCountMismatch, // wrong number of cells for the declared d, L
    NonPositiveCell,   // a stored cell is <= 0
    ParseFailure,      // a value could not be parsed
    IoFailure,         // file could not be opened / written
    DivergentIntegral, // integral does not converge (e.g. phi(0+) > 0 in a Hardy integral)
    Precondition,      // documented precondition of an operation failed
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // True for errors raised while reading weight files.
    bool is_io() const noexcept {
        switch (code_) {
        case ErrorCode::HeaderMismatch:
        case ErrorCode::CellCountMismatch:
        case ErrorCode::NonPositiveCell:
        case ErrorCode::ParseFailure:
        case ErrorCode::IoFailure:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorCode code_;
};

}  // namespace rhlab
