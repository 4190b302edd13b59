#pragma once

#include <stdexcept>
#include <string>

namespace lrens {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPermutationTarget final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct NonFiniteFeature final : Error { using Error::Error; };
struct DegenerateRanking final : Error { using Error::Error; };
struct EmptyDataset final : Error { using Error::Error; };
struct AllZeroLoss final : Error { using Error::Error; };
struct NoUsableModel final : Error { using Error::Error; };
struct OutOfRange final : Error { using Error::Error; };
struct TooFewInstances final : Error { using Error::Error; };
struct DegenerateTable final : Error { using Error::Error; };
struct BaselineNearZero final : Error { using Error::Error; };

// Parse failures carry the 1-based file location they were detected at.
struct ParseError final : Error {
    ParseError(std::string message, int row = 0, int col = 0)
        : Error(location_prefix(row, col) + message), row(row), col(col) {}

    int row = 0;
    int col = 0;

private:
    static std::string location_prefix(int row, int col) {
        if (row <= 0) return "";
        std::string p = "row " + std::to_string(row);
        if (col > 0) p += ", col " + std::to_string(col);
        return p + ": ";
    }
};

}  // namespace lrens
