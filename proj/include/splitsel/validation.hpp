#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitsel/complexity.hpp"

namespace splitsel {

struct CalibrationRow
{
    std::string function; // reference row name
    std::string algorithm;
    std::int64_t expected = 0;
    std::int64_t actual = 0;
    bool ok = false;
};

struct ValidationReport
{
    std::vector<CalibrationRow> rows; // nine rows, FFT/IFFT combined
    bool all_ok = false;

    std::string to_text() const;
};

/// Compares op counts at the default cell against the reference per-execution
/// counts, and renders the FH boundary table and TDD duty cycles.
ValidationReport validate_model(const OpCountTable& table = OpCountTable::defaults());

} // namespace splitsel
