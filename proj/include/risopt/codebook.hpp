#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "risopt/types.hpp"

namespace risopt {

// Prototype-style 0/1 control matrix for 1-bit configurations. Bit 1 maps to
// phase 0 and bit 0 to phase pi (diode conduction/blocking); cells are laid
// out row-major.
struct CodebookGrid {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> bits;  // row-major, values 0 or 1

    bool operator==(const CodebookGrid& o) const {
        return rows == o.rows && cols == o.cols && bits == o.bits;
    }
};

// Requires a 1-bit scheme and rows*cols == N.
CodebookGrid to_codebook(const PhaseConfig& cfg, int rows, int cols);

PhaseConfig from_codebook(const CodebookGrid& grid);

// Text format: one line per row, '0'/'1' separated by single spaces.
void write_codebook(const CodebookGrid& grid, std::ostream& out);
void write_codebook_file(const CodebookGrid& grid, const std::string& path);

CodebookGrid read_codebook(std::istream& in);
CodebookGrid read_codebook_file(const std::string& path);

}  // namespace risopt
