#include "risopt/codebook.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace risopt {

CodebookGrid to_codebook(const PhaseConfig& cfg, int rows, int cols) {
    if (cfg.scheme().bits() != 1)
        throw DomainError("codebook export supports only 1-bit schemes, got " +
                          std::to_string(cfg.scheme().bits()) + " bits");
    if (rows < 1 || cols < 1 ||
        static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != cfg.size())
        throw GeometryError("grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " does not match " + std::to_string(cfg.size()) + " cells");
    CodebookGrid grid{rows, cols, {}};
    grid.bits.reserve(cfg.size());
    for (int k : cfg.indices()) grid.bits.push_back(k == 0 ? 1 : 0);  // phase 0 -> bit 1
    return grid;
}

PhaseConfig from_codebook(const CodebookGrid& grid) {
    if (grid.rows < 1 || grid.cols < 1 ||
        grid.bits.size() !=
            static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols))
        throw GeometryError("codebook grid shape does not match its bit count");
    std::vector<int> idx(grid.bits.size());
    for (std::size_t i = 0; i < grid.bits.size(); ++i) idx[i] = grid.bits[i] ? 0 : 1;
    return PhaseConfig(QuantizationScheme(1), std::move(idx));
}

void write_codebook(const CodebookGrid& grid, std::ostream& out) {
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            if (c) out << ' ';
            out << static_cast<int>(grid.bits[static_cast<std::size_t>(r) * grid.cols + c]);
        }
        out << '\n';
    }
}

void write_codebook_file(const CodebookGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_codebook(grid, out);
}

CodebookGrid read_codebook(std::istream& in) {
    CodebookGrid grid;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        int cols = 0;
        while (ls >> tok) {
            if (tok != "0" && tok != "1")
                throw ParseError("expected 0 or 1, got \"" + tok + "\"", line_no);
            grid.bits.push_back(tok == "1" ? 1 : 0);
            ++cols;
        }
        if (grid.rows == 0) {
            grid.cols = cols;
        } else if (cols != grid.cols) {
            throw ParseError("row has " + std::to_string(cols) + " entries, expected " +
                                 std::to_string(grid.cols),
                             line_no);
        }
        ++grid.rows;
    }
    if (grid.rows == 0) throw ParseError("codebook file is empty");
    return grid;
}

CodebookGrid read_codebook_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_codebook(in);
}

}  // namespace risopt
