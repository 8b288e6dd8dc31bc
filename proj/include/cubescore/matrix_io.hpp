#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cubescore/matrix.hpp"

namespace cubescore {

// Text format: first line "rows cols", then `rows` lines of `cols`
// whitespace-separated decimals. Blank lines and lines starting with '#'
// are ignored. Values are written with 17 significant digits so a
// save/load round trip is bit-exact.

DenseMatrix read_matrix(std::istream& in);
void write_matrix(const DenseMatrix& m, std::ostream& out);

DenseMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const DenseMatrix& m, const std::filesystem::path& path);

DenseMatrix parse_matrix(const std::string& text);
std::string format_matrix(const DenseMatrix& m);

}  // namespace cubescore
