#include "cubescore/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "cubescore/errors.hpp"

namespace cubescore {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

double parse_real(const Token& tok, std::size_t line) {
  std::string_view s = tok.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError("expected a finite decimal, got '" + std::string(tok.text) + "'", line, tok.column);
  }
  return value;
}

std::size_t parse_count(const Token& tok, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || value == 0) {
    throw ParseError("expected a positive dimension, got '" + std::string(tok.text) + "'", line, tok.column);
  }
  return value;
}

}  // namespace

DenseMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> dims;
  std::vector<double> entries;
  std::size_t rows_read = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;
    if (!dims) {
      if (tokens.size() != 2) throw ParseError("header must be 'rows cols'", line_no, tokens.front().column);
      dims.emplace(parse_count(tokens[0], line_no), parse_count(tokens[1], line_no));
      entries.reserve(dims->first * dims->second);
      continue;
    }
    if (rows_read == dims->first) {
      throw ParseError("more rows than the header declares (" + std::to_string(dims->first) + ")", line_no,
                       tokens.front().column);
    }
    if (tokens.size() != dims->second) {
      const std::size_t col = tokens.size() > dims->second ? tokens[dims->second].column : line.size() + 1;
      throw ParseError("row has " + std::to_string(tokens.size()) + " entries, header declares " +
                           std::to_string(dims->second),
                       line_no, col);
    }
    for (const auto& tok : tokens) entries.push_back(parse_real(tok, line_no));
    ++rows_read;
  }
  if (!dims) throw ParseError("missing 'rows cols' header", line_no + 1, 1);
  if (rows_read != dims->first) {
    throw ParseError("found " + std::to_string(rows_read) + " rows, header declares " + std::to_string(dims->first),
                     line_no + 1, 1);
  }
  return DenseMatrix(dims->first, dims->second, std::move(entries));
}

void write_matrix(const DenseMatrix& m, std::ostream& out) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

DenseMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open matrix file " + path.string());
  return read_matrix(in);
}

void save_matrix(const DenseMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write matrix file " + path.string());
  write_matrix(m, out);
  if (!out) throw PreconditionError("write failed for " + path.string());
}

DenseMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

std::string format_matrix(const DenseMatrix& m) {
  std::ostringstream out;
  write_matrix(m, out);
  return out.str();
}

}  // namespace cubescore
