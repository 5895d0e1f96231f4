#pragma once

// Text formats for vectors.
//
// Sparse input, one vector per line:   dim;idx:val,idx:val,...
// Dense output, one vector per line:   v0,v1,...  (17 significant digits)
//
// Blank lines and lines starting with '#' are skipped on input.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sjlt/sparse_vector.hpp"

namespace sjlt::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

SparseVector parse_sparse_line(std::string_view line, std::size_t line_no = 1);
std::string format_sparse_line(const SparseVector& x);

std::vector<SparseVector> read_sparse_vectors(std::istream& in);

/// %.17g, the shortest fixed width that round-trips every double.
std::string format_double(double v);
double parse_double(std::string_view token);

std::string format_dense_line(std::span<const double> y);
DenseVector parse_dense_line(std::string_view line, std::size_t line_no = 1);

void write_dense_vectors(std::ostream& out, std::span<const DenseVector> ys);
std::vector<DenseVector> read_dense_vectors(std::istream& in);

}  // namespace sjlt::io
