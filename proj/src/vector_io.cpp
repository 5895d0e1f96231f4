#include "sjlt/vector_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace sjlt::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(std::string_view token, std::size_t line_no, const char* what) {
  token = trim(token);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return v;
}

double parse_value(std::string_view token, std::size_t line_no) {
  try {
    return parse_double(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

bool skip_line(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

double parse_double(std::string_view token) {
  token = trim(token);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad number '" + std::string(token) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SparseVector parse_sparse_line(std::string_view line, std::size_t line_no) {
  line = trim(line);
  auto semi = line.find(';');
  if (semi == std::string_view::npos) throw ParseError(line_no, "missing ';' after dimension");
  const std::uint64_t dim = parse_u64(line.substr(0, semi), line_no, "dimension");
  std::vector<SparseEntry> entries;
  std::string_view rest = trim(line.substr(semi + 1));
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "entry '" + std::string(item) + "' lacks ':'");
    entries.push_back({parse_u64(item.substr(0, colon), line_no, "index"), parse_value(item.substr(colon + 1), line_no)});
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (trim(rest).empty()) throw ParseError(line_no, "trailing ','");
  }
  try {
    return SparseVector(dim, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string format_sparse_line(const SparseVector& x) {
  std::string out = std::to_string(x.dim()) + ';';
  bool first = true;
  for (const SparseEntry& e : x.entries()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(e.index) + ':' + format_double(e.value);
  }
  return out;
}

std::vector<SparseVector> read_sparse_vectors(std::istream& in) {
  std::vector<SparseVector> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skip_line(line)) continue;
    out.push_back(parse_sparse_line(line, line_no));
  }
  return out;
}

std::string format_dense_line(std::span<const double> y) {
  std::string out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i != 0) out += ',';
    out += format_double(y[i]);
  }
  return out;
}

DenseVector parse_dense_line(std::string_view line, std::size_t line_no) {
  DenseVector out;
  line = trim(line);
  while (true) {
    auto comma = line.find(',');
    out.push_back(parse_value(line.substr(0, comma), line_no));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

void write_dense_vectors(std::ostream& out, std::span<const DenseVector> ys) {
  for (const DenseVector& y : ys) out << format_dense_line(y) << '\n';
}

std::vector<DenseVector> read_dense_vectors(std::istream& in) {
  std::vector<DenseVector> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skip_line(line)) continue;
    out.push_back(parse_dense_line(line, line_no));
  }
  return out;
}

}  // namespace sjlt::io
