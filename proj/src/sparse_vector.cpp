#include "sjlt/sparse_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sjlt {

SparseVector::SparseVector(std::uint64_t dim, std::vector<SparseEntry> entries) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("SparseVector: dimension must be positive");
  entries_.reserve(entries.size());
  bool first = true;
  std::uint64_t prev = 0;
  for (const SparseEntry& e : entries) {
    if (e.index >= dim) {
      throw std::invalid_argument("SparseVector: index " + std::to_string(e.index) + " out of range for dim " +
                                  std::to_string(dim));
    }
    if (!first && e.index <= prev) throw std::invalid_argument("SparseVector: indices must be strictly increasing");
    if (!std::isfinite(e.value)) throw std::invalid_argument("SparseVector: non-finite value");
    first = false;
    prev = e.index;
    if (e.value != 0.0) entries_.push_back(e);
  }
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.push_back({i, values[i]});
  }
  return SparseVector(values.size(), std::move(entries));
}

double SparseVector::norm2() const {
  double s = 0.0;
  for (const SparseEntry& e : entries_) s += e.value * e.value;
  return std::sqrt(s);
}

DenseVector SparseVector::to_dense() const {
  DenseVector out(dim_, 0.0);
  for (const SparseEntry& e : entries_) out[e.index] = e.value;
  return out;
}

SparseVector linear_combination(double alpha, const SparseVector& x, double beta, const SparseVector& z) {
  if (x.dim() != z.dim()) throw std::invalid_argument("linear_combination: dimension mismatch");
  std::vector<SparseEntry> out;
  auto a = x.entries().begin();
  auto b = z.entries().begin();
  while (a != x.entries().end() || b != z.entries().end()) {
    if (b == z.entries().end() || (a != x.entries().end() && a->index < b->index)) {
      out.push_back({a->index, alpha * a->value});
      ++a;
    } else if (a == x.entries().end() || b->index < a->index) {
      out.push_back({b->index, beta * b->value});
      ++b;
    } else {
      out.push_back({a->index, alpha * a->value + beta * b->value});
      ++a;
      ++b;
    }
  }
  return SparseVector(x.dim(), std::move(out));
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

}  // namespace sjlt
