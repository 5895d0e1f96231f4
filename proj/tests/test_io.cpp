#include <doctest.h>

#include <random>
#include <sstream>

#include "sjlt/vector_io.hpp"

using namespace sjlt;

TEST_CASE("sparse line parsing") {
  const SparseVector x = io::parse_sparse_line("4;0:1.0");
  CHECK(x.dim() == 4);
  REQUIRE(x.nnz() == 1);
  CHECK(x.entries()[0] == SparseEntry{0, 1.0});

  const SparseVector y = io::parse_sparse_line(" 10;2:-0.5, 7:3e-2 ");
  CHECK(y.nnz() == 2);
  CHECK(y.entries()[1] == SparseEntry{7, 0.03});

  CHECK(io::parse_sparse_line("3;").nnz() == 0);
  CHECK(io::parse_sparse_line("3;1:0").nnz() == 0);  // explicit zero dropped
}

TEST_CASE("sparse line errors") {
  CHECK_THROWS_AS(io::parse_sparse_line("4"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("0;"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;4:1"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;2:1,1:1"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;2:1,2:1"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;2:nan"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;2:1,"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;x:1"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("-4;"), io::ParseError);
  CHECK_THROWS_AS(io::parse_sparse_line("4;1"), io::ParseError);
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream in("# comment\n3;0:1\n\n3;5:1\n");
  try {
    io::read_sparse_vectors(in);
    FAIL("expected a parse error");
  } catch (const io::ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("17 significant digits") {
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(-1.0 / 3.0) == "-0.33333333333333331");
  CHECK(io::format_dense_line(std::vector<double>{1.0, -2.5}) == "1,-2.5");
}

TEST_CASE("round trip of random vectors through both formats") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-1e6, 1e6);
  std::vector<SparseVector> xs;
  std::vector<DenseVector> ys;
  for (int n = 0; n < 200; ++n) {
    const std::uint64_t dim = 1 + rng() % 1000;
    std::vector<SparseEntry> e;
    for (std::uint64_t i = 0; i < dim; ++i)
      if (rng() % 7 == 0) e.push_back({i, val(rng) * std::ldexp(1.0, static_cast<int>(rng() % 200) - 100)});
    xs.emplace_back(dim, e);
    ys.push_back(xs.back().to_dense());
  }
  std::stringstream sparse_text;
  for (const auto& x : xs) sparse_text << io::format_sparse_line(x) << '\n';
  CHECK(io::read_sparse_vectors(sparse_text) == xs);

  std::stringstream dense_text;
  io::write_dense_vectors(dense_text, ys);
  CHECK(io::read_dense_vectors(dense_text) == ys);
}

TEST_CASE("SparseVector invariants") {
  CHECK_THROWS_AS(SparseVector(0), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector(3, {{1, 1.0}, {0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector(3, {{1, std::numeric_limits<double>::infinity()}}), std::invalid_argument);
  const SparseVector a(5, {{0, 1.0}, {3, 2.0}});
  const SparseVector b(5, {{1, 1.0}, {3, -1.0}});
  const SparseVector c = linear_combination(2.0, a, 2.0, b);
  CHECK(c == SparseVector(5, {{0, 2.0}, {1, 2.0}, {3, 2.0}}));
  CHECK(linear_combination(1.0, a, 2.0, a) == SparseVector(5, {{0, 3.0}, {3, 6.0}}));
  CHECK_THROWS_AS(linear_combination(1.0, a, 1.0, SparseVector(4)), std::invalid_argument);
}
