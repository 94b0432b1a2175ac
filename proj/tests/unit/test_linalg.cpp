#include <doctest.h>

#include "ksmooth/linalg.hpp"
#include "ksmooth/random.hpp"
#include "oracles.hpp"

using namespace ksmooth;

namespace {

using R = Rational;
using Q = QuadSqrt2;

const Q h = Q(R(0), R(1, 2));  // 1/sqrt(2)

Vector<R> rv(std::initializer_list<long> xs) {
  Vector<R> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Matrix<R> random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::vector<Vector<R>> rs;
  // Low-rank structure shows up often: some rows are sums of earlier ones.
  for (std::size_t i = 0; i < rows; ++i) {
    Vector<R> v(cols);
    if (i >= 2 && rng.uniform(0, 2) == 0) {
      v = rs[i - 1] + rng.rational(3, 1) * rs[i - 2];
    } else {
      for (auto& x : v) x = rng.rational(3, rng.uniform(1, 3));
    }
    rs.push_back(v);
  }
  return Matrix<R>::from_rows(rs, cols);
}

std::vector<Vector<R>> rows_of(const Matrix<R>& m) {
  std::vector<Vector<R>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(Matrix<R>::identity(3)) == 3);
  CHECK(rank(std::vector<Vector<R>>{rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0})}, 3) == 2);
  const std::vector<Vector<Q>> rows = {{Q(1), Q(1), Q(0)}, {Q(1), Q(-1), Q(0)},
                                       {Q(0), Q(0), Q::sqrt2()}};
  CHECK(rank(rows, 3) == 3);
  CHECK(rank(Matrix<R>::from_rows({rv({0, 0})}, 2)) == 0);
}

TEST_CASE("solve examples") {
  const auto a = Matrix<Q>::from_columns({{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}}, 3);
  const auto x = solve(a, Vector<Q>{h, h, Q(0)});
  REQUIRE(x.has_value());
  CHECK(*x == Vector<Q>{h, h});
  CHECK(solve(Matrix<R>::identity(3), rv({4, -1, 2})) == rv({4, -1, 2}));
  CHECK_FALSE(solve(Matrix<R>::from_columns({rv({1, 1})}, 2), rv({1, 0})).has_value());
}

TEST_CASE("greedy independent subset examples") {
  using V = std::vector<Vector<R>>;
  CHECK(greedy_independent_subset(V{rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0}), rv({0, 0, 1})}) ==
        std::vector<std::size_t>{0, 1, 3});
  CHECK(greedy_independent_subset(V{rv({0, 0})}).empty());
  const std::vector<Vector<Q>> attaining = {
      {Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {h, h, Q(0)}, {Q(0), Q(0), Q(1)}};
  CHECK(greedy_independent_subset(attaining) == std::vector<std::size_t>{0, 1, 3});
}

TEST_CASE("kron_coeff_vector examples") {
  CHECK(kron_coeff_vector(rv({1, 0}), rv({0, 1})).entries == rv({0, 1, 0, 0}));
  const auto k = kron_coeff_vector(Vector<Q>{h, h, Q(0)}, Vector<Q>{Q(1), Q(0), Q(0)});
  // h * (e~11 + e~21) in i-major layout.
  CHECK(k.entries == Vector<Q>{h, Q(0), Q(0), h, Q(0), Q(0), Q(0), Q(0), Q(0)});
  CHECK(k.n == 3);
  CHECK(k.p == 3);
  CHECK(is_zero(kron_coeff_vector(rv({0, 0}), rv({1, 2, 3})).entries));
}

TEST_CASE("outer_flatten examples") {
  CHECK(outer_flatten(rv({1, 0}), rv({1, 0})) == rv({1, 0, 0, 0}));
  CHECK(outer_flatten(rv({1, 1}), rv({1, 0})) == rv({1, 0, 1, 0}));
  // Independent x's and f's give independent outer products.
  const std::vector<Vector<R>> xs = {rv({1, 1, 0}), rv({0, 1, 1}), rv({1, 0, 1})};
  const std::vector<Vector<R>> fs = {rv({1, -1}), rv({2, 1})};
  std::vector<Vector<R>> products;
  for (const auto& x : xs)
    for (const auto& f : fs) products.push_back(outer_flatten(x, f));
  CHECK(rank(products, 6) == 6);
}

TEST_CASE("incremental basis") {
  IncrementalBasis<R> b(3);
  CHECK(b.try_add(rv({1, 2, 0})));
  CHECK_FALSE(b.try_add(rv({2, 4, 0})));
  CHECK(b.contains(rv({-1, -2, 0})));
  CHECK_FALSE(b.contains(rv({0, 0, 1})));
  CHECK(b.try_add(rv({0, 0, 1})));
  CHECK(b.size() == 2);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(rv({1, 2}) + rv({1}), Error);
  CHECK_THROWS_AS(Matrix<R>::identity(2) * rv({1, 2, 3}), Error);
}

TEST_CASE("property: rank agrees with the textbook oracle and with the transpose") {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, rng.uniform(1, 6), rng.uniform(1, 6));
    const std::size_t r = rank(m);
    CHECK(r == oracle::rank(rows_of(m)));
    CHECK(r == rank(m.transpose()));
  }
}

TEST_CASE("property: rank plus nullity equals the column count") {
  Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, rng.uniform(1, 5), rng.uniform(1, 6));
    const auto kernel = nullspace(m);
    CHECK(rank(m) + kernel.size() == m.cols());
    for (const auto& k : kernel) CHECK(is_zero(m * k));
    if (!kernel.empty()) CHECK(rank(kernel, m.cols()) == kernel.size());
  }
}

TEST_CASE("property: greedy subset keeps the rank and solve is exact") {
  Rng rng(107);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, rng.uniform(1, 6), rng.uniform(1, 5));
    const auto rows = rows_of(m);
    const auto idx = greedy_independent_subset(rows);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    std::vector<Vector<R>> kept;
    for (auto j : idx) kept.push_back(rows[j]);
    CHECK(kept.size() == rank(m));
    CHECK(rank(kept, m.cols()) == kept.size());
    // Every row is in the span of the kept ones, with exact coordinates.
    for (const auto& row : rows) {
      const auto c = coordinates(kept, row);
      REQUIRE(c.has_value());
      Vector<R> back = zero_vector<R>(m.cols());
      for (std::size_t j = 0; j < kept.size(); ++j) back = back + (*c)[j] * kept[j];
      CHECK(back == row);
    }
  }
}

TEST_CASE("property: kron_coeff_vector matches outer_flatten") {
  Rng rng(109);
  for (int i = 0; i < 200; ++i) {
    Vector<R> a(rng.uniform(1, 4)), b(rng.uniform(1, 4));
    for (auto& x : a) x = rng.rational(5, 3);
    for (auto& x : b) x = rng.rational(5, 2);
    CHECK(kron_coeff_vector(a, b).entries == outer_flatten(a, b));
  }
}
