#include <doctest.h>

#include "ksmooth/generators.hpp"
#include "ksmooth/orthogonality.hpp"
#include "oracles.hpp"

using namespace ksmooth;

namespace {

using R = Rational;

Vector<R> rv(std::initializer_list<long> xs) {
  Vector<R> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<Vector<R>> standard_basis(std::size_t n) {
  std::vector<Vector<R>> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back(unit_vector<R>(n, i));
  return b;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST_CASE("vector against vector") {
  const auto sq = ellinf<R>(2);
  const auto v = bj_vector_vector(sq, rv({1, 1}), rv({1, -1}));
  REQUIRE(v.orthogonal);
  CHECK(v.witness->functional == Vector<R>{R(1, 2), R(1, 2)});
  verify_witness(sq, rv({1, 1}), {rv({1, -1})}, *v.witness);

  const auto l1 = ell1<R>(2);
  const auto e = bj_vector_vector(l1, rv({1, 0}), rv({0, 1}));
  REQUIRE(e.orthogonal);
  CHECK(e.witness->functional == rv({1, 0}));
  CHECK(bj_vector_vector(l1, rv({1, 0}), rv({0, 0})).orthogonal);
  CHECK_FALSE(bj_vector_vector(l1, Vector<R>{R(1, 2), R(1, 2)}, rv({1, 0})).orthogonal);
  CHECK(bj_vector_vector(l1, Vector<R>{R(1, 2), R(1, 2)}, rv({1, -1})).orthogonal);
  CHECK(code_of([&] { bj_vector_vector(l1, rv({1, 1}), rv({0, 1})); }) == ErrorCode::NotUnitNorm);
}

TEST_CASE("vector against subspace") {
  CHECK(bj_vector_subspace(ell1<R>(3), rv({1, 0, 0}),
                           Subspace<R>({rv({0, 1, 0}), rv({0, 0, 1})}))
            .orthogonal);
  const auto v = bj_vector_subspace(ellinf<R>(2), rv({1, 1}), Subspace<R>({rv({1, -1})}));
  REQUIRE(v.orthogonal);
  CHECK(v.witness->functional == Vector<R>{R(1, 2), R(1, 2)});
  CHECK_FALSE(
      bj_vector_subspace(ellinf<R>(2), rv({1, 1}), Subspace<R>(standard_basis(2))).orthogonal);
  CHECK(code_of([] { Subspace<R>({rv({1, 0}), rv({2, 0})}); }) == ErrorCode::NotIndependent);
}

TEST_CASE("subspace against vector and subspace") {
  const auto l1 = ell1<R>(3);
  const auto a = bj_subspace_vector(l1, Subspace<R>({rv({1, 0, 0}), rv({0, 1, 0})}), rv({0, 0, 1}));
  CHECK(a.orthogonal);
  CHECK(a.faces_checked > 0);
  CHECK_FALSE(a.witnesses.empty());
  for (const auto& w : a.witnesses) verify_witness(l1, w.point, {rv({0, 0, 1})}, w.witness);

  const auto sq = ellinf<R>(2);
  CHECK(bj_subspace_vector(sq, Subspace<R>({rv({1, 1})}), rv({1, -1})).orthogonal);
  CHECK(bj_subspace_vector(sq, Subspace<R>({rv({1, 0})}), rv({0, 1})).orthogonal);
  CHECK(bj_subspace_vector(sq, Subspace<R>({rv({1, 0})}), rv({0, 0})).orthogonal);

  const auto no = bj_subspace_vector(sq, Subspace<R>({rv({1, 0})}), rv({1, 1}));
  CHECK_FALSE(no.orthogonal);
  CHECK(no.failing_point.has_value());

  CHECK(bj_subspace_subspace(l1, Subspace<R>({rv({1, 0, 0})}),
                             Subspace<R>({rv({0, 1, 0}), rv({0, 0, 1})}))
            .orthogonal);
}

TEST_CASE("best coapproximation") {
  const auto l1 = ell1<R>(3);
  const Subspace<R> y({rv({1, 0, 0}), rv({0, 1, 0})});
  CHECK(is_best_coapproximation(l1, rv({1, 1, 0}), rv({1, 1, 0}), y).orthogonal);
  CHECK(is_best_coapproximation(l1, rv({1, 1, 1}), rv({1, 1, 0}), y).orthogonal);
  CHECK(is_best_coapproximation(ellinf<R>(2), rv({1, 0}), Vector<R>{R(1, 2), R(1, 2)},
                                Subspace<R>({rv({1, 1})}))
            .orthogonal);
  CHECK(code_of([&] { is_best_coapproximation(l1, rv({1, 1, 1}), rv({0, 0, 1}), y); }) ==
        ErrorCode::Y0NotInSubspace);
}

TEST_CASE("strong Auerbach bases") {
  CHECK(is_strong_auerbach(ell1<R>(3), standard_basis(3)).strong_auerbach);
  CHECK(is_strong_auerbach(ellinf<R>(2), {rv({1, 1}), rv({1, -1})}).strong_auerbach);
  const auto bad = is_strong_auerbach(ellinf<R>(2), {rv({1, 1}), rv({1, 0})});
  CHECK_FALSE(bad.strong_auerbach);
  CHECK(bad.failing_subset.has_value());
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto a = is_strong_auerbach(ell1<R>(n), standard_basis(n));
    CHECK(a.strong_auerbach);
    CHECK(a.subsets_checked == (std::size_t{1} << n) - 2);
    CHECK(is_strong_auerbach(ellinf<R>(n), standard_basis(n)).strong_auerbach);
  }
  CHECK(code_of([] { is_strong_auerbach(ell1<R>(2), {rv({1, 1}), rv({1, 0})}); }) ==
        ErrorCode::NotUnitNorm);
}

TEST_CASE("orthogonality is not symmetric") {
  // In ell-infinity^2, (1,0) _|_B (1,1) fails while (1,1) _|_B (1,0) holds.
  const auto sq = ellinf<R>(2);
  CHECK(bj_vector_vector(sq, rv({1, 1}), rv({1, 0})).orthogonal);
  CHECK_FALSE(bj_vector_vector(sq, rv({1, 0}), rv({1, 1})).orthogonal);
}

TEST_CASE("property: verdicts agree with the breakpoint oracle and carry verified witnesses") {
  Rng rng(503);
  std::size_t pairs = 0, positive = 0;
  while (pairs < 600) {
    const std::size_t d = rng.uniform(2, 4);
    const auto s = random_space<R>(rng, d, rng.uniform(d, d + 3));
    for (int j = 0; j < 20; ++j, ++pairs) {
      const auto x = rng.coin() ? s.extreme_points()[rng.uniform(0, s.extreme_points().size() - 1)]
                                : random_unit_vector(rng, s);
      Vector<R> y(d);
      for (auto& c : y) c = rng.rational(2, rng.uniform(1, 2));
      const auto v = bj_vector_vector(s, x, y);
      CHECK(v.orthogonal == oracle::bj_breakpoints(s.extreme_functionals(), x, y));
      CHECK(v.witness.has_value() == v.orthogonal);
      if (v.orthogonal) {
        ++positive;
        verify_witness(s, x, {y}, *v.witness);
        CHECK(oracle::inner(v.witness->functional, x) == R(1));
        CHECK(oracle::inner(v.witness->functional, y) == R(0));
        CHECK(dual_norm(s, v.witness->functional) == R(1));
      }
      const R c = R(rng.uniform(1, 5), rng.uniform(1, 3)) * (rng.coin() ? R(1) : R(-1));
      CHECK(bj_vector_vector(s, x, c * y).orthogonal == v.orthogonal);
    }
  }
  CHECK(positive > 20);
}

TEST_CASE("property: subspace witnesses are exact") {
  Rng rng(509);
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = rng.uniform(2, 3);
    const auto s = random_space<R>(rng, d, rng.uniform(d, d + 2));
    Vector<R> a(d), z(d);
    for (auto& c : a) c = rng.rational(2, 1);
    for (auto& c : z) c = rng.rational(2, 1);
    if (is_zero(a)) continue;
    const auto v = bj_subspace_vector(s, Subspace<R>({a}), z);
    for (const auto& w : v.witnesses) {
      verify_witness(s, w.point, {z}, w.witness);
      CHECK(norm(s, w.point) == R(1));
    }
    // The same question asked one unit vector at a time.
    bool each = true;
    for (const auto& p : {normalize(s, a), normalize(s, -a)})
      each &= oracle::bj_breakpoints(s.extreme_functionals(), p, z);
    CHECK(v.orthogonal == each);
  }
}
