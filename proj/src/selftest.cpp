#include "ksmooth/selftest.hpp"

#include <algorithm>
#include <sstream>

#include "ksmooth/generators.hpp"
#include "ksmooth/orthogonality.hpp"

namespace ksmooth {

namespace {

using Space = PolyhedralSpace<Rational>;
using Ptr = SpacePtr<Rational>;
using Op = LinearOperator<Rational>;

std::string vertices_text(const Space& s) {
  std::string out = s.name() + " vertices {";
  for (std::size_t i = 0; i < s.extreme_points().size(); ++i)
    out += (i ? ", " : "") + to_string(s.extreme_points()[i]);
  return out + "}";
}

std::string certificate(std::size_t index, const Op& t, const std::string& detail) {
  std::ostringstream ss;
  ss << "case " << index << ": X " << vertices_text(t.domain()) << "; Y "
     << vertices_text(t.codomain()) << "; T rows [";
  for (std::size_t r = 0; r < t.matrix().rows(); ++r)
    ss << (r ? ", " : "") << to_string(t.matrix().row(r));
  ss << "]; " << detail;
  return ss.str();
}

Ptr random_test_space(Rng& rng, std::size_t dim) {
  switch (rng.uniform(0, 5)) {
    case 0:
      return std::make_shared<const Space>(ell1<Rational>(dim));
    case 1:
      return std::make_shared<const Space>(ellinf<Rational>(dim));
    default: {
      const auto points = static_cast<std::size_t>(rng.uniform(static_cast<long>(dim), static_cast<long>(dim) + 2));
      return std::make_shared<const Space>(random_space<Rational>(rng, dim, points));
    }
  }
}

std::size_t random_dim(Rng& rng) { return static_cast<std::size_t>(rng.uniform(2, 4)); }

// Rows of m applied to the vectors of `basis`.
std::vector<Vector<Rational>> recombine(const Matrix<Rational>& m,
                                        const std::vector<Vector<Rational>>& basis) {
  std::vector<Vector<Rational>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vector<Rational> v = zero_vector<Rational>(basis.front().size());
    for (std::size_t j = 0; j < m.cols(); ++j) v = v + m(i, j) * basis[j];
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

struct Suites {
  PropertyOutcome order{"order-equivalence", 0, {}};
  PropertyOutcome bound{"minimum-bound", 0, {}};
  PropertyOutcome invariance{"basis-invariance", 0, {}};
  PropertyOutcome rank1{"rank-1-law", 0, {}};
  PropertyOutcome interior{"interior-law", 0, {}};
  PropertyOutcome faces{"face-counts", 0, {}};
  PropertyOutcome bj{"bj-certificates", 0, {}};
};

void check_interior(const Space& s, Rng& rng, PropertyOutcome& out) {
  std::vector<Vector<Rational>> points = s.extreme_points();
  for (const auto& edge : s.ball().enumerate_faces(1)) {
    const auto vs = s.ball().face_vertex_indices(edge);
    points.push_back(Rational(1, 2) * (s.extreme_points()[vs[0]] + s.extreme_points()[vs[1]]));
  }
  for (int i = 0; i < 4; ++i) points.push_back(random_unit_vector(rng, s));
  for (const auto& x : points) {
    ++out.cases;
    try {
      const std::size_t k = support_set(s, x).smoothness_order;
      const std::size_t face_dim = s.ball().minimal_face(x).dim;
      if (k + face_dim != s.dim())
        out.counterexamples.push_back(vertices_text(s) + "; x " + to_string(x) + ": k " +
                                      std::to_string(k) + ", minimal face dim " +
                                      std::to_string(face_dim));
    } catch (const Error& e) {
      out.counterexamples.push_back(vertices_text(s) + "; x " + to_string(x) + ": " + e.what());
    }
  }
}

void check_bj(const Space& s, Rng& rng, std::size_t pairs, PropertyOutcome& out) {
  for (std::size_t i = 0; i < pairs; ++i) {
    const Vector<Rational> x = rng.coin() ? s.extreme_points()[rng.uniform(0, static_cast<long>(s.extreme_points().size()) - 1)]
                                          : random_unit_vector(rng, s);
    Vector<Rational> y(s.dim());
    for (auto& c : y) c = rng.rational(3, 2);
    ++out.cases;
    try {
      const auto verdict = bj_vector_vector(s, x, y);
      if (verdict.orthogonal) verify_witness(s, x, {y}, *verdict.witness);
      const bool oracle = breakpoint_orthogonal(s, x, y);
      if (verdict.orthogonal != oracle)
        out.counterexamples.push_back(vertices_text(s) + "; x " + to_string(x) + ", y " +
                                      to_string(y) + ": verdict " +
                                      (verdict.orthogonal ? "yes" : "no") + ", breakpoint oracle " +
                                      (oracle ? "yes" : "no"));
    } catch (const Error& e) {
      out.counterexamples.push_back(vertices_text(s) + "; x " + to_string(x) + ", y " +
                                    to_string(y) + ": " + e.what());
    }
  }
}

void check_operator(std::size_t index, const Op& t, Rng& rng, bool recombinations, Suites& s) {
  ++s.order.cases;
  ++s.bound.cases;
  SmoothnessReport<Rational> report;
  try {
    report = order_of_smoothness(t);
  } catch (const Error& e) {
    s.order.counterexamples.push_back(certificate(index, t, e.what()));
    return;
  }
  const std::size_t index_value = index_of_smoothness(t, report.attainment.attaining_vertices);
  const std::size_t oracle = oracle_order_of_smoothness(t);
  if (index_value != oracle)
    s.order.counterexamples.push_back(certificate(
        index, t, "index " + std::to_string(index_value) + ", oracle " + std::to_string(oracle)));
  if (report.min_bound > oracle)
    s.bound.counterexamples.push_back(certificate(
        index, t,
        "order " + std::to_string(oracle) + " below bound " + std::to_string(report.min_bound)));
  if (!recombinations) return;
  const auto& c = report.computation;
  for (int round = 0; round < 20; ++round) {
    ++s.invariance.cases;
    const auto a = random_invertible_matrix<Rational>(rng, c.domain_basis.size());
    const auto b = random_invertible_matrix<Rational>(rng, c.functional_basis.size());
    try {
      const auto again = index_computation_with_bases(t, report.attainment.attaining_vertices,
                                                      recombine(a, c.domain_basis),
                                                      recombine(b, c.functional_basis));
      if (again.index != report.index)
        s.invariance.counterexamples.push_back(certificate(
            index, t, "index " + std::to_string(report.index) + " became " +
                          std::to_string(again.index) + " after recombination " +
                          std::to_string(round)));
    } catch (const Error& e) {
      s.invariance.counterexamples.push_back(certificate(index, t, e.what()));
    }
  }
}

void check_rank1(std::size_t index, const Op& t, PropertyOutcome& out) {
  ++out.cases;
  try {
    const auto report = order_of_smoothness(t);
    const std::size_t p = report.attainment.basis_indices.size();
    const std::size_t q = report.image_supports.front().smoothness_order;
    const auto admissible = rank1_admissible_orders(t.domain().dim(), t.codomain().dim());
    if (report.index != p * q || !admissible.contains(report.index))
      out.counterexamples.push_back(certificate(
          index, t, "order " + std::to_string(report.index) + ", p " + std::to_string(p) +
                        ", q " + std::to_string(q)));
  } catch (const Error& e) {
    out.counterexamples.push_back(certificate(index, t, e.what()));
  }
}

void check_face_counts(PropertyOutcome& out) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto cube = ellinf<Rational>(n);
    for (std::size_t k = 1; k <= n; ++k) {
      ++out.cases;
      const std::size_t got = cube.ball().count_faces(n - k);
      const std::size_t want = binomial(n, k) << k;
      if (got != want)
        out.counterexamples.push_back("ellinf:" + std::to_string(n) + ": " +
                                      std::to_string(n - k) + "-faces " + std::to_string(got) +
                                      ", expected " + std::to_string(want));
    }
    ++out.cases;
    const long chi = euler_characteristic(cube.ball());
    const long want = n % 2 == 0 ? 0 : 2;
    if (chi != want)
      out.counterexamples.push_back("ellinf:" + std::to_string(n) + ": Euler characteristic " +
                                    std::to_string(chi) + ", expected " + std::to_string(want));
  }
}

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyOutcome& p) { return p.passed(); });
}

template <ExactField K>
bool breakpoint_orthogonal(const PolyhedralSpace<K>& space, const Vector<K>& x,
                           const Vector<K>& y) {
  const auto& fs = space.extreme_functionals();
  std::vector<std::pair<K, K>> lines;  // t -> a + b t
  for (const auto& f : fs) lines.emplace_back(dot(f, x), dot(f, y));
  auto value = [&](const K& t) {
    K best = lines.front().first + lines.front().second * t;
    for (const auto& [a, b] : lines) best = std::max(best, a + b * t);
    return best;
  };
  const K at_zero = value(K(0));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      if (lines[i].second == lines[j].second) continue;
      const K t = (lines[j].first - lines[i].first) / (lines[i].second - lines[j].second);
      if (value(t) < at_zero) return false;
    }
  return true;
}

SelftestReport run_selftest(const SelftestOptions& options) {
  Rng rng(options.seed);
  Suites s;
  check_face_counts(s.faces);

  for (std::size_t i = 0; i < options.cases; ++i) {
    const Ptr x = random_test_space(rng, random_dim(rng));
    const Ptr y = random_test_space(rng, random_dim(rng));
    const Op t = random_unit_operator(rng, x, y);
    check_operator(i, t, rng, i < 20, s);
    if (i % 4 == 0) {
      check_interior(*x, rng, s.interior);
      check_bj(*x, rng, 10, s.bj);
    }
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(options.cases / 2, 1); ++i) {
    const Ptr x = random_test_space(rng, random_dim(rng));
    const Ptr y = random_test_space(rng, random_dim(rng));
    check_rank1(i, random_rank1_operator(rng, x, y), s.rank1);
  }

  SelftestReport report;
  report.seed = options.seed;
  report.properties = {s.order, s.bound, s.invariance, s.rank1, s.interior, s.faces, s.bj};
  return report;
}

template bool breakpoint_orthogonal<Rational>(const PolyhedralSpace<Rational>&,
                                              const Vector<Rational>&, const Vector<Rational>&);
template bool breakpoint_orthogonal<QuadSqrt2>(const PolyhedralSpace<QuadSqrt2>&,
                                               const Vector<QuadSqrt2>&, const Vector<QuadSqrt2>&);

}  // namespace ksmooth
