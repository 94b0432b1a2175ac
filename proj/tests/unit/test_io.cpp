#include <doctest.h>

#include <fstream>

#include "ksmooth/io.hpp"
#include "ksmooth/selftest.hpp"

using namespace ksmooth;
namespace fs = std::filesystem;

namespace {

using R = Rational;
using Q = QuadSqrt2;

const fs::path data_dir = KSMOOTH_DATA_DIR;

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("ksmooth_test_" + name);
  std::ofstream(p) << text;
  return p;
}

ErrorCode code_of(auto&& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalInconsistency;
}

// Every string leaf of a report must re-parse to a scalar that prints the same.
template <ExactField K>
void check_scalars_round_trip(const json& j, std::size_t& count) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const K x = K::parse(s);
    CHECK(x.to_string() == s);
    ++count;
  } else if (j.is_array() || j.is_object()) {
    for (const auto& item : j) check_scalars_round_trip<K>(item, count);
  }
}

}  // namespace

TEST_CASE("vector literals") {
  CHECK(parse_vector<R>("1/2,-1,0") == Vector<R>{R(1, 2), R(-1), R(0)});
  CHECK(parse_vector<R>("(1, 2)") == Vector<R>{R(1), R(2)});
  CHECK(parse_vector<Q>("[r2-1, 1/2*r2]") ==
        Vector<Q>{Q(R(-1), R(1)), Q(R(0), R(1, 2))});
  CHECK(code_of([] { parse_vector<R>("1,,2"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_vector<R>("1,r2"); }) == ErrorCode::QuadraticUnderRational);
  CHECK(code_of([] { parse_vector<R>("()"); }) == ErrorCode::Syntax);
}

TEST_CASE("builtin sources and field resolution") {
  const auto a = load_space_source("ell1:3");
  const auto b = load_space_source("paper-example");
  CHECK(a.builtin == std::optional<std::string>("ell1"));
  CHECK(a.builtin_dim == 3);
  CHECK(resolve_field({&a}) == FieldTag::Rational);
  CHECK(resolve_field({&a, &b}) == FieldTag::QuadSqrt2);
  CHECK(resolve_field({&a}, std::nullopt, FieldTag::QuadSqrt2) == FieldTag::QuadSqrt2);
  CHECK(code_of([&] { resolve_field({&b}, std::nullopt, FieldTag::Rational); }) ==
        ErrorCode::FieldMismatch);
  CHECK(code_of([&] { build_space<R>(b); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([] { load_space_source("ell1:x"); }) == ErrorCode::Syntax);
  CHECK(build_space<Q>(load_space_source("ellinf:2")).extreme_points().size() == 4);
}

TEST_CASE("bundled files") {
  const auto op = load_operator_source((data_dir / "paper_example_op.json").string());
  CHECK(resolve_field({&op.domain, &op.codomain}, op.declared) == FieldTag::QuadSqrt2);
  const auto t = build_operator<Q>(op);
  const auto builtin = build_operator<Q>(load_operator_source("paper-example"));
  CHECK(t.matrix() == builtin.matrix());
  CHECK(t.domain().extreme_points() == builtin.domain().extreme_points());
  CHECK(order_of_smoothness(t).index == 8);

  const auto r1 = load_operator_source((data_dir / "rank1_example_op.json").string());
  CHECK(resolve_field({&r1.domain, &r1.codomain}, r1.declared) == FieldTag::Rational);
  CHECK(order_of_smoothness(build_operator<R>(r1)).index == 4);

  const auto id = build_operator<R>(
      load_operator_source((data_dir / "identity_ellinf2_op.json").string()));
  const auto set = load_vector_list<R>(data_dir / "identity_r_set.json");
  CHECK(set.size() == 3);
  CHECK(index_of_smoothness(id, set) == 4);
}

TEST_CASE("input errors carry positions") {
  std::string msg;
  const auto bad = write_temp("bad.json", "{\n  \"vertices\": [[\"1\", \"0\"],\n  oops\n}");
  CHECK(code_of([&] { load_space_source(bad.string()); }, &msg) == ErrorCode::Syntax);
  CHECK(msg.find("line 3") != std::string::npos);

  const auto lit = write_temp("lit.json", R"({"field": "rational", "vertices": [["1","0"],["-1","0"],["0","1/"],["0","-1"]]})");
  CHECK(code_of([&] { build_space<R>(load_space_source(lit.string())); }, &msg) ==
        ErrorCode::Syntax);
  CHECK(msg.find("/vertices/2/1") != std::string::npos);

  const auto dim = write_temp("dim.json", R"({"dim": 3, "vertices": [["1","0"],["-1","0"],["0","1"],["0","-1"]]})");
  CHECK(code_of([&] { build_space<R>(load_space_source(dim.string())); }) ==
        ErrorCode::DimensionMismatch);

  const auto asym = write_temp("asym.json", R"({"vertices": [["1","0"],["0","1"],["-1","-1"]]})");
  CHECK(code_of([&] { build_space<R>(load_space_source(asym.string())); }) ==
        ErrorCode::NotSymmetric);

  const auto quad = write_temp("quad.json", R"({"field": "rational", "vertices": [["r2","0"]]})");
  CHECK(code_of([&] { build_space<R>(load_space_source(quad.string())); }) ==
        ErrorCode::QuadraticUnderRational);

  const auto shape = write_temp("shape_op.json", R"({"domain": "ell1:2", "codomain": "ellinf:3", "matrix": [["1","0"]]})");
  CHECK(code_of([&] { build_operator<R>(load_operator_source(shape.string())); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { load_space_source("/nonexistent/space.json"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("space files round-trip") {
  const auto x = paper_example_space();
  const auto p = write_temp("space.json", space_to_json(x).dump(2));
  const auto again = build_space<Q>(load_space_source(p.string()));
  CHECK(again.extreme_points() == x.extreme_points());
  CHECK(again.extreme_functionals() == x.extreme_functionals());
}

TEST_CASE("report JSON scalars round-trip exactly") {
  const auto t = build_operator<Q>(load_operator_source("paper-example"));
  const json j = report_to_json(order_of_smoothness(t));
  std::size_t count = 0;
  for (const char* key : {"operator_norm", "attaining_vertices", "images", "index_computation"})
    check_scalars_round_trip<Q>(j.at(key), count);
  CHECK(count > 50);
  CHECK(j.at("index") == 8);
  CHECK(j.at("oracle_order") == 8);
  CHECK(j.dump() == report_to_json(order_of_smoothness(t)).dump());
}

TEST_CASE("selftest is deterministic and passes") {
  const auto a = run_selftest({5, 12});
  const auto b = run_selftest({5, 12});
  CHECK(a.passed());
  REQUIRE(a.properties.size() == b.properties.size());
  for (std::size_t i = 0; i < a.properties.size(); ++i) {
    CHECK(a.properties[i].name == b.properties[i].name);
    CHECK(a.properties[i].cases == b.properties[i].cases);
    CHECK(a.properties[i].cases > 0);
  }
}
