// ksmooth: orders of smoothness, attainment sets and Birkhoff-James
// orthogonality for operators between polyhedral spaces.
//
// Exit codes: 0 success, 1 usage, 2 invalid input, 3 internal inconsistency.

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ksmooth/io.hpp"
#include "ksmooth/orthogonality.hpp"
#include "ksmooth/selftest.hpp"

namespace fs = std::filesystem;
using namespace ksmooth;

namespace {

constexpr std::size_t kPublishedExampleOrder = 7;

struct Run {
  std::vector<std::string> argv;
  bool as_json = false;
  bool timing = false;
  std::optional<FieldTag> field;
  std::vector<fs::path> inputs;
  json results = json::object();
  std::vector<std::string> warnings;
  std::ostringstream text;
  int exit_code = 0;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

// Hash of the command line and the bytes of every file it read.
std::string inputs_digest(const Run& run) {
  std::string data;
  for (const auto& a : run.argv) data += a + '\0';
  for (const auto& p : run.inputs) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    data += p.filename().string() + '\0' + ss.str() + '\0';
  }
  return sha256_hex(data);
}

void note_inputs(Run& run, const SpaceSource& s) {
  if (!s.path.empty()) run.inputs.push_back(s.path);
}

template <typename F>
void with_field(FieldTag tag, F&& body) {
  if (tag == FieldTag::Rational)
    body.template operator()<Rational>();
  else
    body.template operator()<QuadSqrt2>();
}

template <ExactField K>
std::string join(const std::vector<Vector<K>>& vs, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? sep : "") + to_string(vs[i]);
  return out;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

template <ExactField K>
SpacePtr<K> shared(PolyhedralSpace<K> s) {
  return std::make_shared<const PolyhedralSpace<K>>(std::move(s));
}

// ---- space info -----------------------------------------------------------

void space_info(Run& run, const std::string& ref) {
  const SpaceSource src = load_space_source(ref);
  note_inputs(run, src);
  with_field(resolve_field({&src}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto space = build_space<K>(src);
    const auto& ball = space.ball();
    json counts = json::array();
    for (std::size_t d = 0; d < space.dim(); ++d) counts.push_back(ball.count_faces(d));
    const long chi = euler_characteristic(ball);
    const long expected = space.dim() % 2 == 0 ? 0 : 2;
    run.results = space_to_json(space);
    json facets = json::array();
    for (const auto& f : space.extreme_functionals()) facets.push_back(to_json(f));
    run.results["vertex_count"] = space.extreme_points().size();
    run.results["facet_count"] = space.extreme_functionals().size();
    run.results["facets"] = facets;
    run.results["face_counts"] = counts;
    run.results["euler_characteristic"] = chi;
    run.results["euler_expected"] = expected;
    run.results["euler_ok"] = chi == expected;

    auto& o = run.text;
    o << "space " << space.name() << " over " << field_tag_name(K::tag) << "\n";
    o << "dim " << space.dim() << "\n";
    o << "vertices " << space.extreme_points().size() << "\n";
    o << "facets " << space.extreme_functionals().size() << "\n";
    for (std::size_t d = 0; d < space.dim(); ++d)
      o << "  " << d << "-faces " << ball.count_faces(d) << "\n";
    o << "euler characteristic " << chi << " (expected " << expected << ", "
      << (chi == expected ? "ok" : "MISMATCH") << ")\n";
    if (chi != expected) fail(ErrorCode::InternalInconsistency, "Euler relation violated");
  });
}

// ---- point smooth ---------------------------------------------------------

void point_smooth(Run& run, const std::string& ref, const std::string& vec) {
  const SpaceSource src = load_space_source(ref);
  note_inputs(run, src);
  with_field(resolve_field({&src}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto space = build_space<K>(src);
    const auto x = parse_vector<K>(vec);
    require(x.size() == space.dim(), ErrorCode::DimensionMismatch,
            "vector has " + std::to_string(x.size()) + " coordinates, space dimension is " +
                std::to_string(space.dim()));
    const auto support = support_set(space, x);
    const auto face = space.ball().minimal_face(x);
    const std::size_t k = point_smoothness(space, x);  // throws on disagreement
    json fs = json::array();
    for (const auto& f : support.extreme_functionals) fs.push_back(to_json(f));
    run.results = {{"point", to_json(x)},
                   {"smoothness", k},
                   {"active_facets", support.facet_indices},
                   {"support_functionals", fs},
                   {"minimal_face_dim", face.dim},
                   {"dim_minus_face_dim", space.dim() - face.dim},
                   {"consistent", k == space.dim() - face.dim}};
    auto& o = run.text;
    o << "point " << to_string(x) << " in " << space.name() << "\n";
    o << "k = " << k << " (" << k << "-smooth)\n";
    o << "active extreme functionals: " << join(support.extreme_functionals) << "\n";
    o << "minimal face dimension " << face.dim << ", dim - face dim = " << space.dim() - face.dim
      << " (" << (k == space.dim() - face.dim ? "agrees" : "DISAGREES") << ")\n";
  });
}

// ---- op order / op index --------------------------------------------------

template <ExactField K>
bool is_bundled_example(const LinearOperator<K>& t) {
  if constexpr (!std::is_same_v<K, QuadSqrt2>) {
    return false;
  } else {
    const auto reference = build_operator<QuadSqrt2>(load_operator_source("paper-example"));
    return t.domain().extreme_points() == reference.domain().extreme_points() &&
           t.codomain().extreme_points() == reference.codomain().extreme_points() &&
           t.matrix() == reference.matrix();
  }
}

template <ExactField K>
LinearOperator<K> unit_operator(Run& run, const LinearOperator<K>& t) {
  const K n = operator_norm_and_attainment(t).operator_norm;
  if (n == K(1)) return t;
  require(!n.is_zero(), ErrorCode::ZeroOperator, "the operator is zero");
  run.warnings.push_back("operator has norm " + n.to_string() + "; analysing T/||T||");
  return normalized(t);
}

template <ExactField K>
void print_report(std::ostream& o, const SmoothnessReport<K>& r, const LinearOperator<K>& t) {
  o << "operator " << t.domain().name() << " -> " << t.codomain().name() << " over "
    << field_tag_name(K::tag) << "\n";
  o << "norm " << r.attainment.operator_norm.to_string() << "\n";
  o << "attaining extreme points (one per +- pair): " << r.attainment.attaining_vertices.size()
    << "\n";
  for (std::size_t i = 0; i < r.attainment.attaining_vertices.size(); ++i)
    o << "  " << to_string(r.attainment.attaining_vertices[i]) << " -> "
      << to_string(r.image_supports[i].base_point) << "  image smoothness "
      << r.image_supports[i].smoothness_order << "\n";
  o << "lower bound (sum over attaining basis) " << r.min_bound << "\n";
  const auto& c = r.computation;
  o << "domain basis: " << join(c.domain_basis) << "\n";
  o << "functional basis: " << join(c.functional_basis) << "\n";
  o << "Z generators: " << c.z_generators.size() << "\n";
  for (const auto& g : c.z_generators) o << "  " << to_string(g.entries) << "\n";
  o << "index of smoothness " << r.index << "\n";
  o << "oracle order " << r.oracle_order << "\n";
  o << "order of smoothness " << r.index << " (" << r.index << "-smooth)\n";
  o << "extreme contraction: " << (r.extreme_contraction() ? "yes" : "no") << " (index "
    << r.index << ", dim X * dim Y = " << r.max_order << ")\n";
}

void op_order(Run& run, const std::string& ref) {
  const OperatorSource src = load_operator_source(ref);
  if (!src.path.empty()) run.inputs.push_back(src.path);
  note_inputs(run, src.domain);
  note_inputs(run, src.codomain);
  with_field(resolve_field({&src.domain, &src.codomain}, src.declared, run.field),
             [&]<ExactField K>() {
               const auto raw = build_operator<K>(src);
               const auto t = unit_operator(run, raw);
               const auto report = order_of_smoothness(t);
               run.results = report_to_json(report);
               run.results["operator"] =
                   operator_to_json(raw, src.domain.reference, src.codomain.reference);
               print_report(run.text, report, t);
               if (is_bundled_example(raw)) {
                 run.results["published_order"] = kPublishedExampleOrder;
                 run.results["matches_published"] = report.index == kPublishedExampleOrder;
                 run.text << "published order " << kPublishedExampleOrder << "\n";
                 if (report.index != kPublishedExampleOrder)
                   run.warnings.push_back(
                       "discrepancy: the published worked example states order " +
                       std::to_string(kPublishedExampleOrder) + "; index and oracle both give " +
                       std::to_string(report.index) +
                       " (the printed Z set lists e11+e22 where the images give e12+e22)");
               }
             });
}

void op_index(Run& run, const std::string& ref, const std::string& set_path) {
  const OperatorSource src = load_operator_source(ref);
  if (!src.path.empty()) run.inputs.push_back(src.path);
  note_inputs(run, src.domain);
  note_inputs(run, src.codomain);
  run.inputs.push_back(set_path);
  with_field(resolve_field({&src.domain, &src.codomain}, src.declared, run.field),
             [&]<ExactField K>() {
               const auto t = unit_operator(run, build_operator<K>(src));
               const auto r = load_vector_list<K>(set_path);
               const auto c = index_computation(t, r);
               run.results = index_to_json(c);
               auto& o = run.text;
               o << "R has " << r.size() << " vectors, " << c.extreme_members.size()
                 << " extreme (one per +- pair)\n";
               o << "domain basis: " << join(c.domain_basis) << "\n";
               o << "functional basis: " << join(c.functional_basis) << "\n";
               o << "Z generators: " << c.z_generators.size() << "\n";
               o << "index " << c.index << "\n";
             });
}

// ---- op construct-face ----------------------------------------------------

template <ExactField K>
FaceDescriptor parse_face(const PolyhedralSpace<K>& x, const std::string& spec) {
  const auto colon = spec.find(':');
  require(colon != std::string::npos, ErrorCode::Syntax,
          "face spec must be point:<v>, vertices:<v1>;<v2>;... or facets:<i>,<j>,...");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (kind == "point") return x.ball().minimal_face(parse_vector<K>(body));
  if (kind == "vertices") {
    std::vector<Vector<K>> vs;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ';')) vs.push_back(parse_vector<K>(item));
    require(!vs.empty(), ErrorCode::Syntax, "no vertices in face spec");
    Vector<K> c = zero_vector<K>(x.dim());
    for (const auto& v : vs) {
      require(v.size() == x.dim(), ErrorCode::DimensionMismatch, "vertex " + to_string(v));
      c = c + v;
    }
    const auto face = x.ball().minimal_face(K(1) / K(static_cast<long>(vs.size())) * c);
    const auto on_face = x.ball().face_vertex_indices(face);
    for (const auto& v : vs) {
      const auto& ext = x.extreme_points();
      const auto it = std::find(ext.begin(), ext.end(), v);
      require(it != ext.end(), ErrorCode::InvalidInput, to_string(v) + " is not a vertex");
      require(std::find(on_face.begin(), on_face.end(),
                        static_cast<std::size_t>(it - ext.begin())) != on_face.end(),
              ErrorCode::NotProperFace, "the listed vertices do not lie on a common proper face");
    }
    return face;
  }
  if (kind == "facets") {
    std::vector<std::size_t> active;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t i = 0;
      try {
        std::size_t used = 0;
        i = std::stoul(item, &used);
        require(used == item.size(), ErrorCode::Syntax, "bad facet index '" + item + "'");
      } catch (const std::logic_error&) {
        fail(ErrorCode::Syntax, "bad facet index '" + item + "'");
      }
      active.push_back(i);
    }
    return x.ball().face_from_facets(active);
  }
  fail(ErrorCode::Syntax, "unknown face spec kind '" + kind + "'");
}

void construct_face(Run& run, const std::string& xref, const std::string& spec,
                    const std::string& yref, const std::string& uvec,
                    const std::string& out_path) {
  const SpaceSource xs = load_space_source(xref);
  const SpaceSource ys = load_space_source(yref);
  note_inputs(run, xs);
  note_inputs(run, ys);
  with_field(resolve_field({&xs, &ys}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto x = shared(build_space<K>(xs));
    const auto y = shared(build_space<K>(ys));
    const auto face = parse_face(*x, spec);
    const auto u = parse_vector<K>(uvec);
    const auto built = construct_face_operator(x, face, y, u);
    const json op_file = operator_to_json(built.op, xref, yref);
    json fb = json::array(), comp = json::array();
    for (const auto& v : built.face_basis) fb.push_back(to_json(v));
    for (const auto& v : built.completion) comp.push_back(to_json(v));
    run.results = {{"operator", op_file},
                   {"face", {{"active_facets", face.active_set}, {"dim", face.dim}}},
                   {"p", built.p},
                   {"q", built.q},
                   {"face_basis", fb},
                   {"completion", comp},
                   {"report", report_to_json(built.report)}};
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      require(static_cast<bool>(out), ErrorCode::InvalidInput, "cannot write " + out_path);
      out << op_file.dump(2) << "\n";
    }
    auto& o = run.text;
    o << "face of dimension " << face.dim << " (active facets " << join(face.active_set)
      << ")\n";
    o << "p = " << built.p << " independent vertices: " << join(built.face_basis) << "\n";
    o << "q = " << built.q << " (smoothness of u = " << to_string(u) << ")\n";
    o << "operator matrix rows: " << join([&] {
      std::vector<Vector<K>> rows;
      for (std::size_t r = 0; r < built.op.matrix().rows(); ++r)
        rows.push_back(built.op.matrix().row(r));
      return rows;
    }()) << "\n";
    o << "verified: ||T|| = 1, M_T = +-F, T(M_T) = {+-u}, order " << built.report.index
      << " = p q\n";
    if (!out_path.empty()) o << "operator file written to " << out_path << "\n";
  });
}

// ---- rank1 orders ---------------------------------------------------------

void rank1_orders(Run& run, std::size_t n, std::size_t m) {
  const auto orders = rank1_admissible_orders(n, m);
  const auto primes = rank1_forbidden_primes(n, m);
  run.results = {{"n", n},
                 {"m", m},
                 {"admissible_orders", std::vector<std::size_t>(orders.begin(), orders.end())},
                 {"forbidden_primes", std::vector<std::size_t>(primes.begin(), primes.end())}};
  auto set_text = [](const std::set<std::size_t>& s) {
    std::string out = "{";
    for (auto it = s.begin(); it != s.end(); ++it)
      out += (it == s.begin() ? "" : ",") + std::to_string(*it);
    return out + "}";
  };
  run.text << "rank-one orders for n = " << n << ", m = " << m << ": " << set_text(orders)
           << "\n";
  run.text << "forbidden primes: " << set_text(primes) << "\n";
}

// ---- ortho ----------------------------------------------------------------

template <ExactField K>
json witness_json(const PolyhedralSpace<K>& space, const BjWitness<K>& w) {
  json parts = json::array();
  for (std::size_t i = 0; i < w.facet_indices.size(); ++i)
    parts.push_back({{"functional", to_json(space.extreme_functionals()[w.facet_indices[i]])},
                     {"weight", w.weights[i].to_string()}});
  return {{"functional", to_json(w.functional)}, {"combination", parts}};
}

template <ExactField K>
std::vector<Vector<K>> parse_vectors(const std::vector<std::string>& texts, std::size_t dim) {
  std::vector<Vector<K>> out;
  for (const auto& t : texts) {
    out.push_back(parse_vector<K>(t));
    require(out.back().size() == dim, ErrorCode::DimensionMismatch,
            "vector " + t + " has the wrong number of coordinates");
  }
  return out;
}

template <ExactField K>
void print_subspace_verdict(Run& run, const PolyhedralSpace<K>& space,
                            const SubspaceVerdict<K>& v) {
  json ws = json::array();
  for (const auto& w : v.witnesses)
    ws.push_back({{"face_active_facets", w.face.active_set},
                  {"point", to_json(w.point)},
                  {"witness", witness_json(space, w.witness)}});
  run.results = {{"orthogonal", v.orthogonal}, {"faces_checked", v.faces_checked},
                 {"witnesses", ws}};
  run.text << (v.orthogonal ? "orthogonal" : "not orthogonal") << " (" << v.faces_checked
           << " faces checked, " << v.witnesses.size() << " met the subspace)\n";
  if (v.failing_point) {
    run.results["failing_point"] = to_json(*v.failing_point);
    run.results["failing_face"] = v.failing_face->active_set;
    run.text << "no support functional annihilates at " << to_string(*v.failing_point)
             << " (face with active facets " << join(v.failing_face->active_set) << ")\n";
  }
}

void ortho_check(Run& run, const std::string& ref, const std::string& xv,
                 const std::vector<std::string>& ys) {
  const SpaceSource src = load_space_source(ref);
  note_inputs(run, src);
  with_field(resolve_field({&src}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto space = build_space<K>(src);
    const auto x = parse_vectors<K>({xv}, space.dim()).front();
    const auto y = parse_vectors<K>(ys, space.dim());
    const BjVerdict<K> v = y.size() == 1 ? bj_vector_vector(space, x, y.front())
                                         : bj_vector_subspace(space, x, Subspace<K>(y));
    run.results = {{"x", to_json(x)}, {"orthogonal", v.orthogonal}};
    run.text << to_string(x) << (v.orthogonal ? " is " : " is not ")
             << "Birkhoff-James orthogonal to " << (y.size() == 1 ? "" : "span ") << join(y)
             << "\n";
    if (v.witness) {
      verify_witness(space, x, y, *v.witness);
      run.results["witness"] = witness_json(space, *v.witness);
      run.text << "witness f = " << to_string(v.witness->functional) << " (verified: f(x) = 1, "
               << "||f|| = 1, f vanishes on the right-hand side)\n";
    }
  });
}

void ortho_subspace(Run& run, const std::string& ref, const std::vector<std::string>& vs,
                    const std::vector<std::string>& ws) {
  const SpaceSource src = load_space_source(ref);
  note_inputs(run, src);
  with_field(resolve_field({&src}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto space = build_space<K>(src);
    const Subspace<K> v(parse_vectors<K>(vs, space.dim()));
    const auto w = parse_vectors<K>(ws, space.dim());
    print_subspace_verdict(run, space,
                           w.size() == 1 ? bj_subspace_vector(space, v, w.front())
                                         : bj_subspace_subspace(space, v, Subspace<K>(w)));
  });
}

void ortho_auerbach(Run& run, const std::string& ref, const std::vector<std::string>& basis) {
  const SpaceSource src = load_space_source(ref);
  note_inputs(run, src);
  with_field(resolve_field({&src}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto space = build_space<K>(src);
    std::vector<Vector<K>> b;
    if (basis.empty())
      for (std::size_t i = 0; i < space.dim(); ++i) b.push_back(unit_vector<K>(space.dim(), i));
    else
      b = parse_vectors<K>(basis, space.dim());
    const auto v = is_strong_auerbach(space, b);
    run.results = {{"basis", json::array()}, {"strong_auerbach", v.strong_auerbach},
                   {"subsets_checked", v.subsets_checked}};
    for (const auto& e : b) run.results["basis"].push_back(to_json(e));
    run.text << "basis " << join(b) << (v.strong_auerbach ? " is" : " is not")
             << " a strong Auerbach basis (" << v.subsets_checked << " subsets checked)\n";
    if (v.failing_subset) {
      run.results["failing_subset"] = *v.failing_subset;
      run.text << "failing subset C = {" << join(*v.failing_subset) << "}\n";
    }
  });
}

void ortho_coapprox(Run& run, const std::string& ref, const std::string& xv,
                    const std::string& y0v, const std::vector<std::string>& ys) {
  const SpaceSource src = load_space_source(ref);
  note_inputs(run, src);
  with_field(resolve_field({&src}, std::nullopt, run.field), [&]<ExactField K>() {
    const auto space = build_space<K>(src);
    const auto x = parse_vectors<K>({xv}, space.dim()).front();
    const auto y0 = parse_vectors<K>({y0v}, space.dim()).front();
    const Subspace<K> y(parse_vectors<K>(ys, space.dim()));
    const auto v = is_best_coapproximation(space, x, y0, y);
    print_subspace_verdict(run, space, v);
    run.results["best_coapproximation"] = v.orthogonal;
    run.text << to_string(y0) << (v.orthogonal ? " is" : " is not")
             << " a best coapproximation to " << to_string(x) << "\n";
  });
}

// ---- selftest -------------------------------------------------------------

void selftest(Run& run, std::uint64_t seed, std::size_t cases) {
  const auto report = run_selftest({seed, cases});
  json props = json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"cases", p.cases},
                     {"passed", p.passed()},
                     {"counterexamples", p.counterexamples}});
    run.text << (p.passed() ? "PASS " : "FAIL ") << p.name << " (" << p.cases << " cases)\n";
    for (const auto& c : p.counterexamples) run.text << "  counterexample " << c << "\n";
  }
  run.results = {{"seed", seed}, {"cases", cases}, {"properties", props},
                 {"passed", report.passed()}};
  run.text << (report.passed() ? "all properties hold" : "PROPERTY VIOLATIONS FOUND") << "\n";
  if (!report.passed()) run.exit_code = 3;
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  run.argv.assign(argv + 1, argv + argc);

  CLI::App app{"Orders of smoothness of operators between polyhedral spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string field_name;
  app.add_flag("--json", run.as_json, "Emit a machine-readable JSON report");
  app.add_flag("--timing", run.timing, "Include wall-clock timing in the report");
  app.add_option("--field", field_name, "Scalar field: rational or quad-sqrt2");

  std::function<void()> action;
  std::string a, b, c, d, out_path, set_path;
  std::vector<std::string> many, many2;
  std::size_t n = 0, m = 0, cases = 200;
  std::uint64_t seed = 42;

  auto* space = app.add_subcommand("space", "Space queries")->require_subcommand(1);
  auto* info = space->add_subcommand("info", "Vertices, facets, face counts, Euler check");
  info->add_option("space", a, "Space file or builtin (ell1:n, ellinf:n, paper-example)")
      ->required();
  info->callback([&] { action = [&] { space_info(run, a); }; });

  auto* point = app.add_subcommand("point", "Point queries")->require_subcommand(1);
  auto* smooth = point->add_subcommand("smooth", "Order of smoothness of a unit vector");
  smooth->add_option("space", a)->required();
  smooth->add_option("vector", b, "Comma-separated exact literals")->required();
  smooth->callback([&] { action = [&] { point_smooth(run, a, b); }; });

  auto* op = app.add_subcommand("op", "Operator queries")->require_subcommand(1);
  auto* order = op->add_subcommand("order", "Full smoothness report");
  order->add_option("op-file", a, "Operator file or paper-example")->required();
  order->callback([&] { action = [&] { op_order(run, a); }; });
  auto* index = op->add_subcommand("index", "Index of smoothness for a given set R");
  index->add_option("op-file", a)->required();
  index->add_option("--set", set_path, "JSON file with the vectors of R")->required();
  index->callback([&] { action = [&] { op_index(run, a, set_path); }; });
  auto* cface = op->add_subcommand("construct-face", "Operator attaining its norm on a face");
  cface->add_option("space-x", a)->required();
  cface->add_option("face-spec", b, "point:<v> | vertices:<v1>;<v2>;... | facets:<i>,<j>,...")
      ->required();
  cface->add_option("space-y", c)->required();
  cface->add_option("unit-u", d)->required();
  cface->add_option("--out", out_path, "Write the constructed operator file here");
  cface->callback([&] { action = [&] { construct_face(run, a, b, c, d, out_path); }; });

  auto* rank1 = app.add_subcommand("rank1", "Rank-one operators")->require_subcommand(1);
  auto* orders = rank1->add_subcommand("orders", "Admissible orders and forbidden primes");
  orders->add_option("n", n)->required()->check(CLI::PositiveNumber);
  orders->add_option("m", m)->required()->check(CLI::PositiveNumber);
  orders->callback([&] { action = [&] { rank1_orders(run, n, m); }; });

  auto* ortho = app.add_subcommand("ortho", "Birkhoff-James orthogonality")->require_subcommand(1);
  auto* check = ortho->add_subcommand("check", "x against a vector or the span of several");
  check->add_option("space", a)->required();
  check->add_option("x", b)->required();
  check->add_option("y", many)->required();
  check->callback([&] { action = [&] { ortho_check(run, a, b, many); }; });
  auto* sub = ortho->add_subcommand("subspace", "span V against a vector or span W");
  sub->add_option("space", a)->required();
  sub->add_option("--v", many, "Basis vectors of V")->required();
  sub->add_option("--w", many2, "Vectors spanning the right-hand side")->required();
  sub->callback([&] { action = [&] { ortho_subspace(run, a, many, many2); }; });
  auto* auer = ortho->add_subcommand("auerbach", "Strong Auerbach test (default: standard basis)");
  auer->add_option("space", a)->required();
  auer->add_option("basis", many);
  auer->callback([&] { action = [&] { ortho_auerbach(run, a, many); }; });
  auto* coap = ortho->add_subcommand("coapprox", "Is y0 a best coapproximation to x out of Y?");
  coap->add_option("space", a)->required();
  coap->add_option("x", b)->required();
  coap->add_option("y0", c)->required();
  coap->add_option("basis", many, "Basis of Y")->required();
  coap->callback([&] { action = [&] { ortho_coapprox(run, a, b, c, many); }; });

  auto* st = app.add_subcommand("selftest", "Seeded property suites");
  st->add_option("--seed", seed);
  st->add_option("--cases", cases)->check(CLI::PositiveNumber);
  st->callback([&] { action = [&] { selftest(run, seed, cases); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (!field_name.empty()) run.field = parse_field_tag(field_name);
    action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_internal(e.code()) ? 3 : 2;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (run.as_json) {
    json doc = {{"command", run.argv},
                {"inputs_digest", inputs_digest(run)},
                {"results", run.results},
                {"warnings", run.warnings}};
    if (run.timing) doc["timing_ms"] = ms;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << run.text.str();
    for (const auto& w : run.warnings) std::cout << "warning: " << w << "\n";
    if (run.timing) std::cout << "time " << std::fixed << std::setprecision(3) << ms << " ms\n";
  }
  return run.exit_code;
}
