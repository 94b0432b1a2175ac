#include "ksmooth/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ksmooth {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::InvalidInput, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "line L, column C" for a byte offset (1-based, as reported by the parser).
std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::optional<std::pair<std::string, std::size_t>> parse_builtin(const std::string& ref) {
  if (ref == "paper-example") return std::pair<std::string, std::size_t>{ref, 3};
  for (const std::string prefix : {"ell1", "ellinf"}) {
    if (ref.size() > prefix.size() + 1 && ref.compare(0, prefix.size(), prefix) == 0 &&
        ref[prefix.size()] == ':') {
      std::size_t n = 0;
      const char* first = ref.data() + prefix.size() + 1;
      const char* last = ref.data() + ref.size();
      auto [ptr, ec] = std::from_chars(first, last, n);
      require(ec == std::errc() && ptr == last && n > 0, ErrorCode::Syntax,
              "bad builtin space '" + ref + "': expected " + prefix + ":<positive integer>");
      return std::pair<std::string, std::size_t>{prefix, n};
    }
  }
  return std::nullopt;
}

std::optional<FieldTag> declared_field(const json& doc, const std::string& where) {
  if (!doc.contains("field")) return std::nullopt;
  require(doc["field"].is_string(), ErrorCode::InvalidInput, where + ": /field must be a string");
  return parse_field_tag(doc["field"].get<std::string>());
}

template <ExactField K>
std::vector<Vector<K>> parse_rows(const json& rows, const std::string& where) {
  require(rows.is_array(), ErrorCode::InvalidInput, where + " must be an array of arrays");
  std::vector<Vector<K>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string here = where + "/" + std::to_string(i);
    require(rows[i].is_array(), ErrorCode::InvalidInput, here + " must be an array");
    Vector<K> v;
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      v.push_back(parse_scalar<K>(rows[i][j], here + "/" + std::to_string(j)));
    out.push_back(std::move(v));
  }
  return out;
}

template <ExactField K>
void check_field(const SpaceSource& s) {
  if (s.declared && *s.declared != K::tag)
    fail(ErrorCode::FieldMismatch, "space '" + s.reference + "' is over " +
                                       std::string(field_tag_name(*s.declared)) +
                                       ", computation runs over " +
                                       std::string(field_tag_name(K::tag)));
}

const char* kPaperExampleMatrix[3][3] = {
    {"1", "r2-1", "1"}, {"r2-1", "1", "-1"}, {"1", "0", "1"}};

}  // namespace

json read_json_file(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Syntax, path.string() + ": " + position(text, e.byte) + ": malformed JSON");
  }
}

template <ExactField K>
Vector<K> parse_vector(std::string_view text) {
  std::string_view body = trim(text);
  if (!body.empty() && ((body.front() == '(' && body.back() == ')') ||
                        (body.front() == '[' && body.back() == ']'))) {
    body = trim(body.substr(1, body.size() - 2));
  }
  require(!body.empty(), ErrorCode::Syntax, "empty vector '" + std::string(text) + "'");
  Vector<K> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string_view piece =
        trim(body.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                 : comma - start));
    try {
      out.push_back(K::parse(piece));
    } catch (const Error& e) {
      fail(e.code(), "component " + std::to_string(out.size() + 1) + " of '" +
                         std::string(text) + "': " + e.detail());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <ExactField K>
K parse_scalar(const json& value, const std::string& where) {
  try {
    if (value.is_string()) return K::parse(value.get<std::string>());
    if (value.is_number_integer()) return K::parse(value.dump());
  } catch (const Error& e) {
    fail(e.code(), where + ": " + e.detail());
  }
  fail(ErrorCode::InvalidInput, where + ": scalars must be literal strings or integers");
}

template <ExactField K>
json to_json(const Vector<K>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

template <ExactField K>
json to_json(const Matrix<K>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

SpaceSource load_space_source(const std::string& reference, const fs::path& base) {
  SpaceSource s;
  s.reference = reference;
  if (auto b = parse_builtin(reference)) {
    s.builtin = b->first;
    s.builtin_dim = b->second;
    if (b->first == "paper-example") s.declared = FieldTag::QuadSqrt2;
    return s;
  }
  fs::path path(reference);
  if (path.is_relative() && !base.empty()) path = base / path;
  s.path = path;
  s.document = read_json_file(path);
  require(s.document.is_object(), ErrorCode::InvalidInput, path.string() + ": expected an object");
  require(s.document.contains("vertices"), ErrorCode::InvalidInput,
          path.string() + ": missing /vertices");
  s.declared = declared_field(s.document, path.string());
  return s;
}

OperatorSource load_operator_source(const std::string& reference) {
  OperatorSource op;
  op.reference = reference;
  if (reference == "paper-example") {
    op.domain = load_space_source("paper-example");
    op.codomain = load_space_source("ellinf:3");
    op.declared = FieldTag::QuadSqrt2;
    op.matrix = json::array();
    for (const auto& row : kPaperExampleMatrix) op.matrix.push_back({row[0], row[1], row[2]});
    return op;
  }
  const fs::path path(reference);
  op.path = path;
  const json doc = read_json_file(path);
  require(doc.is_object(), ErrorCode::InvalidInput, reference + ": expected an object");
  for (const char* key : {"domain", "codomain", "matrix"})
    require(doc.contains(key), ErrorCode::InvalidInput, reference + ": missing /" + key);
  require(doc["domain"].is_string() && doc["codomain"].is_string(), ErrorCode::InvalidInput,
          reference + ": /domain and /codomain must be strings");
  const fs::path base = path.parent_path();
  op.domain = load_space_source(doc["domain"].get<std::string>(), base);
  op.codomain = load_space_source(doc["codomain"].get<std::string>(), base);
  op.declared = declared_field(doc, reference);
  op.matrix = doc["matrix"];
  return op;
}

FieldTag resolve_field(const std::vector<const SpaceSource*>& spaces,
                       std::optional<FieldTag> declared, std::optional<FieldTag> requested) {
  std::optional<FieldTag> field = requested;
  std::string origin = "--field";
  auto merge = [&](std::optional<FieldTag> f, const std::string& who) {
    if (!f) return;
    if (field && *field != *f)
      fail(ErrorCode::FieldMismatch, who + " is over " + std::string(field_tag_name(*f)) +
                                         " but " + origin + " is over " +
                                         std::string(field_tag_name(*field)));
    if (!field) origin = who;
    field = f;
  };
  merge(declared, "the operator file");
  for (const SpaceSource* s : spaces) merge(s->declared, "space '" + s->reference + "'");
  return field.value_or(FieldTag::Rational);
}

template <ExactField K>
PolyhedralSpace<K> build_space(const SpaceSource& source) {
  check_field<K>(source);
  if (source.builtin) {
    if (*source.builtin == "ell1") return ell1<K>(source.builtin_dim);
    if (*source.builtin == "ellinf") return ellinf<K>(source.builtin_dim);
    if constexpr (std::is_same_v<K, QuadSqrt2>) return paper_example_space();
    fail(ErrorCode::FieldMismatch, "paper-example requires quad-sqrt2");
  }
  const json& doc = source.document;
  const std::string where = source.reference;
  auto points = parse_rows<K>(doc["vertices"], where + ": /vertices");
  require(!points.empty(), ErrorCode::InvalidInput, where + ": /vertices is empty");
  std::size_t dim = points.front().size();
  if (doc.contains("dim")) {
    require(doc["dim"].is_number_unsigned(), ErrorCode::InvalidInput,
            where + ": /dim must be a positive integer");
    dim = doc["dim"].get<std::size_t>();
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    require(points[i].size() == dim, ErrorCode::DimensionMismatch,
            where + ": /vertices/" + std::to_string(i) + " has " +
                std::to_string(points[i].size()) + " coordinates, expected " +
                std::to_string(dim));
  std::string name = where;
  if (doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
  return PolyhedralSpace<K>::from_vertices(name, points);
}

template <ExactField K>
LinearOperator<K> build_operator(const OperatorSource& source) {
  if (source.declared && *source.declared != K::tag)
    fail(ErrorCode::FieldMismatch, source.reference + " declares field " +
                                       std::string(field_tag_name(*source.declared)));
  auto x = std::make_shared<const PolyhedralSpace<K>>(build_space<K>(source.domain));
  auto y = std::make_shared<const PolyhedralSpace<K>>(build_space<K>(source.codomain));
  const auto rows = parse_rows<K>(source.matrix, source.reference + ": /matrix");
  require(rows.size() == y->dim(), ErrorCode::DimensionMismatch,
          source.reference + ": /matrix has " + std::to_string(rows.size()) +
              " rows, codomain dimension is " + std::to_string(y->dim()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    require(rows[i].size() == x->dim(), ErrorCode::DimensionMismatch,
            source.reference + ": /matrix/" + std::to_string(i) + " has " +
                std::to_string(rows[i].size()) + " entries, domain dimension is " +
                std::to_string(x->dim()));
  return LinearOperator<K>(x, y, Matrix<K>::from_rows(rows, x->dim()));
}

template <ExactField K>
std::vector<Vector<K>> load_vector_list(const fs::path& path) {
  const json doc = read_json_file(path);
  if (doc.is_object()) {
    require(doc.contains("vectors"), ErrorCode::InvalidInput, path.string() + ": missing /vectors");
    return parse_rows<K>(doc["vectors"], path.string() + ": /vectors");
  }
  return parse_rows<K>(doc, path.string());
}

template <ExactField K>
json space_to_json(const PolyhedralSpace<K>& space) {
  json vs = json::array();
  for (const auto& v : space.extreme_points()) vs.push_back(to_json(v));
  return {{"name", space.name()},
          {"field", field_tag_name(K::tag)},
          {"dim", space.dim()},
          {"vertices", vs}};
}

template <ExactField K>
json operator_to_json(const LinearOperator<K>& op, const std::string& domain_ref,
                      const std::string& codomain_ref) {
  return {{"domain", domain_ref},
          {"codomain", codomain_ref},
          {"field", field_tag_name(K::tag)},
          {"matrix", to_json(op.matrix())}};
}

template <ExactField K>
json index_to_json(const IndexComputation<K>& c) {
  json members = json::array();
  for (std::size_t i = 0; i < c.extreme_members.size(); ++i)
    members.push_back({{"vector", to_json(c.extreme_members[i])},
                       {"alpha", to_json(c.alphas[i])},
                       {"support_functionals", c.member_functionals[i]}});
  json basis = json::array(), fbasis = json::array(), z = json::array();
  for (const auto& v : c.domain_basis) basis.push_back(to_json(v));
  for (const auto& f : c.functional_basis) fbasis.push_back(to_json(f));
  for (const auto& g : c.z_generators) z.push_back(to_json(g.entries));
  return {{"domain_basis", basis},
          {"functional_basis", fbasis},
          {"extreme_members", members},
          {"z_generators", z},
          {"index", c.index}};
}

template <ExactField K>
json report_to_json(const SmoothnessReport<K>& r) {
  json verts = json::array();
  for (const auto& v : r.attainment.attaining_vertices) verts.push_back(to_json(v));
  json images = json::array();
  for (const auto& s : r.image_supports) {
    json fs = json::array();
    for (const auto& f : s.extreme_functionals) fs.push_back(to_json(f));
    images.push_back({{"image", to_json(s.base_point)},
                      {"support_functionals", fs},
                      {"smoothness", s.smoothness_order}});
  }
  return {{"operator_norm", r.attainment.operator_norm.to_string()},
          {"attaining_vertices", verts},
          {"attaining_basis", r.attainment.basis_indices},
          {"images", images},
          {"min_bound", r.min_bound},
          {"index_computation", index_to_json(r.computation)},
          {"index", r.index},
          {"oracle_order", r.oracle_order},
          {"max_order", r.max_order},
          {"extreme_contraction", r.extreme_contraction()}};
}

#define KSMOOTH_IO(K)                                                                       \
  template Vector<K> parse_vector<K>(std::string_view);                                     \
  template K parse_scalar<K>(const json&, const std::string&);                              \
  template json to_json<K>(const Vector<K>&);                                               \
  template json to_json<K>(const Matrix<K>&);                                               \
  template PolyhedralSpace<K> build_space<K>(const SpaceSource&);                           \
  template LinearOperator<K> build_operator<K>(const OperatorSource&);                      \
  template std::vector<Vector<K>> load_vector_list<K>(const fs::path&);                     \
  template json space_to_json<K>(const PolyhedralSpace<K>&);                                \
  template json operator_to_json<K>(const LinearOperator<K>&, const std::string&,           \
                                    const std::string&);                                    \
  template json index_to_json<K>(const IndexComputation<K>&);                               \
  template json report_to_json<K>(const SmoothnessReport<K>&);

KSMOOTH_IO(Rational)
KSMOOTH_IO(QuadSqrt2)

}  // namespace ksmooth
