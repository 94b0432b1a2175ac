#pragma once

// Space and operator files.
//
//   space:    {"name": ..., "field": "rational" | "quad-sqrt2", "dim": n,
//              "vertices": [[literal, ...], ...]}
//   operator: {"domain": <path or builtin>, "codomain": <path or builtin>,
//              "field": optional, "matrix": [[literal, ...], ...]}
//
// Builtin spaces are "ell1:n", "ellinf:n" and "paper-example"; "paper-example"
// also names the bundled operator. Matrix rows are codomain coordinates, so
// column j is the image of the j-th basis vector. Scalars are strings in the
// exact literal grammar; plain JSON integers are accepted too.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksmooth/operators.hpp"

namespace ksmooth {

using json = nlohmann::json;

/// Comma-separated literals, optionally wrapped in () or [].
template <ExactField K>
Vector<K> parse_vector(std::string_view text);

template <ExactField K>
K parse_scalar(const json& value, const std::string& where);

template <ExactField K>
json to_json(const Vector<K>& v);

template <ExactField K>
json to_json(const Matrix<K>& m);

struct SpaceSource {
  std::string reference;               // as written by the user
  std::optional<std::string> builtin;  // "ell1", "ellinf" or "paper-example"
  std::size_t builtin_dim = 0;
  std::optional<FieldTag> declared;    // field fixed by the source itself
  json document;                       // file contents for non-builtins
  std::filesystem::path path;          // resolved file path for non-builtins
};

/// Resolves a builtin spec or reads a space file (relative to `base`).
SpaceSource load_space_source(const std::string& reference,
                              const std::filesystem::path& base = {});

struct OperatorSource {
  std::string reference;
  SpaceSource domain;
  SpaceSource codomain;
  std::optional<FieldTag> declared;
  json matrix;
  std::filesystem::path path;  // empty for the bundled operator
};

OperatorSource load_operator_source(const std::string& reference);

/// The single field a computation over these sources runs in. Builtins
/// ell1/ellinf adopt whatever the others require; conflicting declarations
/// are a FIELD_MISMATCH. Defaults to rational.
FieldTag resolve_field(const std::vector<const SpaceSource*>& spaces,
                       std::optional<FieldTag> declared = std::nullopt,
                       std::optional<FieldTag> requested = std::nullopt);

template <ExactField K>
PolyhedralSpace<K> build_space(const SpaceSource& source);

template <ExactField K>
LinearOperator<K> build_operator(const OperatorSource& source);

/// {"vectors": [[...], ...]} or a bare array of vectors.
template <ExactField K>
std::vector<Vector<K>> load_vector_list(const std::filesystem::path& path);

template <ExactField K>
json space_to_json(const PolyhedralSpace<K>& space);

template <ExactField K>
json operator_to_json(const LinearOperator<K>& op, const std::string& domain_ref,
                      const std::string& codomain_ref);

template <ExactField K>
json report_to_json(const SmoothnessReport<K>& report);

template <ExactField K>
json index_to_json(const IndexComputation<K>& computation);

json read_json_file(const std::filesystem::path& path);

}  // namespace ksmooth
