#pragma once

#include <string>

#include "json.hpp"

#include "frobreal/aut.hpp"
#include "frobreal/frobenius.hpp"
#include "frobreal/graded_space.hpp"
#include "frobreal/multi_op.hpp"
#include "frobreal/prop.hpp"

namespace frobreal {

using Json = nlohmann::ordered_json;

/// Malformed JSON document; path names the offending member, e.g. "mu.entries[3]".
class FormatError : public std::invalid_argument {
 public:
  FormatError(const std::string& message, std::string path)
      : std::invalid_argument(message + " (at " + path + ")"), message_(message), path_(std::move(path)) {}
  const std::string& message() const { return message_; }
  const std::string& path() const { return path_; }
  /// The same error seen from an enclosing member.
  FormatError within(const std::string& prefix) const {
    return FormatError(message_, path_.empty() ? prefix : prefix + "." + path_);
  }

 private:
  std::string message_;
  std::string path_;
};

Json to_json(const FieldSpec& field);
FieldSpec field_from_json(const Json& j);

/// {field, basis: [[label, degree], ...]}
Json to_json(const GradedSpace& space);
SpacePtr space_from_json(const Json& j);

/// {source_arity, target_arity, degree, entries}; entries group outputs by
/// input tuple: [[in labels], [[out labels], coeff], ...].
Json to_json(const MultiOp& op);
MultiOp op_from_json(const Json& j, const SpacePtr& space);

Json to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

/// ["gen", name], ["id", k], ["perm", [images]], ["hcomp", l, r], ["vcomp", upper, lower]
Json to_json(const Diagram& d);
/// Throws DiagramError whose path locates the node, e.g. "root.lower.right".
Diagram diagram_from_json(const Json& j, const Signature& sig);

/// {space, signature, assignment: {name: op}}
Json to_json(const Interpretation& interp);
Interpretation interpretation_from_json(const Json& j);

/// {space, mu, eta, delta, eps, degree_m}
Json to_json(const FrobeniusStructure& s);
FrobeniusStructure structure_from_json(const Json& j);

Json to_json(const Tensor& t);
Json to_json(const AxiomReport& r);

/// Matrix rows.
Json to_json(const GradedAutomorphism& g);
Json to_json(const OrbitResult& r);
Json to_json(const AutOrbitReport& r);

/// Two-space indentation with a trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

}  // namespace frobreal
