#pragma once

// Serialized form of a synthesized model ("qinvar-model/1").
//
// {
//   "schema": "qinvar-model/1",
//   "probabilities": {"p": .., "q": .., "r": ..},
//   "observables": [            // A, B, C in order
//     {"name": "A", "values": [x1, x2], "bloch_vector": [x, y, z],
//      "operator": [[[re, im], [re, im]], [[re, im], [re, im]]],   // rows
//      "eigenbasis": [[[re, im], [re, im]], [[re, im], [re, im]]]}, // x1, x2
//     ...],
//   "classification": {"class": "...", "K": ..},
//   "real_embedding": bool,
//   "tolerances": {"eps_k": .., "transition": ..}
// }
//
// The document keeps the raw numbers it was given; invariants are checked
// when it is turned back into a QuantumModel or verified.

#include <array>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qinvar/invariants.hpp"
#include "qinvar/model.hpp"

namespace qinvar {

inline constexpr std::string_view kModelSchema = "qinvar-model/1";

struct ObservableRecord {
  std::string name;
  std::array<double, 2> values{};
  Vec3 bloch_vector;
  Mat2 op;
  std::array<C2Vec, 2> eigenbasis{};
};

struct ModelDocument {
  ProbTriple probs;
  std::array<ObservableRecord, 3> observables;
  ModelClass classification;
  bool real_embedding = false;
  double eps_k = kDefaultEpsK;
  double transition_tol = 1e-10;
};

ModelDocument make_document(const QuantumModel& m, const ModelClass& cls, bool real_embedding,
                            double eps_k, double transition_tol);

nlohmann::json to_json(const ModelDocument& doc);

/// Throws SchemaError on missing fields, wrong shapes or invalid values.
ModelDocument document_from_json(const nlohmann::json& j);

std::string serialize(const ModelDocument& doc);

/// Throws SchemaError, including for malformed JSON.
ModelDocument parse_document(std::string_view text);

/// Rebuilds the model. Throws SchemaError if an operator is not Hermitian,
/// values are degenerate, or a vector or spinor is zero.
QuantumModel to_model(const ModelDocument& doc);

}  // namespace qinvar
