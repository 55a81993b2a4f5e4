#include "qinvar/document.hpp"

#include "qinvar/errors.hpp"
#include "qinvar/json_text.hpp"

namespace qinvar {

using nlohmann::json;

namespace {

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json spinor_json(const C2Vec& v) { return json::array({complex_json(v.c0), complex_json(v.c1)}); }

[[noreturn]] void schema_fail(const std::string& what) {
  throw SchemaError("model document: " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema_fail("missing field '" + std::string(key) + "' in " + where);
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_fail(where + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) schema_fail(where + " must be finite");
  return x;
}

const json& array_of(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) {
    schema_fail(where + " must be an array of " + std::to_string(n));
  }
  return j;
}

Complex complex_from(const json& j, const std::string& where) {
  const json& a = array_of(j, 2, where);
  return {number(a[0], where + "[0]"), number(a[1], where + "[1]")};
}

C2Vec spinor_from(const json& j, const std::string& where) {
  const json& a = array_of(j, 2, where);
  return {complex_from(a[0], where + "[0]"), complex_from(a[1], where + "[1]")};
}

ObservableRecord observable_from(const json& j, const std::string& where) {
  ObservableRecord rec;
  const json& name = field(j, "name", where);
  if (!name.is_string()) schema_fail(where + ".name must be a string");
  rec.name = name.get<std::string>();

  const json& vals = array_of(field(j, "values", where), 2, where + ".values");
  rec.values = {number(vals[0], where + ".values[0]"), number(vals[1], where + ".values[1]")};

  const json& bv = array_of(field(j, "bloch_vector", where), 3, where + ".bloch_vector");
  rec.bloch_vector = {number(bv[0], where + ".bloch_vector[0]"),
                      number(bv[1], where + ".bloch_vector[1]"),
                      number(bv[2], where + ".bloch_vector[2]")};

  const std::string ow = where + ".operator";
  const json& op = array_of(field(j, "operator", where), 2, ow);
  const json& row0 = array_of(op[0], 2, ow + "[0]");
  const json& row1 = array_of(op[1], 2, ow + "[1]");
  rec.op = {complex_from(row0[0], ow + "[0][0]"), complex_from(row0[1], ow + "[0][1]"),
            complex_from(row1[0], ow + "[1][0]"), complex_from(row1[1], ow + "[1][1]")};

  const std::string ew = where + ".eigenbasis";
  const json& eb = array_of(field(j, "eigenbasis", where), 2, ew);
  rec.eigenbasis = {spinor_from(eb[0], ew + "[0]"), spinor_from(eb[1], ew + "[1]")};
  return rec;
}

}  // namespace

ModelDocument make_document(const QuantumModel& m, const ModelClass& cls, bool real_embedding,
                            double eps_k, double transition_tol) {
  auto record = [&](int i) {
    return ObservableRecord{m.observables[i].name(),
                            {m.observables[i].x1(), m.observables[i].x2()},
                            m.vectors[i].vec(),
                            m.operators[i].mat(),
                            {m.eigenbases[i].first.amplitudes(), m.eigenbases[i].second.amplitudes()}};
  };
  return ModelDocument{m.probs, {record(0), record(1), record(2)}, cls, real_embedding, eps_k,
                       transition_tol};
}

json to_json(const ModelDocument& doc) {
  json obs = json::array();
  for (const ObservableRecord& r : doc.observables) {
    obs.push_back({
        {"name", r.name},
        {"values", {r.values[0], r.values[1]}},
        {"bloch_vector", {r.bloch_vector.x, r.bloch_vector.y, r.bloch_vector.z}},
        {"operator",
         json::array({json::array({complex_json(r.op.m00), complex_json(r.op.m01)}),
                      json::array({complex_json(r.op.m10), complex_json(r.op.m11)})})},
        {"eigenbasis", json::array({spinor_json(r.eigenbasis[0]), spinor_json(r.eigenbasis[1])})},
    });
  }
  return {
      {"schema", kModelSchema},
      {"probabilities", {{"p", doc.probs.p()}, {"q", doc.probs.q()}, {"r", doc.probs.r()}}},
      {"observables", obs},
      {"classification",
       {{"class", to_string(doc.classification.kind)}, {"K", doc.classification.K}}},
      {"real_embedding", doc.real_embedding},
      {"tolerances", {{"eps_k", doc.eps_k}, {"transition", doc.transition_tol}}},
  };
}

ModelDocument document_from_json(const json& j) {
  if (!j.is_object()) schema_fail("top level must be an object");
  const json& schema = field(j, "schema", "document");
  if (!schema.is_string() || schema.get<std::string>() != kModelSchema) {
    schema_fail("schema must be '" + std::string(kModelSchema) + "'");
  }

  const json& pj = field(j, "probabilities", "document");
  std::optional<ProbTriple> probs;
  try {
    probs = ProbTriple::make(number(field(pj, "p", "probabilities"), "p"),
                             number(field(pj, "q", "probabilities"), "q"),
                             number(field(pj, "r", "probabilities"), "r"));
  } catch (const BoundaryViolation& e) {
    schema_fail(e.what());
  }

  const json& oj = array_of(field(j, "observables", "document"), 3, "observables");
  std::array<ObservableRecord, 3> records{
      observable_from(oj[0], "observables[0]"), observable_from(oj[1], "observables[1]"),
      observable_from(oj[2], "observables[2]")};

  const json& cj = field(j, "classification", "document");
  const json& cls_name = field(cj, "class", "classification");
  if (!cls_name.is_string()) schema_fail("classification.class must be a string");
  ModelKind kind;
  try {
    kind = model_kind_from_string(cls_name.get<std::string>());
  } catch (const InvalidArgument& e) {
    schema_fail(e.what());
  }
  const double k = number(field(cj, "K", "classification"), "classification.K");

  const json& re = field(j, "real_embedding", "document");
  if (!re.is_boolean()) schema_fail("real_embedding must be a boolean");

  const json& tj = field(j, "tolerances", "document");
  const double eps_k = number(field(tj, "eps_k", "tolerances"), "tolerances.eps_k");
  const double tol = number(field(tj, "transition", "tolerances"), "tolerances.transition");
  if (eps_k < 0.0 || tol <= 0.0) schema_fail("tolerances must be positive");

  return ModelDocument{*probs, std::move(records), {kind, k}, re.get<bool>(), eps_k, tol};
}

std::string serialize(const ModelDocument& doc) { return to_json_text(to_json(doc)); }

ModelDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_fail(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

QuantumModel to_model(const ModelDocument& doc) {
  try {
    auto obs = [&](int i) {
      const ObservableRecord& r = doc.observables[i];
      return Observable::make(r.name, r.values[0], r.values[1]);
    };
    auto vec = [&](int i) { return BlochVec::normalized(doc.observables[i].bloch_vector); };
    auto op = [&](int i) { return Herm2::make(doc.observables[i].op); };
    auto basis = [&](int i) {
      return Eigenbasis{Spinor::make(doc.observables[i].eigenbasis[0]),
                        Spinor::make(doc.observables[i].eigenbasis[1])};
    };
    return QuantumModel{doc.probs,
                        {vec(0), vec(1), vec(2)},
                        {obs(0), obs(1), obs(2)},
                        {op(0), op(1), op(2)},
                        {basis(0), basis(1), basis(2)}};
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    schema_fail(e.what());
  }
}

}  // namespace qinvar
