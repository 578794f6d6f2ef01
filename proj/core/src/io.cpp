#include "hugeobj/io.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include <json.hpp>

namespace hugeobj {

using nlohmann::json;

namespace {

json domain_to_json(const DomainSpec& dom) {
  switch (dom.kind()) {
    case DomainSpec::Kind::bitstrings:
      return {{"kind", "bitstrings"}, {"bits", dom.bits()}};
    case DomainSpec::Kind::indexed:
      return {{"kind", "indexed"}, {"cardinality", dom.cardinality()}};
    case DomainSpec::Kind::pairs:
      return {{"kind", "pairs"}, {"inner", domain_to_json(dom.inner())}};
  }
  throw std::logic_error("unreachable");
}

DomainSpec domain_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "bitstrings") return DomainSpec::bitstrings(j.at("bits").get<int>());
  if (kind == "indexed")
    return DomainSpec::indexed(j.at("cardinality").get<std::uint64_t>());
  if (kind == "pairs") return DomainSpec::pairs(domain_from_json(j.at("inner")));
  throw std::invalid_argument("unknown domain kind: " + kind);
}

json term_to_json(const PredictorTerm& term, const DomainSpec& dom) {
  json j;
  j["name"] = term.name;
  j["weight"] = term.weight;
  if (dom.cardinality() > kEnumerableMax) {
    j["ref"] = term.name;  // loader must resolve by name
    return j;
  }
  // Inline representation: index list for indicator tests, a value table
  // otherwise.
  bool indicator = true;
  std::vector<Element> members;
  std::vector<double> values;
  values.reserve(dom.cardinality());
  for (Element x = 0; x < dom.cardinality(); ++x) {
    double v = term.test(x);
    values.push_back(v);
    if (v == 1.0) members.push_back(x);
    else if (v != 0.0) indicator = false;
  }
  if (indicator) j["members"] = members;
  else j["values"] = values;
  return j;
}

PredictorTerm term_from_json(const json& j, const TestResolver& resolver) {
  PredictorTerm term;
  term.name = j.value("name", std::string());
  term.weight = j.at("weight").get<double>();
  if (j.contains("members")) {
    auto members = std::make_shared<const std::vector<Element>>(
        j["members"].get<std::vector<Element>>());
    term.test = [members](Element x) {
      return std::binary_search(members->begin(), members->end(), x) ? 1.0 : 0.0;
    };
  } else if (j.contains("values")) {
    auto values = std::make_shared<const std::vector<double>>(
        j["values"].get<std::vector<double>>());
    term.test = [values](Element x) { return (*values)[x]; };
  } else if (j.contains("ref")) {
    if (!resolver)
      throw std::invalid_argument("predictor_from_json: term '" + term.name +
                                  "' needs a test resolver");
    term.test = resolver(j["ref"].get<std::string>());
    if (!term.test)
      throw std::invalid_argument("predictor_from_json: unresolved test '" + term.name +
                                  "'");
  } else {
    throw std::invalid_argument("predictor_from_json: malformed term");
  }
  return term;
}

json predictor_to_json_obj(const CappedPredictor& p) {
  json j;
  j["domain"] = domain_to_json(p.domain);
  j["base"] = p.base;
  json terms = json::array();
  for (const auto& t : p.terms) terms.push_back(term_to_json(t, p.domain));
  j["terms"] = terms;
  return j;
}

CappedPredictor predictor_from_json_obj(const json& j, const TestResolver& resolver) {
  CappedPredictor p;
  p.domain = domain_from_json(j.at("domain"));
  p.base = j.at("base").get<double>();
  for (const auto& t : j.at("terms")) p.append(term_from_json(t, resolver));
  return p;
}

}  // namespace

std::string predictor_to_json(const CappedPredictor& p) {
  return predictor_to_json_obj(p).dump(2);
}

CappedPredictor predictor_from_json(const std::string& text, const TestResolver& resolver) {
  return predictor_from_json_obj(json::parse(text), resolver);
}

std::string fixed_weight_to_json(const FixedWeightModel& model) {
  json j;
  j["predictor"] = predictor_to_json_obj(model.predictor());
  j["k"] = model.support_size();
  j["eps"] = model.epsilon();
  j["leaf_depth"] = model.tree().leaf_depth;
  j["split_samples"] = model.tree().split_samples;
  j["split_constant"] = model.tree().split_constant;
  j["scheme_version"] = OracleSeed::kSchemeVersion;
  return j.dump(2);
}

FixedWeightModel fixed_weight_from_json(const std::string& text,
                                        const TestResolver& resolver) {
  json j = json::parse(text);
  if (j.at("scheme_version").get<std::uint32_t>() != OracleSeed::kSchemeVersion)
    throw std::invalid_argument("fixed_weight_from_json: scheme version mismatch");
  CappedPredictor p = predictor_from_json_obj(j.at("predictor"), resolver);
  FixedWeightModel model(std::move(p), j.at("k").get<std::uint64_t>(),
                         j.at("eps").get<double>(), SplitMode::automatic,
                         j.at("split_constant").get<double>());
  if (model.tree().leaf_depth != j.at("leaf_depth").get<int>() ||
      model.tree().split_samples != j.at("split_samples").get<std::uint64_t>())
    throw std::invalid_argument("fixed_weight_from_json: tree shape mismatch");
  return model;
}

std::string coordinate_predictors_to_json(const CoordinatePredictors& preds,
                                          std::optional<int> out_degree) {
  json j;
  j["domain"] = domain_to_json(preds.domain);
  j["out_bits"] = preds.out_bits;
  if (out_degree) j["out_degree"] = *out_degree;
  json blocks = json::array();
  for (const auto& p : preds.coords) blocks.push_back(predictor_to_json_obj(p));
  j["coords"] = blocks;
  return j.dump(2);
}

CoordinatePredictors coordinate_predictors_from_json(const std::string& text,
                                                     int* out_degree,
                                                     const TestResolver& resolver) {
  json j = json::parse(text);
  CoordinatePredictors preds;
  preds.domain = domain_from_json(j.at("domain"));
  preds.out_bits = j.at("out_bits").get<int>();
  for (const auto& block : j.at("coords"))
    preds.coords.push_back(predictor_from_json_obj(block, resolver));
  if (static_cast<int>(preds.coords.size()) != preds.out_bits)
    throw std::invalid_argument("coordinate_predictors_from_json: block count");
  if (out_degree) *out_degree = j.value("out_degree", 0);
  return preds;
}

std::string rejection_sampler_to_json(const CappedPredictor& p,
                                      std::uint64_t max_rounds) {
  json j;
  j["predictor"] = predictor_to_json_obj(p);
  j["max_rounds"] = max_rounds;
  return j.dump(2);
}

std::string edge_count_table_to_json(const EdgeCountTable& k) {
  json rows = json::array();
  for (int i = 0; i < k.parts(); ++i) {
    json row = json::array();
    for (int j = 0; j < k.parts(); ++j) row.push_back(k.at(i, j));
    rows.push_back(row);
  }
  return json{{"parts", k.parts()}, {"k", rows}}.dump(2);
}

EdgeCountTable edge_count_table_from_json(const std::string& text) {
  json j = json::parse(text);
  int t = j.at("parts").get<int>();
  EdgeCountTable k(t);
  const json& rows = j.at("k");
  for (int i = 0; i < t; ++i)
    for (int c = i; c < t; ++c) {
      std::uint64_t v = rows.at(static_cast<std::size_t>(i))
                            .at(static_cast<std::size_t>(c))
                            .get<std::uint64_t>();
      if (rows.at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(i)).get<std::uint64_t>() != v)
        throw std::invalid_argument("edge_count_table_from_json: not symmetric");
      k.set(i, c, v);
    }
  return k;
}

std::string partition_to_json(const Partition& part) {
  json j;
  if (part.is_contiguous()) {
    std::vector<std::uint64_t> sizes;
    for (int i = 0; i < part.parts(); ++i) sizes.push_back(part.part_size(i));
    j["sizes"] = sizes;
  } else {
    std::vector<int> assign(part.vertex_count());
    for (Element v = 0; v < part.vertex_count(); ++v) assign[v] = part.part_of(v);
    j["parts"] = part.parts();
    j["assignment"] = assign;
  }
  return j.dump(2);
}

Partition partition_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.contains("sizes")) {
    auto sizes = j["sizes"].get<std::vector<std::uint64_t>>();
    std::uint64_t n = 0;
    for (auto s : sizes) n += s;
    return Partition::contiguous(n, sizes);
  }
  return Partition::from_assignment(j.at("assignment").get<std::vector<int>>(),
                                    j.at("parts").get<int>());
}

}  // namespace hugeobj
