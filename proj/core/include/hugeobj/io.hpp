#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hugeobj/fixed_weight.hpp"
#include "hugeobj/partition.hpp"
#include "hugeobj/predictor.hpp"
#include "hugeobj/regular_graphs.hpp"
#include "hugeobj/vector_boost.hpp"

namespace hugeobj {

// JSON serialization of the learned artifacts. Set-backed terms carry an
// inline membership index list when the domain is enumerable; otherwise a
// named reference that the loader resolves through `TestResolver`.
using TestResolver =
    std::function<std::function<double(Element)>(const std::string& name)>;

std::string predictor_to_json(const CappedPredictor& p);
CappedPredictor predictor_from_json(const std::string& text,
                                    const TestResolver& resolver = nullptr);

// Fixed-weight model descriptor: (predictor, k, eps, tree shape,
// scheme_version). A model rebuilt from its descriptor answers bit-exactly
// under every seed.
std::string fixed_weight_to_json(const FixedWeightModel& model);
FixedWeightModel fixed_weight_from_json(const std::string& text,
                                        const TestResolver& resolver = nullptr);

// n per-coordinate predictor blocks plus the out-degree for graph mode.
std::string coordinate_predictors_to_json(const CoordinatePredictors& preds,
                                          std::optional<int> out_degree = std::nullopt);
CoordinatePredictors coordinate_predictors_from_json(const std::string& text,
                                                     int* out_degree = nullptr,
                                                     const TestResolver& resolver = nullptr);

// Rejection-sampler descriptor: predictor plus the round cap.
std::string rejection_sampler_to_json(const CappedPredictor& p, std::uint64_t max_rounds);

// Symmetric integer matrix.
std::string edge_count_table_to_json(const EdgeCountTable& k);
EdgeCountTable edge_count_table_from_json(const std::string& text);

// Contiguous partitions serialize as their size list; explicit ones as the
// full vertex -> part assignment.
std::string partition_to_json(const Partition& part);
Partition partition_from_json(const std::string& text);

}  // namespace hugeobj
