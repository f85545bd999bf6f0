#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "infotweet/classifier.hpp"

namespace infotweet {

enum class EnsembleStrategy { Mse, Ase };

std::string to_string(EnsembleStrategy s);
EnsembleStrategy parse_strategy(const std::string& name);

// N identically configured members, one training seed each.
struct EnsembleConfig {
    std::size_t n_members = 3;
    EnsembleStrategy strategy = EnsembleStrategy::Ase;
    std::vector<std::uint64_t> member_seeds;  // exactly n_members, pairwise distinct
    TrainConfig base_train_config;

    void validate() const;
    // Seeds derived as seed, seed+1, ..., seed+N-1 from the base config.
    static EnsembleConfig with_derived_seeds(std::size_t n, EnsembleStrategy strategy,
                                             TrainConfig base);
};

// Per-member prediction lists, all covering the same record sequence.
using MemberOutputs = std::vector<std::vector<ClassProbabilities>>;

// Average self-ensemble: per record, the arithmetic mean of the member
// probability vectors. Convex combination, so rows stay valid. DataError
// on empty or misaligned input.
std::vector<ClassProbabilities> aggregate_ase(const MemberOutputs& members);

// Majority-class self-ensemble: per record, the mode of the member labels.
// Even-member ties fall back to the average rule when probabilities are
// supplied; an exactly tied average (or no probabilities) resolves to
// UNINFORMATIVE.
std::vector<ClassLabel> aggregate_mse(const std::vector<std::vector<ClassLabel>>& member_labels,
                                      const MemberOutputs* member_probs = nullptr);

struct MemberArtifacts {
    std::uint64_t seed = 0;
    MetricLog log;
    std::vector<ClassProbabilities> predictions;  // on the target split
};

struct EnsembleResult {
    std::vector<ClassLabel> labels;  // aggregated predictions on target
    std::vector<MemberArtifacts> members;
};

using EncoderFactory =
    std::function<std::unique_ptr<TrainableEncoder>(std::uint64_t seed)>;

// Trains one member per seed via fine_tune, predicts the target split with
// each, and aggregates with the configured strategy. Any member failure
// aborts with the member index in the message.
EnsembleResult run_self_ensemble(const EnsembleConfig& config,
                                 const EncoderFactory& make_encoder,
                                 const DatasetSplit& train, const DatasetSplit& valid,
                                 const DatasetSplit& target,
                                 const PreprocessingProfile& profile);

}  // namespace infotweet
