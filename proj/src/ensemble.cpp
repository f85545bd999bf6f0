#include "infotweet/ensemble.hpp"

#include <set>

#include "infotweet/errors.hpp"

namespace infotweet {

std::string to_string(EnsembleStrategy s) {
    return s == EnsembleStrategy::Mse ? "mse" : "ase";
}

EnsembleStrategy parse_strategy(const std::string& name) {
    if (name == "mse" || name == "MSE") return EnsembleStrategy::Mse;
    if (name == "ase" || name == "ASE") return EnsembleStrategy::Ase;
    throw UsageError("unknown ensemble strategy \"" + name + "\" (valid: mse, ase)");
}

void EnsembleConfig::validate() const {
    if (n_members == 0) throw DataError("ensemble needs at least one member");
    if (member_seeds.size() != n_members) {
        throw DataError("expected " + std::to_string(n_members) + " member seeds, got " +
                        std::to_string(member_seeds.size()));
    }
    std::set<std::uint64_t> distinct(member_seeds.begin(), member_seeds.end());
    if (distinct.size() != member_seeds.size()) {
        throw DataError("member seeds must be pairwise distinct");
    }
    base_train_config.validate();
}

EnsembleConfig EnsembleConfig::with_derived_seeds(std::size_t n, EnsembleStrategy strategy,
                                                  TrainConfig base) {
    EnsembleConfig cfg;
    cfg.n_members = n;
    cfg.strategy = strategy;
    cfg.base_train_config = base;
    for (std::size_t k = 0; k < n; ++k) cfg.member_seeds.push_back(base.seed + k);
    return cfg;
}

namespace {

void check_alignment(std::size_t members, std::size_t first_len,
                     std::size_t member_index, std::size_t len) {
    if (len != first_len) {
        throw DataError("ensemble member " + std::to_string(member_index) + " has " +
                        std::to_string(len) + " predictions, expected " +
                        std::to_string(first_len) + " (members=" +
                        std::to_string(members) + ")");
    }
}

}  // namespace

std::vector<ClassProbabilities> aggregate_ase(const MemberOutputs& members) {
    if (members.empty()) throw DataError("aggregate_ase: no members");
    const std::size_t n_records = members[0].size();
    for (std::size_t k = 1; k < members.size(); ++k) {
        check_alignment(members.size(), n_records, k, members[k].size());
    }

    std::vector<ClassProbabilities> out(n_records);
    const double inv_n = 1.0 / static_cast<double>(members.size());
    for (std::size_t i = 0; i < n_records; ++i) {
        Eigen::Vector2d sum = Eigen::Vector2d::Zero();
        for (const auto& member : members) sum += member[i].p;
        out[i].p = sum * inv_n;
    }
    return out;
}

std::vector<ClassLabel> aggregate_mse(
    const std::vector<std::vector<ClassLabel>>& member_labels,
    const MemberOutputs* member_probs) {
    if (member_labels.empty()) throw DataError("aggregate_mse: no members");
    const std::size_t n_records = member_labels[0].size();
    for (std::size_t k = 1; k < member_labels.size(); ++k) {
        check_alignment(member_labels.size(), n_records, k, member_labels[k].size());
    }
    if (member_probs != nullptr && member_probs->size() != member_labels.size()) {
        throw DataError("aggregate_mse: probability members misaligned with label members");
    }

    std::vector<ClassLabel> out;
    out.reserve(n_records);
    for (std::size_t i = 0; i < n_records; ++i) {
        std::size_t informative = 0;
        for (const auto& member : member_labels) {
            if (member[i] == ClassLabel::Informative) ++informative;
        }
        const std::size_t uninformative = member_labels.size() - informative;
        if (informative > uninformative) {
            out.push_back(ClassLabel::Informative);
        } else if (uninformative > informative) {
            out.push_back(ClassLabel::Uninformative);
        } else if (member_probs != nullptr) {
            // tie: average rule over this record, exact tie stays negative
            Eigen::Vector2d sum = Eigen::Vector2d::Zero();
            for (const auto& member : *member_probs) sum += member[i].p;
            out.push_back(sum[0] > sum[1] ? ClassLabel::Informative
                                          : ClassLabel::Uninformative);
        } else {
            out.push_back(ClassLabel::Uninformative);
        }
    }
    return out;
}

EnsembleResult run_self_ensemble(const EnsembleConfig& config,
                                 const EncoderFactory& make_encoder,
                                 const DatasetSplit& train, const DatasetSplit& valid,
                                 const DatasetSplit& target,
                                 const PreprocessingProfile& profile) {
    config.validate();
    if (!train.labeled) throw DataError("run_self_ensemble: train split must be labeled");

    EnsembleResult result;
    MemberOutputs outputs;
    std::vector<std::vector<ClassLabel>> labels;

    for (std::size_t k = 0; k < config.n_members; ++k) {
        try {
            TrainConfig member_config = config.base_train_config;
            member_config.seed = config.member_seeds[k];

            std::unique_ptr<TrainableEncoder> encoder = make_encoder(member_config.seed);
            ClassifierHead head(encoder->hidden_size());
            MetricLog log = fine_tune(*encoder, head, train, valid, profile, member_config);
            std::vector<ClassProbabilities> preds =
                predict(*encoder, head, target, profile, member_config);

            labels.push_back(to_labels(preds));
            outputs.push_back(preds);
            result.members.push_back({member_config.seed, std::move(log), std::move(preds)});
        } catch (const std::exception& e) {
            throw DataError("ensemble member " + std::to_string(k) + " (seed " +
                            std::to_string(config.member_seeds[k]) + ") failed: " + e.what());
        }
    }

    if (config.strategy == EnsembleStrategy::Ase) {
        result.labels = to_labels(aggregate_ase(outputs));
    } else {
        result.labels = aggregate_mse(labels, &outputs);
    }
    return result;
}

}  // namespace infotweet
