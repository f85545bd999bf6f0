#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infotweet/ensemble.hpp"

namespace infotweet {

// Positive class is INFORMATIVE throughout.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

struct EvaluationReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    ConfusionCounts counts;
    // set when a 0/0 metric was forced to 0 by convention
    bool degenerate = false;
};

// DataError on length mismatch or empty input.
ConfusionCounts confusion(std::span<const ClassLabel> predicted,
                          std::span<const ClassLabel> gold);

// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = 2PR/(P+R); 0/0 cases
// yield 0 with the degenerate flag set.
EvaluationReport precision_recall_f1(const ConfusionCounts& counts);

EvaluationReport evaluate(std::span<const ClassLabel> predicted,
                          std::span<const ClassLabel> gold);

// ---------------------------------------------------------------------------
// Experiment grid: learning-rate sweep x (ensemble strategy, variant).

enum class FineTuningVariant { None, Ei, Lm };

std::string to_string(FineTuningVariant v);
FineTuningVariant parse_variant(const std::string& name);

struct ExperimentGrid {
    std::vector<double> learning_rates;
    std::vector<std::pair<EnsembleStrategy, FineTuningVariant>> strategies;
    std::size_t epochs = 5;
    std::size_t n_members = 3;
    TrainConfig base;  // seed / batch size / max length; lr+epochs come per cell

    void validate() const;
};

struct GridCell {
    std::string cell_id;
    double learning_rate = 0.0;
    EnsembleStrategy strategy = EnsembleStrategy::Mse;
    FineTuningVariant variant = FineTuningVariant::None;
    std::optional<EvaluationReport> report;      // empty on failure
    std::string error;                           // failure diagnostic
    std::vector<ClassLabel> predictions;         // on the validation split
};

struct GridResults {
    std::vector<GridCell> cells;

    std::string to_ndjson() const;   // machine-readable, full precision
    std::string render_table() const;  // strategy rows x learning-rate groups
};

// Runs every cell on the validation split. EI cells need an annotator;
// cells that cannot run record their error in place and the grid
// continues.
GridResults run_experiment_grid(const ExperimentGrid& grid, const DatasetSplit& train,
                                const DatasetSplit& valid,
                                const PreprocessingProfile& profile,
                                const EncoderFactory& make_encoder,
                                const NerAnnotator* annotator = nullptr);

// ---------------------------------------------------------------------------
// Published-results fixture: transcribed (P, R, F1) triples.

struct PublishedResult {
    std::string table;
    std::string row;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    // Two published rows do not satisfy the harmonic-mean identity; they
    // are transcribed verbatim and flagged.
    bool identity_consistent = true;
};

std::vector<PublishedResult> load_published_results(const std::string& json_text);

}  // namespace infotweet
