#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infotweet/data_io.hpp"
#include "infotweet/encoder.hpp"
#include "infotweet/preprocessing.hpp"

namespace infotweet {

// Probability vector in class order [INFORMATIVE, UNINFORMATIVE].
struct ClassProbabilities {
    Eigen::Vector2d p;

    double informative() const { return p[0]; }
    double uninformative() const { return p[1]; }
    // Exact ties go to UNINFORMATIVE, the conservative default.
    ClassLabel predicted() const {
        return p[0] > p[1] ? ClassLabel::Informative : ClassLabel::Uninformative;
    }
};

// Task-specific softmax head over the [CLS] hidden state. The bias is an
// extension of the plain W h product and defaults to zero so the
// zero-weight head yields exactly uniform probabilities.
struct ClassifierHead {
    MatrixX weights;  // 2 x d
    MatrixX bias;     // 2 x 1
    MatrixX weights_grad;
    MatrixX bias_grad;

    explicit ClassifierHead(Eigen::Index hidden_size);
    std::vector<ParameterRef> parameters();
};

// p(c|h) = softmax(W h + bias). DataError on dimension mismatch or
// non-finite logits.
ClassProbabilities classify(const EncodedSequence& h, const ClassifierHead& head);

struct TrainConfig {
    std::size_t epochs = 5;
    double learning_rate = 2e-5;
    std::uint64_t seed = 42;
    std::size_t max_sequence_length = 128;
    std::size_t batch_size = 32;

    void validate() const;
};

struct EpochMetrics {
    std::size_t epoch = 0;  // 1-based
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double loss = 0.0;  // mean train cross-entropy over the epoch
};

using MetricLog = std::vector<EpochMetrics>;

// Newline-delimited JSON, one {epoch, precision, recall, f1, loss} object
// per epoch.
std::string metric_log_to_ndjson(const MetricLog& log);
MetricLog metric_log_from_ndjson(const std::string& ndjson);

// Supervised fine-tuning: cross-entropy on softmax(W h + bias) against the
// gold labels for config.epochs passes over train, validation
// precision/recall/F1 logged after every epoch. Last-epoch parameters are
// kept. The whole trajectory is a deterministic function of (seed, config).
MetricLog fine_tune(TrainableEncoder& encoder, ClassifierHead& head,
                    const DatasetSplit& train, const DatasetSplit& valid,
                    const PreprocessingProfile& profile, const TrainConfig& config);

// Continues the encoder's own self-supervised objective on the corpus for
// config.epochs; the classification head is untouched. Returns the mean
// per-position loss of each epoch. UnsupportedOperationError for encoders
// without such an objective.
std::vector<double> lm_adapt(TrainableEncoder& encoder,
                             std::span<const std::string> corpus,
                             const TrainConfig& config);

// Mean masked-prediction loss over the corpus without updating anything;
// the measurement half of lm_adapt, for before/after comparisons.
double masked_lm_loss(TrainableEncoder& encoder, std::span<const std::string> corpus,
                      std::uint64_t seed);

// One ClassProbabilities per record, in order; profile normalization and
// truncation to config.max_sequence_length applied before encoding.
std::vector<ClassProbabilities> predict(EncoderModel& encoder, const ClassifierHead& head,
                                        const DatasetSplit& tweets,
                                        const PreprocessingProfile& profile,
                                        const TrainConfig& config);

std::vector<ClassLabel> to_labels(const std::vector<ClassProbabilities>& probs);

}  // namespace infotweet
