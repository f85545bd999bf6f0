#include "infotweet/classifier.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infotweet/adam.hpp"
#include "infotweet/errors.hpp"
#include "infotweet/evaluation.hpp"
#include "infotweet/nn.hpp"

namespace infotweet {

ClassifierHead::ClassifierHead(Eigen::Index hidden_size)
    : weights(MatrixX::Zero(2, hidden_size)),
      bias(MatrixX::Zero(2, 1)),
      weights_grad(MatrixX::Zero(2, hidden_size)),
      bias_grad(MatrixX::Zero(2, 1)) {}

std::vector<ParameterRef> ClassifierHead::parameters() {
    return {{"head.weights", &weights, &weights_grad},
            {"head.bias", &bias, &bias_grad}};
}

ClassProbabilities classify(const EncodedSequence& h, const ClassifierHead& head) {
    if (h.cls_hidden.size() != head.weights.cols()) {
        throw DataError("encoder hidden size " + std::to_string(h.cls_hidden.size()) +
                        " does not match head dimension " +
                        std::to_string(head.weights.cols()));
    }
    VectorX logits = head.weights * h.cls_hidden + head.bias.col(0);
    if (!logits.allFinite()) throw DataError("non-finite classifier logits");
    VectorX p = nn::softmax(logits);
    return {Eigen::Vector2d(p[0], p[1])};
}

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw DataError("learning rate must be positive");
    if (max_sequence_length == 0) throw DataError("max sequence length must be positive");
    if (batch_size == 0) throw DataError("batch size must be positive");
}

std::string metric_log_to_ndjson(const MetricLog& log) {
    std::string out;
    for (const EpochMetrics& m : log) {
        nlohmann::json j{{"epoch", m.epoch},
                         {"precision", m.precision},
                         {"recall", m.recall},
                         {"f1", m.f1},
                         {"loss", m.loss}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

MetricLog metric_log_from_ndjson(const std::string& ndjson) {
    MetricLog log;
    std::istringstream in(ndjson);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        log.push_back({j.at("epoch").get<std::size_t>(), j.at("precision").get<double>(),
                       j.at("recall").get<double>(), j.at("f1").get<double>(),
                       j.at("loss").get<double>()});
    }
    return log;
}

namespace {

struct NormalizedSplit {
    std::vector<std::string> texts;
    const DatasetSplit* source;
};

NormalizedSplit normalize_split(const DatasetSplit& split,
                                const PreprocessingProfile& profile) {
    NormalizedSplit out;
    out.source = &split;
    out.texts.reserve(split.size());
    for (const Tweet& t : split.tweets) out.texts.push_back(normalize(t.text, profile));
    return out;
}

// cross-entropy of one example; accumulates head and encoder gradients
double supervised_step(TrainableEncoder& encoder, ClassifierHead& head,
                       const std::string& text, ClassLabel gold) {
    VectorX h = encoder.forward_training(text);
    VectorX logits = head.weights * h + head.bias.col(0);
    if (!logits.allFinite()) throw DataError("non-finite logits during training");
    VectorX p = nn::softmax(logits);

    const Eigen::Index y = gold == ClassLabel::Informative ? 0 : 1;
    double loss = -std::log(std::max(p[y], 1e-300));

    VectorX dlogits = p;
    dlogits[y] -= 1.0;
    head.weights_grad += dlogits * h.transpose();
    head.bias_grad.col(0) += dlogits;
    encoder.backward_from_cls(head.weights.transpose() * dlogits);
    return loss;
}

}  // namespace

MetricLog fine_tune(TrainableEncoder& encoder, ClassifierHead& head,
                    const DatasetSplit& train, const DatasetSplit& valid,
                    const PreprocessingProfile& profile, const TrainConfig& config) {
    config.validate();
    if (!train.labeled || !valid.labeled) {
        throw DataError("fine_tune requires labeled train and validation splits");
    }
    if (train.size() == 0) throw DataError("fine_tune: empty training split");

    encoder.set_max_sequence_length(config.max_sequence_length);
    NormalizedSplit train_norm = normalize_split(train, profile);

    std::vector<ParameterRef> params = encoder.parameters();
    for (ParameterRef p : head.parameters()) params.push_back(p);
    AdamOptimizer adam(params, config.learning_rate);

    Rng rng(config.seed);
    MetricLog log;

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;

        for (std::size_t batch_start = 0; batch_start < order.size();
             batch_start += config.batch_size) {
            std::size_t batch_end =
                std::min(batch_start + config.batch_size, order.size());
            adam.zero_gradients();
            double batch_loss = 0.0;
            for (std::size_t i = batch_start; i < batch_end; ++i) {
                std::size_t idx = order[i];
                batch_loss += supervised_step(encoder, head, train_norm.texts[idx],
                                              train.labels[idx]);
            }
            if (!std::isfinite(batch_loss)) {
                throw DataError("non-finite training loss at epoch " +
                                std::to_string(epoch) + ", batch starting at record " +
                                std::to_string(batch_start));
            }
            const double inv = 1.0 / static_cast<double>(batch_end - batch_start);
            for (const ParameterRef& p : params) *p.grad *= inv;
            adam.step();
            epoch_loss += batch_loss;
        }

        std::vector<ClassProbabilities> valid_probs =
            predict(encoder, head, valid, profile, config);
        EvaluationReport report = evaluate(to_labels(valid_probs), valid.labels);
        log.push_back({epoch, report.precision, report.recall, report.f1,
                       epoch_loss / static_cast<double>(train.size())});
    }
    return log;
}

std::vector<double> lm_adapt(TrainableEncoder& encoder,
                             std::span<const std::string> corpus,
                             const TrainConfig& config) {
    config.validate();
    if (!encoder.supports_masked_lm()) {
        throw UnsupportedOperationError(
            "lm_adapt: encoder has no self-supervised objective");
    }
    if (corpus.empty()) throw DataError("lm_adapt: empty corpus");

    encoder.set_max_sequence_length(config.max_sequence_length);
    std::vector<ParameterRef> params = encoder.parameters();
    AdamOptimizer adam(params, config.learning_rate);
    Rng rng(config.seed);

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<double> epoch_losses;
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        rng.shuffle(order);
        double loss_sum = 0.0;
        std::size_t position_count = 0;

        for (std::size_t batch_start = 0; batch_start < order.size();
             batch_start += config.batch_size) {
            std::size_t batch_end =
                std::min(batch_start + config.batch_size, order.size());
            adam.zero_gradients();
            std::size_t batch_positions = 0;
            for (std::size_t i = batch_start; i < batch_end; ++i) {
                auto [loss, n] = encoder.masked_lm_step(corpus[order[i]], rng);
                loss_sum += loss;
                batch_positions += n;
            }
            if (!std::isfinite(loss_sum)) {
                throw DataError("non-finite adaptation loss at epoch " +
                                std::to_string(epoch));
            }
            if (batch_positions == 0) continue;
            const double inv = 1.0 / static_cast<double>(batch_positions);
            for (const ParameterRef& p : params) *p.grad *= inv;
            adam.step();
            position_count += batch_positions;
        }
        epoch_losses.push_back(position_count == 0
                                   ? 0.0
                                   : loss_sum / static_cast<double>(position_count));
    }
    return epoch_losses;
}

double masked_lm_loss(TrainableEncoder& encoder, std::span<const std::string> corpus,
                      std::uint64_t seed) {
    if (!encoder.supports_masked_lm()) {
        throw UnsupportedOperationError(
            "masked_lm_loss: encoder has no self-supervised objective");
    }
    Rng rng(seed);
    double loss_sum = 0.0;
    std::size_t positions = 0;
    for (const std::string& text : corpus) {
        auto [loss, n] = encoder.masked_lm_step(text, rng);
        loss_sum += loss;
        positions += n;
    }
    encoder.zero_gradients();  // measurement only
    return positions == 0 ? 0.0 : loss_sum / static_cast<double>(positions);
}

std::vector<ClassProbabilities> predict(EncoderModel& encoder, const ClassifierHead& head,
                                        const DatasetSplit& tweets,
                                        const PreprocessingProfile& profile,
                                        const TrainConfig& config) {
    encoder.set_max_sequence_length(config.max_sequence_length);
    std::vector<ClassProbabilities> out;
    out.reserve(tweets.size());
    for (const Tweet& t : tweets.tweets) {
        EncodedSequence h = encoder.encode(normalize(t.text, profile));
        out.push_back(classify(h, head));
    }
    return out;
}

std::vector<ClassLabel> to_labels(const std::vector<ClassProbabilities>& probs) {
    std::vector<ClassLabel> labels;
    labels.reserve(probs.size());
    for (const ClassProbabilities& p : probs) labels.push_back(p.predicted());
    return labels;
}

}  // namespace infotweet
