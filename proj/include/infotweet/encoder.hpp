#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infotweet/entity_integration.hpp"
#include "infotweet/rng.hpp"
#include "infotweet/types.hpp"

namespace infotweet {

// Final hidden state of the classification token; the whole-sequence
// representation the classifier head consumes.
struct EncodedSequence {
    VectorX cls_hidden;
};

struct ParameterRef {
    std::string name;
    MatrixX* value;
    MatrixX* grad;
};

class EncoderModel {
public:
    virtual ~EncoderModel() = default;

    // Deterministic for fixed parameters; input is already-normalized text.
    virtual EncodedSequence encode(std::string_view text) const = 0;
    virtual const VocabularyView& vocabulary() const = 0;
    virtual Eigen::Index hidden_size() const = 0;

    // Runtime truncation limit in tokens, [CLS] included. Encoders with a
    // hard positional limit clamp to it.
    virtual void set_max_sequence_length(std::size_t) {}
};

// Masking recipe for continued masked-token pretraining: exactly
// ceil(0.15 * n) of n candidate positions are selected; of those, 80%
// become the mask token, 10% a random regular token, 10% keep their
// original id (and still contribute to the loss).
enum class MaskAction { Mask, RandomToken, KeepOriginal };

struct MaskedPosition {
    std::size_t position;  // index into the candidate positions
    MaskAction action;
};

inline constexpr double kMaskFraction = 0.15;

std::vector<MaskedPosition> plan_masking(std::size_t n_positions, Rng& rng);

// Gradient-capable encoder. encode() stays the frozen path; the training
// loop drives forward_training/backward_from_cls one sequence at a time,
// with gradients accumulating until zero_gradients().
class TrainableEncoder : public EncoderModel {
public:
    virtual std::vector<ParameterRef> parameters() = 0;
    virtual void zero_gradients() = 0;

    // Forward pass retaining activations for the next backward call.
    virtual VectorX forward_training(std::string_view text) = 0;
    // Backpropagates d(loss)/d(cls_hidden) into parameter gradients.
    virtual void backward_from_cls(const VectorX& d_cls) = 0;

    virtual bool supports_masked_lm() const { return false; }
    // One self-supervised step on one sequence: plans masking, accumulates
    // gradients, returns (summed loss, number of predicted positions).
    virtual std::pair<double, std::size_t> masked_lm_step(std::string_view text, Rng& rng);
};

}  // namespace infotweet
