#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "infotweet/encoder.hpp"
#include "infotweet/wordpiece.hpp"

namespace infotweet {

struct ReferenceEncoderConfig {
    Eigen::Index hidden_size = 64;
    Eigen::Index num_layers = 2;
    Eigen::Index num_heads = 4;
    Eigen::Index ffn_size = 256;
    Eigen::Index max_positions = 128;
    double init_stddev = 0.02;
};

// Compact trainable transformer: token + position embeddings, a stack of
// post-norm self-attention blocks, [CLS] pooling, and a tied-embedding
// masked-token head for continued pretraining. Small enough for CPU tests
// while exercising the same classification path as the full-scale models.
class ReferenceEncoder : public TrainableEncoder {
public:
    ReferenceEncoder(WordPieceVocab vocab, ReferenceEncoderConfig config,
                     std::uint64_t init_seed);

    EncodedSequence encode(std::string_view text) const override;
    const VocabularyView& vocabulary() const override { return vocab_; }
    Eigen::Index hidden_size() const override { return config_.hidden_size; }
    void set_max_sequence_length(std::size_t max_len) override;

    std::vector<ParameterRef> parameters() override;
    void zero_gradients() override;
    VectorX forward_training(std::string_view text) override;
    void backward_from_cls(const VectorX& d_cls) override;

    bool supports_masked_lm() const override { return true; }
    std::pair<double, std::size_t> masked_lm_step(std::string_view text, Rng& rng) override;

    const ReferenceEncoderConfig& config() const { return config_; }
    const WordPieceVocab& word_pieces() const { return vocab_; }

private:
    struct Tensor {
        std::string name;
        MatrixX value;
        MatrixX grad;
    };

    struct LayerNormCache {
        MatrixX xhat;
        VectorX inv_std;
    };

    struct LayerCache {
        MatrixX x_in;
        MatrixX q, k, v;
        std::vector<MatrixX> attn;  // per head, L x L
        MatrixX context;
        LayerNormCache ln1;
        MatrixX x_ln1;    // FFN input
        MatrixX ffn_pre;  // pre-activation
        MatrixX ffn_act;
        LayerNormCache ln2;
        MatrixX x_out;
    };

    struct ForwardCache {
        std::vector<int> ids;
        MatrixX x0;
        std::vector<LayerCache> layers;
        const MatrixX& top() const { return layers.back().x_out; }
    };

    struct Layer {
        Tensor wq, bq, wk, bk, wv, bv, wo, bo;
        Tensor ln1_gamma, ln1_beta;
        Tensor w1, b1, w2, b2;
        Tensor ln2_gamma, ln2_beta;
    };

    std::size_t effective_max_len() const;
    void forward(const std::vector<int>& ids, ForwardCache& cache) const;
    // dX over the top-layer activations; accumulates parameter gradients.
    void backward(const MatrixX& d_top, const ForwardCache& cache);

    MatrixX layer_norm_forward(const MatrixX& x, const Tensor& gamma, const Tensor& beta,
                               LayerNormCache& cache) const;
    MatrixX layer_norm_backward(const MatrixX& dy, const LayerNormCache& cache,
                                Tensor& gamma, Tensor& beta);

    void collect_tensors(std::vector<Tensor*>& out);

    WordPieceVocab vocab_;
    ReferenceEncoderConfig config_;
    std::size_t runtime_max_len_;

    Tensor token_embedding_;     // V x d
    Tensor position_embedding_;  // max_positions x d
    Tensor mlm_bias_;            // 1 x V
    std::vector<Layer> layers_;

    ForwardCache training_cache_;
    bool has_training_cache_ = false;
};

}  // namespace infotweet
