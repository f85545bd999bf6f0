#include "infotweet/reference_encoder.hpp"

#include <cmath>

#include "infotweet/errors.hpp"
#include "infotweet/nn.hpp"

namespace infotweet {

namespace {

constexpr double kLayerNormEps = 1e-12;

void fill_normal(MatrixX& m, Rng& rng, double stddev) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.normal(0.0, stddev);
}

}  // namespace

std::vector<MaskedPosition> plan_masking(std::size_t n_positions, Rng& rng) {
    if (n_positions == 0) return {};
    auto k = static_cast<std::size_t>(
        std::ceil(kMaskFraction * static_cast<double>(n_positions)));
    std::vector<MaskedPosition> plan;
    plan.reserve(k);
    for (std::size_t pos : rng.sample_without_replacement(n_positions, k)) {
        double u = rng.uniform();
        MaskAction action = u < 0.8   ? MaskAction::Mask
                            : u < 0.9 ? MaskAction::RandomToken
                                      : MaskAction::KeepOriginal;
        plan.push_back({pos, action});
    }
    return plan;
}

std::pair<double, std::size_t> TrainableEncoder::masked_lm_step(std::string_view, Rng&) {
    throw UnsupportedOperationError(
        "this encoder does not expose a self-supervised objective");
}

ReferenceEncoder::ReferenceEncoder(WordPieceVocab vocab, ReferenceEncoderConfig config,
                                   std::uint64_t init_seed)
    : vocab_(std::move(vocab)), config_(config) {
    if (config_.hidden_size % config_.num_heads != 0) {
        throw DataError("hidden_size must be divisible by num_heads");
    }
    runtime_max_len_ = static_cast<std::size_t>(config_.max_positions);

    Rng rng(init_seed);
    const auto v = static_cast<Eigen::Index>(vocab_.size());
    const Eigen::Index d = config_.hidden_size;
    const Eigen::Index f = config_.ffn_size;

    auto dense = [&](Tensor& t, const std::string& name, Eigen::Index r, Eigen::Index c) {
        t.name = name;
        t.value.setZero(r, c);
        fill_normal(t.value, rng, config_.init_stddev);
        t.grad.setZero(r, c);
    };
    auto zeros = [&](Tensor& t, const std::string& name, Eigen::Index r, Eigen::Index c) {
        t.name = name;
        t.value.setZero(r, c);
        t.grad.setZero(r, c);
    };
    auto ones = [&](Tensor& t, const std::string& name, Eigen::Index c) {
        t.name = name;
        t.value.setOnes(1, c);
        t.grad.setZero(1, c);
    };

    dense(token_embedding_, "embedding.token", v, d);
    dense(position_embedding_, "embedding.position", config_.max_positions, d);
    zeros(mlm_bias_, "mlm.bias", 1, v);

    layers_.resize(static_cast<std::size_t>(config_.num_layers));
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        Layer& l = layers_[i];
        std::string p = "layer" + std::to_string(i) + ".";
        dense(l.wq, p + "attn.wq", d, d);
        zeros(l.bq, p + "attn.bq", 1, d);
        dense(l.wk, p + "attn.wk", d, d);
        zeros(l.bk, p + "attn.bk", 1, d);
        dense(l.wv, p + "attn.wv", d, d);
        zeros(l.bv, p + "attn.bv", 1, d);
        dense(l.wo, p + "attn.wo", d, d);
        zeros(l.bo, p + "attn.bo", 1, d);
        ones(l.ln1_gamma, p + "ln1.gamma", d);
        zeros(l.ln1_beta, p + "ln1.beta", 1, d);
        dense(l.w1, p + "ffn.w1", d, f);
        zeros(l.b1, p + "ffn.b1", 1, f);
        dense(l.w2, p + "ffn.w2", f, d);
        zeros(l.b2, p + "ffn.b2", 1, d);
        ones(l.ln2_gamma, p + "ln2.gamma", d);
        zeros(l.ln2_beta, p + "ln2.beta", 1, d);
    }
}

void ReferenceEncoder::set_max_sequence_length(std::size_t max_len) {
    if (max_len == 0) throw DataError("max sequence length must be positive");
    runtime_max_len_ = max_len;
}

std::size_t ReferenceEncoder::effective_max_len() const {
    return std::min(runtime_max_len_, static_cast<std::size_t>(config_.max_positions));
}

void ReferenceEncoder::collect_tensors(std::vector<Tensor*>& out) {
    out.push_back(&token_embedding_);
    out.push_back(&position_embedding_);
    out.push_back(&mlm_bias_);
    for (Layer& l : layers_) {
        for (Tensor* t : {&l.wq, &l.bq, &l.wk, &l.bk, &l.wv, &l.bv, &l.wo, &l.bo,
                          &l.ln1_gamma, &l.ln1_beta, &l.w1, &l.b1, &l.w2, &l.b2,
                          &l.ln2_gamma, &l.ln2_beta}) {
            out.push_back(t);
        }
    }
}

std::vector<ParameterRef> ReferenceEncoder::parameters() {
    std::vector<Tensor*> tensors;
    collect_tensors(tensors);
    std::vector<ParameterRef> refs;
    refs.reserve(tensors.size());
    for (Tensor* t : tensors) refs.push_back({t->name, &t->value, &t->grad});
    return refs;
}

void ReferenceEncoder::zero_gradients() {
    std::vector<Tensor*> tensors;
    collect_tensors(tensors);
    for (Tensor* t : tensors) t->grad.setZero();
}

MatrixX ReferenceEncoder::layer_norm_forward(const MatrixX& x, const Tensor& gamma,
                                             const Tensor& beta,
                                             LayerNormCache& cache) const {
    const auto d = static_cast<double>(x.cols());
    cache.xhat.resize(x.rows(), x.cols());
    cache.inv_std.resize(x.rows());
    MatrixX out(x.rows(), x.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        double mean = x.row(r).mean();
        double var = (x.row(r).array() - mean).square().sum() / d;
        double inv_std = 1.0 / std::sqrt(var + kLayerNormEps);
        cache.inv_std[r] = inv_std;
        cache.xhat.row(r) = (x.row(r).array() - mean) * inv_std;
        out.row(r) = cache.xhat.row(r).cwiseProduct(gamma.value.row(0)) + beta.value.row(0);
    }
    return out;
}

MatrixX ReferenceEncoder::layer_norm_backward(const MatrixX& dy, const LayerNormCache& cache,
                                              Tensor& gamma, Tensor& beta) {
    const auto d = static_cast<double>(dy.cols());
    MatrixX dx(dy.rows(), dy.cols());
    for (Eigen::Index r = 0; r < dy.rows(); ++r) {
        gamma.grad.row(0) += dy.row(r).cwiseProduct(cache.xhat.row(r));
        beta.grad.row(0) += dy.row(r);
        RowVectorX dxhat = dy.row(r).cwiseProduct(gamma.value.row(0));
        double mean_dxhat = dxhat.mean();
        double mean_dxhat_xhat = dxhat.cwiseProduct(cache.xhat.row(r)).sum() / d;
        dx.row(r) = cache.inv_std[r] *
                    (dxhat.array() - mean_dxhat -
                     cache.xhat.row(r).array() * mean_dxhat_xhat);
    }
    return dx;
}

void ReferenceEncoder::forward(const std::vector<int>& ids, ForwardCache& cache) const {
    const auto len = static_cast<Eigen::Index>(ids.size());
    const Eigen::Index d = config_.hidden_size;
    const Eigen::Index heads = config_.num_heads;
    const Eigen::Index dk = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

    cache.ids = ids;
    cache.x0.resize(len, d);
    for (Eigen::Index i = 0; i < len; ++i) {
        cache.x0.row(i) =
            token_embedding_.value.row(ids[static_cast<std::size_t>(i)]) +
            position_embedding_.value.row(i);
    }

    cache.layers.assign(layers_.size(), LayerCache{});
    const MatrixX* x = &cache.x0;
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const Layer& l = layers_[li];
        LayerCache& c = cache.layers[li];
        c.x_in = *x;

        c.q = (c.x_in * l.wq.value).rowwise() + l.bq.value.row(0);
        c.k = (c.x_in * l.wk.value).rowwise() + l.bk.value.row(0);
        c.v = (c.x_in * l.wv.value).rowwise() + l.bv.value.row(0);

        c.attn.resize(static_cast<std::size_t>(heads));
        c.context.resize(len, d);
        for (Eigen::Index h = 0; h < heads; ++h) {
            auto qh = c.q.middleCols(h * dk, dk);
            auto kh = c.k.middleCols(h * dk, dk);
            auto vh = c.v.middleCols(h * dk, dk);
            MatrixX scores = qh * kh.transpose() * scale;
            c.attn[static_cast<std::size_t>(h)] = nn::softmax_rows(scores);
            c.context.middleCols(h * dk, dk) = c.attn[static_cast<std::size_t>(h)] * vh;
        }
        MatrixX attn_out = (c.context * l.wo.value).rowwise() + l.bo.value.row(0);

        c.x_ln1 = layer_norm_forward(c.x_in + attn_out, l.ln1_gamma, l.ln1_beta, c.ln1);

        c.ffn_pre = (c.x_ln1 * l.w1.value).rowwise() + l.b1.value.row(0);
        c.ffn_act = nn::gelu(c.ffn_pre);
        MatrixX ffn_out = (c.ffn_act * l.w2.value).rowwise() + l.b2.value.row(0);

        c.x_out = layer_norm_forward(c.x_ln1 + ffn_out, l.ln2_gamma, l.ln2_beta, c.ln2);
        x = &c.x_out;
    }
}

void ReferenceEncoder::backward(const MatrixX& d_top, const ForwardCache& cache) {
    const Eigen::Index d = config_.hidden_size;
    const Eigen::Index heads = config_.num_heads;
    const Eigen::Index dk = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

    MatrixX dx = d_top;
    for (std::size_t li = layers_.size(); li-- > 0;) {
        Layer& l = layers_[li];
        const LayerCache& c = cache.layers[li];

        // LN2 -> residual (x_ln1 + ffn_out)
        MatrixX dsum2 = layer_norm_backward(dx, c.ln2, l.ln2_gamma, l.ln2_beta);
        MatrixX dx_ln1 = dsum2;

        // FFN
        l.w2.grad += c.ffn_act.transpose() * dsum2;
        l.b2.grad.row(0) += dsum2.colwise().sum();
        MatrixX dact = dsum2 * l.w2.value.transpose();
        MatrixX dpre = nn::gelu_backward(c.ffn_pre, dact);
        l.w1.grad += c.x_ln1.transpose() * dpre;
        l.b1.grad.row(0) += dpre.colwise().sum();
        dx_ln1 += dpre * l.w1.value.transpose();

        // LN1 -> residual (x_in + attn_out)
        MatrixX dsum1 = layer_norm_backward(dx_ln1, c.ln1, l.ln1_gamma, l.ln1_beta);
        MatrixX dx_in = dsum1;
        const MatrixX& dattn_out = dsum1;

        l.wo.grad += c.context.transpose() * dattn_out;
        l.bo.grad.row(0) += dattn_out.colwise().sum();
        MatrixX dcontext = dattn_out * l.wo.value.transpose();

        MatrixX dq(dx.rows(), d), dkm(dx.rows(), d), dv(dx.rows(), d);
        for (Eigen::Index h = 0; h < heads; ++h) {
            const MatrixX& a = c.attn[static_cast<std::size_t>(h)];
            auto qh = c.q.middleCols(h * dk, dk);
            auto kh = c.k.middleCols(h * dk, dk);
            auto vh = c.v.middleCols(h * dk, dk);
            MatrixX dch = dcontext.middleCols(h * dk, dk);
            MatrixX da = dch * vh.transpose();
            dv.middleCols(h * dk, dk) = a.transpose() * dch;
            MatrixX ds = nn::softmax_rows_backward(a, da) * scale;
            dq.middleCols(h * dk, dk) = ds * kh;
            dkm.middleCols(h * dk, dk) = ds.transpose() * qh;
        }

        l.wq.grad += c.x_in.transpose() * dq;
        l.bq.grad.row(0) += dq.colwise().sum();
        l.wk.grad += c.x_in.transpose() * dkm;
        l.bk.grad.row(0) += dkm.colwise().sum();
        l.wv.grad += c.x_in.transpose() * dv;
        l.bv.grad.row(0) += dv.colwise().sum();

        dx_in += dq * l.wq.value.transpose() + dkm * l.wk.value.transpose() +
                 dv * l.wv.value.transpose();
        dx = std::move(dx_in);
    }

    for (Eigen::Index i = 0; i < dx.rows(); ++i) {
        token_embedding_.grad.row(cache.ids[static_cast<std::size_t>(i)]) += dx.row(i);
        position_embedding_.grad.row(i) += dx.row(i);
    }
}

EncodedSequence ReferenceEncoder::encode(std::string_view text) const {
    std::vector<int> ids = vocab_.encode(text, effective_max_len());
    ForwardCache cache;
    forward(ids, cache);
    return {cache.top().row(0).transpose()};
}

VectorX ReferenceEncoder::forward_training(std::string_view text) {
    std::vector<int> ids = vocab_.encode(text, effective_max_len());
    forward(ids, training_cache_);
    has_training_cache_ = true;
    return training_cache_.top().row(0).transpose();
}

void ReferenceEncoder::backward_from_cls(const VectorX& d_cls) {
    if (!has_training_cache_) {
        throw DataError("backward_from_cls called without a pending forward pass");
    }
    MatrixX d_top = MatrixX::Zero(training_cache_.top().rows(), config_.hidden_size);
    d_top.row(0) = d_cls.transpose();
    backward(d_top, training_cache_);
    has_training_cache_ = false;
}

std::pair<double, std::size_t> ReferenceEncoder::masked_lm_step(std::string_view text,
                                                                Rng& rng) {
    std::vector<int> ids = vocab_.encode(text, effective_max_len());
    const std::size_t maskable = ids.size() - 1;  // every position but [CLS]
    if (maskable == 0) return {0.0, 0};

    std::vector<MaskedPosition> plan = plan_masking(maskable, rng);
    std::vector<int> corrupted = ids;
    const int regular_count =
        static_cast<int>(vocab_.size()) - WordPieceVocab::kFirstRegularId;
    for (const MaskedPosition& m : plan) {
        std::size_t idx = m.position + 1;
        switch (m.action) {
            case MaskAction::Mask:
                corrupted[idx] = vocab_.mask_id();
                break;
            case MaskAction::RandomToken:
                corrupted[idx] = WordPieceVocab::kFirstRegularId +
                                 static_cast<int>(rng.uniform_int(
                                     static_cast<std::uint64_t>(regular_count)));
                break;
            case MaskAction::KeepOriginal:
                break;
        }
    }

    ForwardCache cache;
    forward(corrupted, cache);
    const MatrixX& top = cache.top();

    double loss = 0.0;
    MatrixX d_top = MatrixX::Zero(top.rows(), top.cols());
    for (const MaskedPosition& m : plan) {
        const auto idx = static_cast<Eigen::Index>(m.position + 1);
        int target = ids[m.position + 1];
        VectorX logits =
            token_embedding_.value * top.row(idx).transpose() + mlm_bias_.value.row(0).transpose();
        VectorX p = nn::softmax(logits);
        loss -= std::log(std::max(p[target], 1e-300));

        VectorX dlogits = p;
        dlogits[target] -= 1.0;
        mlm_bias_.grad.row(0) += dlogits.transpose();
        token_embedding_.grad += dlogits * top.row(idx);
        d_top.row(idx) += (token_embedding_.value.transpose() * dlogits).transpose();
    }
    backward(d_top, cache);
    return {loss, plan.size()};
}

}  // namespace infotweet
