#pragma once

#include <cmath>
#include <vector>

#include "infotweet/encoder.hpp"

namespace infotweet {

// Adaptive-moment optimizer with bias correction; constant learning rate,
// no warmup or decay.
class AdamOptimizer {
public:
    explicit AdamOptimizer(std::vector<ParameterRef> params, double learning_rate,
                           double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
        : params_(std::move(params)),
          lr_(learning_rate),
          beta1_(beta1),
          beta2_(beta2),
          eps_(eps) {
        m_.reserve(params_.size());
        v_.reserve(params_.size());
        for (const ParameterRef& p : params_) {
            m_.push_back(MatrixX::Zero(p.value->rows(), p.value->cols()));
            v_.push_back(MatrixX::Zero(p.value->rows(), p.value->cols()));
        }
    }

    void zero_gradients() {
        for (const ParameterRef& p : params_) p.grad->setZero();
    }

    void step() {
        ++t_;
        const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
        for (std::size_t i = 0; i < params_.size(); ++i) {
            const MatrixX& g = *params_[i].grad;
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g.cwiseProduct(g);
            *params_[i].value -=
                (lr_ / bc1) * m_[i].cwiseQuotient(((v_[i] / bc2).cwiseSqrt().array() + eps_).matrix());
        }
    }

private:
    std::vector<ParameterRef> params_;
    std::vector<MatrixX> m_, v_;
    double lr_, beta1_, beta2_, eps_;
    std::size_t t_ = 0;
};

}  // namespace infotweet
