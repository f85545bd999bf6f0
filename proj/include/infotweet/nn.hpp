#pragma once

#include <cmath>

#include "infotweet/types.hpp"

namespace infotweet::nn {

// Max-shifted softmax over a vector.
template <typename Scalar>
Vector<Scalar> softmax(const Vector<Scalar>& logits) {
    Vector<Scalar> shifted = logits.array() - logits.maxCoeff();
    Vector<Scalar> e = shifted.array().exp();
    return e / e.sum();
}

// Row-wise softmax, used for attention weights.
template <typename Scalar>
Matrix<Scalar> softmax_rows(const Matrix<Scalar>& scores) {
    Matrix<Scalar> out(scores.rows(), scores.cols());
    for (Eigen::Index r = 0; r < scores.rows(); ++r) {
        RowVector<Scalar> shifted = scores.row(r).array() - scores.row(r).maxCoeff();
        RowVector<Scalar> e = shifted.array().exp();
        out.row(r) = e / e.sum();
    }
    return out;
}

// d(loss)/dS given A = softmax_rows(S) and d(loss)/dA.
template <typename Scalar>
Matrix<Scalar> softmax_rows_backward(const Matrix<Scalar>& a, const Matrix<Scalar>& da) {
    Matrix<Scalar> ds(a.rows(), a.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        Scalar dot = a.row(r).dot(da.row(r));
        ds.row(r) = a.row(r).array() * (da.row(r).array() - dot);
    }
    return ds;
}

// Exact GELU, x * Phi(x).
template <typename Scalar>
Matrix<Scalar> gelu(const Matrix<Scalar>& x) {
    return x.unaryExpr([](Scalar v) {
        return Scalar(0.5) * v * (Scalar(1) + std::erf(v * Scalar(M_SQRT1_2)));
    });
}

template <typename Scalar>
Matrix<Scalar> gelu_backward(const Matrix<Scalar>& x, const Matrix<Scalar>& dy) {
    Matrix<Scalar> dx = x.unaryExpr([](Scalar v) {
        Scalar phi = std::exp(Scalar(-0.5) * v * v) / std::sqrt(Scalar(2) * Scalar(M_PI));
        Scalar cdf = Scalar(0.5) * (Scalar(1) + std::erf(v * Scalar(M_SQRT1_2)));
        return cdf + v * phi;
    });
    return dx.cwiseProduct(dy);
}

}  // namespace infotweet::nn
