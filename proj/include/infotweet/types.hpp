#pragma once

#include <Eigen/Dense>

namespace infotweet {

// Dense math types for the encoder/classifier core. Everything numeric in
// this project runs through these aliases; Eigen is the only math
// dependency.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

// Project-wide default scalar. Double keeps gradient checks tight and the
// models are small enough that the extra width costs nothing.
using Real = double;
using MatrixX = Matrix<Real>;
using VectorX = Vector<Real>;
using RowVectorX = RowVector<Real>;

}  // namespace infotweet
