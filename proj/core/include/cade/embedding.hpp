#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

#include "cade/corpus.hpp"

namespace cade {

// Dense row-major matrix of embedding vectors, one row per token id.
using EmbeddingMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::RowVectorXd;

// word2vec-style initialization: entries uniform in (-0.5, 0.5) / dim.
template <class Rng>
EmbeddingMatrix random_init(Eigen::Index rows, Eigen::Index dim, Rng& rng) {
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    EmbeddingMatrix m(rows, dim);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = dist(rng) / static_cast<double>(dim);
    return m;
}

inline EmbeddingMatrix zero_init(Eigen::Index rows, Eigen::Index dim) {
    return EmbeddingMatrix::Zero(rows, dim);
}

}  // namespace cade
