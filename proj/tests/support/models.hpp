#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cade/compass.hpp"
#include "cade/corpus.hpp"

namespace cade::testing {

// Vocabulary over explicit tokens, each with the given count.
inline std::shared_ptr<Vocabulary> toy_vocab(const std::vector<std::string>& tokens,
                                             std::int64_t count = 100) {
    std::vector<std::int64_t> counts(tokens.size(), count);
    return std::make_shared<Vocabulary>(Vocabulary::from_table(tokens, counts, 1));
}

// Hand-built aligned model for query/eval tests.
inline AlignedSliceModel toy_model(std::string slice_id, std::shared_ptr<const Vocabulary> vocab,
                                   EmbeddingMatrix matrix, std::uint64_t fingerprint = 42,
                                   std::vector<bool> trained = {}) {
    AlignedSliceModel model;
    model.slice_id = std::move(slice_id);
    model.vocab = std::move(vocab);
    if (trained.empty()) trained.assign(static_cast<std::size_t>(matrix.rows()), true);
    model.trained = std::move(trained);
    model.context = std::move(matrix);
    model.compass_fingerprint = fingerprint;
    return model;
}

}  // namespace cade::testing
