#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cade/corpus.hpp"
#include "cade/embedding.hpp"

namespace cade {

// Canonical text form of one real value in vector files: fixed, 6 decimals.
// Values written this way parse back to a double that reformats identically,
// so serialized models have a stable byte representation.
std::string format_real(double v);

// word2vec text format: header "<rows> <dim>", then one line per token.
// `ids` selects and orders the rows; tokens come from the vocabulary.
std::string serialize_embeddings(const Vocabulary& vocab, const std::vector<TokenId>& ids,
                                 const EmbeddingMatrix& matrix);

// 64-bit fingerprint of a matrix under its vocabulary: FNV-1a over the
// canonical serialization of all rows plus the vocabulary content hash.
std::uint64_t embedding_fingerprint(const Vocabulary& vocab, const EmbeddingMatrix& matrix);

}  // namespace cade
