#pragma once

#include <string>
#include <vector>

#include "cade/compass.hpp"
#include "cade/embedding.hpp"

namespace cade {

enum class MapKind { Linear, Orthogonal };

std::string to_string(MapKind kind);

// Post-hoc mapping between two independently trained slice spaces.
struct PairwiseMap {
    std::string source_slice;
    std::string target_slice;
    EmbeddingMatrix matrix;  // h x h
    MapKind kind = MapKind::Linear;
    std::vector<TokenId> anchors;
};

// Least-squares map: minimizes sum over anchors of |a_w M - b_w|^2.
// Throws NumericError when the anchor matrix is rank-deficient.
PairwiseMap fit_linear_map(const EmbeddingMatrix& A, const EmbeddingMatrix& B,
                           const std::vector<TokenId>& anchors);

// Orthogonal Procrustes via SVD of A^T B, optionally mean-centering the
// anchor rows first (off by default).
PairwiseMap fit_orthogonal_map(const EmbeddingMatrix& A, const EmbeddingMatrix& B,
                               const std::vector<TokenId>& anchors, bool mean_center = false);

// Every row multiplied by the map matrix.
EmbeddingMatrix apply_map(const PairwiseMap& map, const EmbeddingMatrix& matrix);

// A copy of the model carried into the target space: rows mapped, fingerprint
// replaced so the result can join the target's framework.
AlignedSliceModel map_into(const AlignedSliceModel& model, const PairwiseMap& map,
                           std::uint64_t target_fingerprint);

// Default anchor set: tokens trained in both models whose global count
// reaches the vocabulary's min_count (always true post-filter, kept explicit
// for callers with stricter thresholds).
std::vector<TokenId> shared_anchor_set(const AlignedSliceModel& a, const AlignedSliceModel& b,
                                       std::int64_t min_count = 0);

// Independent CBOW run over one slice (no compass, output layer free), the
// input space for the pairwise-alignment baselines.
AlignedSliceModel train_independent_slice(const SliceCorpus& slice,
                                          std::shared_ptr<const Vocabulary> vocab,
                                          const CollectionOptions& options);

}  // namespace cade
