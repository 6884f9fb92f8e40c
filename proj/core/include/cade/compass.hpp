#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cade/corpus.hpp"
#include "cade/embedding.hpp"
#include "cade/trainer.hpp"

namespace cade {

// How a slice's context matrix starts before its training phase.
enum class InitMode { Random, FromCompass };

std::string to_string(InitMode mode);
InitMode init_mode_from_string(const std::string& s);

// Result of the first training phase: target matrix U (frozen afterwards)
// and the compass-phase context matrix, both over the global vocabulary.
struct CompassModel {
    std::shared_ptr<const Vocabulary> vocab;
    EmbeddingMatrix target;   // U
    EmbeddingMatrix context;  // kept for the FromCompass flavor and SW2V
    TrainConfig config;
    std::uint64_t fingerprint = 0;
};

// One slice's context matrix, trained against a frozen compass. Rows for
// tokens that never occur in the slice keep their initialization and are
// flagged untrained; queries never return them.
struct AlignedSliceModel {
    std::string slice_id;
    std::shared_ptr<const Vocabulary> vocab;
    EmbeddingMatrix context;  // C^slice
    std::vector<bool> trained;
    InitMode init_mode = InitMode::Random;
    std::uint64_t compass_fingerprint = 0;
};

struct CollectionOptions {
    TrainConfig config;
    std::int64_t min_count = 5;      // used when the caller has no vocabulary yet
    double sampling_power = 0.75;
    int compass_epochs = -1;         // -1: config.epochs
    int slice_epochs = -1;           // -1: config.epochs; 0 skips slice training
    InitMode init_mode = InitMode::Random;
};

// Phase 1: standard CBOW over the concatenation of the slices.
CompassModel train_compass(const std::vector<SliceCorpus>& slices,
                           std::shared_ptr<const Vocabulary> vocab,
                           const CollectionOptions& options);

// Phases 2-3 for one slice: initialize the context matrix per init_mode and
// train it with the output layer frozen. The compass target matrix is not
// modified. Trainings of different slices are independent: the RNG stream is
// derived from (seed, slice_id) alone.
AlignedSliceModel train_slice(const SliceCorpus& slice, const CompassModel& compass,
                              const CollectionOptions& options);

struct CollectionResult {
    CompassModel compass;
    std::vector<AlignedSliceModel> slices;
};

// Full pipeline: build the vocabulary, train the compass, then every slice.
CollectionResult train_collection(const std::vector<SliceCorpus>& slices,
                                  const CollectionOptions& options);

// Plain CBOW over the concatenation, ignoring the slicing; the context
// matrix doubles as the single embedding space.
AlignedSliceModel train_static_baseline(const std::vector<SliceCorpus>& slices,
                                        std::shared_ptr<const Vocabulary> vocab,
                                        const CollectionOptions& options);

// Views of one static model under several slice ids, for evaluating it with
// per-slice query plumbing.
std::vector<AlignedSliceModel> replicate_static(const AlignedSliceModel& model,
                                                const std::vector<std::string>& slice_ids);

}  // namespace cade
