#pragma once

#include <atomic>
#include <cstdint>
#include <random>
#include <vector>

#include "cade/corpus.hpp"
#include "cade/embedding.hpp"

namespace cade {

struct TrainConfig {
    int dim = 100;
    int window = 5;
    int negative = 5;
    double learning_rate = 0.025;
    // The rate decays linearly from learning_rate to
    // learning_rate * lr_floor_fraction across epochs * token positions.
    double lr_floor_fraction = 1e-4;
    int epochs = 5;
    bool freeze_output = false;
    std::uint64_t seed = 1;
    int workers = 1;
    // Frequent-word subsampling threshold (word2vec "sample"); 0 disables.
    double subsample = 0.0;
    // Shrink the window uniformly in [1, window] per position instead of the
    // default fixed width.
    bool dynamic_window = false;

    void validate() const;
};

using IdSentence = std::vector<TokenId>;

// Context ids within `window` positions on each side of `position`, center
// excluded. May be empty for one-token sentences.
std::vector<TokenId> context_window(const IdSentence& sentence, std::size_t position, int window);

// Mean of the context rows of C. Throws ConfigError on an empty context.
Vector context_mean(const std::vector<TokenId>& context_ids, const EmbeddingMatrix& C);

// Negative-sampling CBOW loss for one (target, context) sample with the
// given negative draws: -(log s(u_t . cbar) + sum log s(-u_n . cbar)).
double pair_loss(TokenId target, const std::vector<TokenId>& context_ids,
                 const std::vector<TokenId>& negatives, const EmbeddingMatrix& C,
                 const EmbeddingMatrix& U);

// One gradient-ascent step on the sample objective, applied in place. All
// partials are evaluated against the pre-update matrices, so the applied
// update is the exact gradient of pair_loss (times -lr). Each context row
// receives the shared cbar gradient scaled by 1/|context|. Rows of U move
// only when freeze_output is false. Returns the pre-update loss.
double train_pair(TokenId target, const std::vector<TokenId>& context_ids,
                  const std::vector<TokenId>& negatives, EmbeddingMatrix& C, EmbeddingMatrix& U,
                  double lr, bool freeze_output);

// Convenience wrapper that draws `k` negatives from the sampler, redrawing
// on collision with the target.
double train_pair(TokenId target, const std::vector<TokenId>& context_ids,
                  const NegativeSampler& sampler, std::mt19937_64& rng, EmbeddingMatrix& C,
                  EmbeddingMatrix& U, double lr, int k, bool freeze_output);

struct EpochStats {
    std::size_t samples = 0;  // train_pair calls
    double mean_loss = 0.0;
};

// Progress shared across the epochs of one training run; drives the linear
// learning-rate schedule.
struct TrainProgress {
    std::size_t total_planned = 0;
    std::atomic<std::size_t> done{0};
};

// One pass over the encoded corpus. Every token position advances the
// schedule; every position with a non-empty context yields one train_pair
// call. Workers > 1 update the matrices lock-free (relaxed consistency);
// workers == 1 is deterministic for a fixed seed.
EpochStats train_epoch(const std::vector<IdSentence>& sentences, const TrainConfig& config,
                       EmbeddingMatrix& C, EmbeddingMatrix& U, const NegativeSampler& sampler,
                       TrainProgress& progress, int epoch_index, const Vocabulary* vocab = nullptr);

// Runs config.epochs passes with a shared schedule. `vocab` is only needed
// when subsampling is enabled.
std::vector<EpochStats> train_cbow(const std::vector<IdSentence>& sentences,
                                   const TrainConfig& config, EmbeddingMatrix& C,
                                   EmbeddingMatrix& U, const NegativeSampler& sampler,
                                   const Vocabulary* vocab = nullptr);

}  // namespace cade
