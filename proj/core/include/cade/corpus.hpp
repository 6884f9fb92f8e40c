#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "cade/text.hpp"

namespace cade {

using TokenId = std::int32_t;
constexpr TokenId kNoToken = -1;

// One corpus of a collection: a labeled sequence of token sentences.
struct SliceCorpus {
    std::string slice_id;
    std::vector<Sentence> sentences;

    std::size_t token_count() const {
        std::size_t n = 0;
        for (const auto& s : sentences) n += s.size();
        return n;
    }
};

// Global token table over a collection plus per-slice membership masks.
// Token ids are assigned in first-occurrence order over the slices as given,
// so construction is deterministic for a fixed input order and min_count.
class Vocabulary {
  public:
    Vocabulary() = default;

    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    const std::string& token(TokenId id) const { return tokens_.at(static_cast<std::size_t>(id)); }
    std::int64_t count(TokenId id) const { return counts_.at(static_cast<std::size_t>(id)); }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t min_count() const { return min_count_; }

    // kNoToken when absent.
    TokenId id_of(const std::string& token) const {
        auto it = index_.find(token);
        return it == index_.end() ? kNoToken : it->second;
    }
    bool contains(const std::string& token) const { return index_.count(token) != 0; }

    const std::map<std::string, std::vector<bool>>& slice_masks() const { return slice_masks_; }
    bool in_slice(TokenId id, const std::string& slice_id) const;

    // Token-id sentences with out-of-vocabulary tokens dropped; empty
    // sentences are removed.
    std::vector<std::vector<TokenId>> encode(const SliceCorpus& slice) const;

    // Order-independent content hash (tokens, counts, min_count).
    std::uint64_t content_hash() const;

    // Constructors used by builders and bundle loading.
    static Vocabulary from_table(std::vector<std::string> tokens, std::vector<std::int64_t> counts,
                                 std::int64_t min_count);
    void set_slice_mask(const std::string& slice_id, std::vector<bool> mask);

  private:
    std::vector<std::string> tokens_;
    std::vector<std::int64_t> counts_;
    std::unordered_map<std::string, TokenId> index_;
    std::map<std::string, std::vector<bool>> slice_masks_;
    std::int64_t min_count_ = 1;
};

// Builds the global vocabulary: tokens whose count over the concatenation of
// all slices reaches min_count survive; slice masks reflect post-filter
// occurrence. Throws ConfigError when nothing survives.
Vocabulary build_vocabulary(const std::vector<SliceCorpus>& slices, std::int64_t min_count);

// Ordered concatenation of the slices, labeled "compass".
SliceCorpus concatenate_slices(const std::vector<SliceCorpus>& slices);

// Unigram table for negative sampling: P(token) = count^power / sum count^power.
class NegativeSampler {
  public:
    NegativeSampler() = default;
    NegativeSampler(const Vocabulary& vocab, double power);

    double probability(TokenId id) const;

    template <class Rng>
    TokenId draw(Rng& rng) const {
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return static_cast<TokenId>(it - cdf_.begin());
    }

    // Redraws on collision with `banned`; falls back to a linear probe when
    // the distribution is too concentrated to miss it by chance.
    template <class Rng>
    TokenId draw_excluding(Rng& rng, TokenId banned) const {
        for (int attempt = 0; attempt < 64; ++attempt) {
            TokenId id = draw(rng);
            if (id != banned) return id;
        }
        for (std::size_t i = 0; i < cdf_.size(); ++i) {
            if (static_cast<TokenId>(i) != banned && probability(static_cast<TokenId>(i)) > 0.0)
                return static_cast<TokenId>(i);
        }
        return kNoToken;
    }

    std::size_t size() const { return cdf_.size(); }

  private:
    std::vector<double> cdf_;
};

// Derives a per-slice RNG seed from the run's root seed, keeping slice
// trainings independent of their order in the collection.
std::uint64_t derive_seed(std::uint64_t root_seed, const std::string& label);

}  // namespace cade
