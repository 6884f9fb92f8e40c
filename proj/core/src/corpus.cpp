#include "cade/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "cade/errors.hpp"

namespace cade {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

}  // namespace

bool Vocabulary::in_slice(TokenId id, const std::string& slice_id) const {
    auto it = slice_masks_.find(slice_id);
    if (it == slice_masks_.end()) return false;
    return id >= 0 && static_cast<std::size_t>(id) < it->second.size() && it->second[id];
}

std::vector<std::vector<TokenId>> Vocabulary::encode(const SliceCorpus& slice) const {
    std::vector<std::vector<TokenId>> out;
    out.reserve(slice.sentences.size());
    for (const auto& sentence : slice.sentences) {
        std::vector<TokenId> ids;
        ids.reserve(sentence.size());
        for (const auto& tok : sentence) {
            TokenId id = id_of(tok);
            if (id != kNoToken) ids.push_back(id);
        }
        if (!ids.empty()) out.push_back(std::move(ids));
    }
    return out;
}

std::uint64_t Vocabulary::content_hash() const {
    std::uint64_t h = kFnvOffset;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        h = fnv1a(h, tokens_[i].data(), tokens_[i].size());
        h = fnv1a(h, &counts_[i], sizeof(counts_[i]));
    }
    h = fnv1a(h, &min_count_, sizeof(min_count_));
    return h;
}

Vocabulary Vocabulary::from_table(std::vector<std::string> tokens, std::vector<std::int64_t> counts,
                                  std::int64_t min_count) {
    if (tokens.size() != counts.size()) throw ConfigError("vocabulary table size mismatch");
    Vocabulary v;
    v.tokens_ = std::move(tokens);
    v.counts_ = std::move(counts);
    v.min_count_ = min_count;
    v.index_.reserve(v.tokens_.size());
    for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
        auto [it, inserted] = v.index_.emplace(v.tokens_[i], static_cast<TokenId>(i));
        if (!inserted) throw ConfigError("duplicate token in vocabulary table: " + v.tokens_[i]);
    }
    return v;
}

void Vocabulary::set_slice_mask(const std::string& slice_id, std::vector<bool> mask) {
    if (mask.size() != tokens_.size()) throw ConfigError("slice mask size mismatch for " + slice_id);
    slice_masks_[slice_id] = std::move(mask);
}

Vocabulary build_vocabulary(const std::vector<SliceCorpus>& slices, std::int64_t min_count) {
    if (slices.empty()) throw ConfigError("cannot build a vocabulary from zero slices");
    if (min_count < 1) throw ConfigError("min_count must be >= 1");

    std::unordered_map<std::string, std::int64_t> global;
    for (const auto& slice : slices)
        for (const auto& sentence : slice.sentences)
            for (const auto& tok : sentence) ++global[tok];

    // Assign ids in first-occurrence order over the surviving tokens.
    std::vector<std::string> tokens;
    std::vector<std::int64_t> counts;
    std::unordered_map<std::string, TokenId> index;
    for (const auto& slice : slices) {
        for (const auto& sentence : slice.sentences) {
            for (const auto& tok : sentence) {
                if (index.count(tok)) continue;
                auto it = global.find(tok);
                if (it->second < min_count) continue;
                index.emplace(tok, static_cast<TokenId>(tokens.size()));
                tokens.push_back(tok);
                counts.push_back(it->second);
            }
        }
    }
    if (tokens.empty())
        throw ConfigError("empty vocabulary: no token reaches min_count=" + std::to_string(min_count));

    Vocabulary vocab = Vocabulary::from_table(std::move(tokens), std::move(counts), min_count);
    for (const auto& slice : slices) {
        std::vector<bool> mask(vocab.size(), false);
        for (const auto& sentence : slice.sentences) {
            for (const auto& tok : sentence) {
                TokenId id = vocab.id_of(tok);
                if (id != kNoToken) mask[id] = true;
            }
        }
        vocab.set_slice_mask(slice.slice_id, std::move(mask));
    }
    return vocab;
}

SliceCorpus concatenate_slices(const std::vector<SliceCorpus>& slices) {
    SliceCorpus out;
    out.slice_id = "compass";
    for (const auto& slice : slices)
        out.sentences.insert(out.sentences.end(), slice.sentences.begin(), slice.sentences.end());
    return out;
}

NegativeSampler::NegativeSampler(const Vocabulary& vocab, double power) {
    if (power <= 0.0) throw ConfigError("negative sampling power must be > 0");
    if (vocab.size() == 0) throw ConfigError("cannot build a sampler over an empty vocabulary");
    cdf_.resize(vocab.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        total += std::pow(static_cast<double>(vocab.count(static_cast<TokenId>(i))), power);
        cdf_[i] = total;
    }
    for (auto& c : cdf_) c /= total;
    cdf_.back() = 1.0;
}

double NegativeSampler::probability(TokenId id) const {
    auto i = static_cast<std::size_t>(id);
    if (i >= cdf_.size()) return 0.0;
    return i == 0 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

std::uint64_t derive_seed(std::uint64_t root_seed, const std::string& label) {
    std::uint64_t h = fnv1a(kFnvOffset, &root_seed, sizeof(root_seed));
    h = fnv1a(h, label.data(), label.size());
    // splitmix64 finalizer to spread low-entropy labels
    h += 0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

}  // namespace cade
