#pragma once

#include <map>
#include <string>
#include <vector>

#include "cade/compass.hpp"
#include "cade/embedding.hpp"

namespace cade {

// Cosine similarity; throws NumericError on a zero vector.
double cosine(const Vector& u, const Vector& v);

// Ranked cross-corpora neighbors: similarity descending, ties broken by
// ascending token id. Every returned token is trained in the target slice.
struct NeighborList {
    TokenId query = kNoToken;
    std::string source_slice;
    std::string target_slice;
    std::vector<std::pair<TokenId, double>> entries;
};

// Read-only view over a set of aligned models sharing one compass
// fingerprint and one dimension; hosts the cross-corpora query operators.
class Framework {
  public:
    explicit Framework(std::vector<const AlignedSliceModel*> models);

    const Vocabulary& vocab() const { return *vocab_; }
    const AlignedSliceModel& model(const std::string& slice_id) const;
    bool has_slice(const std::string& slice_id) const { return models_.count(slice_id) != 0; }
    std::vector<std::string> slice_ids() const;

    // The k most-similar trained rows of the target slice to the word's
    // vector in the source slice. The query word itself is a legal result.
    // k = 0 returns every trained target token.
    NeighborList top_k(const std::string& word, const std::string& source_slice,
                       const std::string& target_slice, std::size_t k) const;
    NeighborList top_k(TokenId word, const std::string& source_slice,
                       const std::string& target_slice, std::size_t k) const;

    // First element of top_k(..., 1).
    TokenId correspondence(const std::string& word, const std::string& source_slice,
                           const std::string& target_slice) const;

    // Ranked candidates for the analogy "w1 : slice_i :: ? : slice_j".
    NeighborList solve_analogy(const std::string& w1, const std::string& slice_i,
                               const std::string& slice_j, std::size_t k) const;

  private:
    std::shared_ptr<const Vocabulary> vocab_;
    std::map<std::string, const AlignedSliceModel*> models_;
    std::map<std::string, std::vector<double>> norms_;  // per-slice row norms
};

}  // namespace cade
