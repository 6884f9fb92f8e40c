#include "cade/query.hpp"

#include <algorithm>
#include <cmath>

#include "cade/errors.hpp"

namespace cade {

double cosine(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) throw ConfigError("cosine over vectors of different dimension");
    double nu = u.norm();
    double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw NumericError("cosine similarity undefined for a zero vector");
    return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

Framework::Framework(std::vector<const AlignedSliceModel*> models) {
    if (models.empty()) throw ConfigError("a framework needs at least one model");
    for (const auto* m : models) {
        if (!m || !m->vocab) throw ConfigError("framework model without a vocabulary");
        if (!models_.emplace(m->slice_id, m).second)
            throw ConfigError("duplicate slice id in framework: " + m->slice_id);
    }
    const auto* first = models.front();
    vocab_ = first->vocab;
    for (const auto* m : models) {
        if (m->compass_fingerprint != first->compass_fingerprint)
            throw ConfigError("framework error: slice '" + m->slice_id +
                              "' was trained under a different compass fingerprint");
        if (m->context.cols() != first->context.cols())
            throw ConfigError("framework error: slice '" + m->slice_id + "' has dim " +
                              std::to_string(m->context.cols()) + ", expected " +
                              std::to_string(first->context.cols()));
        auto& norms = norms_[m->slice_id];
        norms.resize(static_cast<std::size_t>(m->context.rows()));
        for (Eigen::Index r = 0; r < m->context.rows(); ++r) norms[r] = m->context.row(r).norm();
    }
}

const AlignedSliceModel& Framework::model(const std::string& slice_id) const {
    auto it = models_.find(slice_id);
    if (it == models_.end()) throw ConfigError("slice not in framework: " + slice_id);
    return *it->second;
}

std::vector<std::string> Framework::slice_ids() const {
    std::vector<std::string> ids;
    ids.reserve(models_.size());
    for (const auto& [id, _] : models_) ids.push_back(id);
    return ids;
}

NeighborList Framework::top_k(const std::string& word, const std::string& source_slice,
                              const std::string& target_slice, std::size_t k) const {
    TokenId id = vocab_->id_of(word);
    if (id == kNoToken) throw OovError(word, source_slice);
    return top_k(id, source_slice, target_slice, k);
}

NeighborList Framework::top_k(TokenId word, const std::string& source_slice,
                              const std::string& target_slice, std::size_t k) const {
    const AlignedSliceModel& src = model(source_slice);
    const AlignedSliceModel& dst = model(target_slice);
    if (word < 0 || word >= src.context.rows() || !src.trained[word])
        throw OovError(vocab_->token(word), source_slice);

    const auto& src_norms = norms_.at(source_slice);
    const auto& dst_norms = norms_.at(target_slice);
    double qnorm = src_norms[word];
    if (qnorm == 0.0) throw NumericError("zero query vector for token " + vocab_->token(word));

    NeighborList result;
    result.query = word;
    result.source_slice = source_slice;
    result.target_slice = target_slice;

    auto& entries = result.entries;
    entries.reserve(dst.trained.size());
    const Vector query = src.context.row(word);
    for (Eigen::Index r = 0; r < dst.context.rows(); ++r) {
        if (!dst.trained[r] || dst_norms[r] == 0.0) continue;
        double sim = query.dot(dst.context.row(r)) / (qnorm * dst_norms[r]);
        entries.emplace_back(static_cast<TokenId>(r), std::clamp(sim, -1.0, 1.0));
    }

    auto better = [](const std::pair<TokenId, double>& a, const std::pair<TokenId, double>& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    if (k > 0 && k < entries.size()) {
        std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k),
                          entries.end(), better);
        entries.resize(k);
    } else {
        std::sort(entries.begin(), entries.end(), better);
    }
    return result;
}

TokenId Framework::correspondence(const std::string& word, const std::string& source_slice,
                                  const std::string& target_slice) const {
    NeighborList list = top_k(word, source_slice, target_slice, 1);
    if (list.entries.empty())
        throw ConfigError("no trained tokens in target slice: " + target_slice);
    return list.entries.front().first;
}

NeighborList Framework::solve_analogy(const std::string& w1, const std::string& slice_i,
                                      const std::string& slice_j, std::size_t k) const {
    return top_k(w1, slice_i, slice_j, k);
}

}  // namespace cade
