#include "cade/format.hpp"

#include <cstdio>

#include "cade/errors.hpp"
#include "cade/hash.hpp"

namespace cade {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string serialize_embeddings(const Vocabulary& vocab, const std::vector<TokenId>& ids,
                                 const EmbeddingMatrix& matrix) {
    std::string out;
    out.reserve(ids.size() * (static_cast<std::size_t>(matrix.cols()) * 10 + 16));
    out += std::to_string(ids.size());
    out += ' ';
    out += std::to_string(matrix.cols());
    out += '\n';
    for (TokenId id : ids) {
        if (id < 0 || id >= matrix.rows()) throw ConfigError("token id out of matrix range");
        out += vocab.token(id);
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            out += ' ';
            out += format_real(matrix(id, c));
        }
        out += '\n';
    }
    return out;
}

std::uint64_t embedding_fingerprint(const Vocabulary& vocab, const EmbeddingMatrix& matrix) {
    Fnv1a h;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%lld %lld\n", static_cast<long long>(matrix.rows()),
                  static_cast<long long>(matrix.cols()));
    h.update(buf, std::char_traits<char>::length(buf));
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        h.update(vocab.token(static_cast<TokenId>(r)));
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            buf[0] = ' ';
            int n = std::snprintf(buf + 1, sizeof(buf) - 1, "%.6f", matrix(r, c));
            h.update(buf, static_cast<std::size_t>(n) + 1);
        }
        h.update("\n");
    }
    std::uint64_t vh = vocab.content_hash();
    h.update(&vh, sizeof(vh));
    return h.value;
}

}  // namespace cade
