#include "cade/align.hpp"

#include <Eigen/Dense>

#include "cade/errors.hpp"
#include "cade/format.hpp"

namespace cade {

namespace {

EmbeddingMatrix gather_rows(const EmbeddingMatrix& m, const std::vector<TokenId>& ids) {
    EmbeddingMatrix out(static_cast<Eigen::Index>(ids.size()), m.cols());
    for (std::size_t i = 0; i < ids.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(ids[i]);
    return out;
}

void check_anchors(const EmbeddingMatrix& A, const EmbeddingMatrix& B,
                   const std::vector<TokenId>& anchors) {
    if (A.cols() != B.cols()) throw ConfigError("anchor spaces have different dimensions");
    if (static_cast<Eigen::Index>(anchors.size()) < A.cols())
        throw ConfigError("need at least dim=" + std::to_string(A.cols()) + " anchors, got " +
                          std::to_string(anchors.size()));
    for (TokenId id : anchors)
        if (id < 0 || id >= A.rows() || id >= B.rows())
            throw ConfigError("anchor id out of range: " + std::to_string(id));
}

}  // namespace

std::string to_string(MapKind kind) { return kind == MapKind::Linear ? "linear" : "orthogonal"; }

PairwiseMap fit_linear_map(const EmbeddingMatrix& A, const EmbeddingMatrix& B,
                           const std::vector<TokenId>& anchors) {
    check_anchors(A, B, anchors);
    EmbeddingMatrix X = gather_rows(A, anchors);
    EmbeddingMatrix Y = gather_rows(B, anchors);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols())
        throw NumericError("rank-deficient anchor matrix: rank " + std::to_string(qr.rank()) +
                           " < " + std::to_string(X.cols()));

    PairwiseMap map;
    map.kind = MapKind::Linear;
    map.anchors = anchors;
    map.matrix = qr.solve(Y);
    return map;
}

PairwiseMap fit_orthogonal_map(const EmbeddingMatrix& A, const EmbeddingMatrix& B,
                               const std::vector<TokenId>& anchors, bool mean_center) {
    check_anchors(A, B, anchors);
    EmbeddingMatrix X = gather_rows(A, anchors);
    EmbeddingMatrix Y = gather_rows(B, anchors);
    if (mean_center) {
        X.rowwise() -= X.colwise().mean();
        Y.rowwise() -= Y.colwise().mean();
    }

    Eigen::MatrixXd cross = X.transpose() * Y;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericError("SVD failed in orthogonal map fit");

    PairwiseMap map;
    map.kind = MapKind::Orthogonal;
    map.anchors = anchors;
    map.matrix = svd.matrixU() * svd.matrixV().transpose();
    return map;
}

EmbeddingMatrix apply_map(const PairwiseMap& map, const EmbeddingMatrix& matrix) {
    if (matrix.cols() != map.matrix.rows())
        throw ConfigError("matrix dim " + std::to_string(matrix.cols()) +
                          " does not match map dim " + std::to_string(map.matrix.rows()));
    return matrix * map.matrix;
}

AlignedSliceModel map_into(const AlignedSliceModel& model, const PairwiseMap& map,
                           std::uint64_t target_fingerprint) {
    AlignedSliceModel out = model;
    out.context = apply_map(map, model.context);
    out.compass_fingerprint = target_fingerprint;
    return out;
}

std::vector<TokenId> shared_anchor_set(const AlignedSliceModel& a, const AlignedSliceModel& b,
                                       std::int64_t min_count) {
    if (a.vocab != b.vocab && (!a.vocab || !b.vocab || a.vocab->content_hash() != b.vocab->content_hash()))
        throw ConfigError("anchor models do not share a vocabulary");
    std::vector<TokenId> anchors;
    const auto n = static_cast<TokenId>(a.vocab->size());
    for (TokenId id = 0; id < n; ++id)
        if (a.trained[id] && b.trained[id] && a.vocab->count(id) >= min_count) anchors.push_back(id);
    return anchors;
}

AlignedSliceModel train_independent_slice(const SliceCorpus& slice,
                                          std::shared_ptr<const Vocabulary> vocab,
                                          const CollectionOptions& options) {
    if (!vocab || vocab->size() == 0)
        throw ConfigError("train_independent_slice requires a built vocabulary");
    TrainConfig cfg = options.config;
    cfg.freeze_output = false;
    cfg.seed = derive_seed(options.config.seed, "independent/" + slice.slice_id);
    int epochs = options.slice_epochs < 0 ? cfg.epochs : options.slice_epochs;
    cfg.epochs = std::max(1, epochs);

    AlignedSliceModel model;
    model.slice_id = slice.slice_id;
    model.vocab = vocab;
    model.init_mode = InitMode::Random;

    std::mt19937_64 init_rng(derive_seed(cfg.seed, "init"));
    model.context = random_init(static_cast<Eigen::Index>(vocab->size()), cfg.dim, init_rng);
    EmbeddingMatrix target = zero_init(static_cast<Eigen::Index>(vocab->size()), cfg.dim);

    auto sentences = vocab->encode(slice);
    model.trained.assign(vocab->size(), false);
    for (const auto& s : sentences)
        for (TokenId id : s) model.trained[id] = true;

    NegativeSampler sampler(*vocab, options.sampling_power);
    train_cbow(sentences, cfg, model.context, target, sampler, vocab.get());
    model.compass_fingerprint = embedding_fingerprint(*vocab, model.context);
    return model;
}

}  // namespace cade
