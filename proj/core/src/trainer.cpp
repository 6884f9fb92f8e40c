#include "cade/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cade/errors.hpp"

namespace cade {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_sigmoid(double x) {
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

double lr_at(const TrainConfig& config, std::size_t done, std::size_t total) {
    double progress = total == 0 ? 1.0 : std::min(1.0, static_cast<double>(done) / static_cast<double>(total));
    double floor = config.learning_rate * config.lr_floor_fraction;
    return config.learning_rate + (floor - config.learning_rate) * progress;
}

// One ascent step. Gradients are accumulated against the pre-update state;
// updates are applied afterwards.
double pair_step(TokenId target, const std::vector<TokenId>& context_ids,
                 const std::vector<TokenId>& negatives, EmbeddingMatrix& C, EmbeddingMatrix& U,
                 double lr, bool freeze_output, std::size_t step_for_diagnostics) {
    if (context_ids.empty()) throw ConfigError("train_pair requires a non-empty context");

    const double inv_ctx = 1.0 / static_cast<double>(context_ids.size());
    Vector cbar = Vector::Zero(C.cols());
    for (TokenId id : context_ids) cbar += C.row(id);
    cbar *= inv_ctx;

    Vector cgrad = Vector::Zero(C.cols());
    double loss = 0.0;

    double f_pos = U.row(target).dot(cbar);
    if (!std::isfinite(f_pos))
        throw NumericError("non-finite activation for token id " + std::to_string(target) +
                           " at step " + std::to_string(step_for_diagnostics));
    double g_pos = 1.0 - sigmoid(f_pos);
    loss -= log_sigmoid(f_pos);
    cgrad += g_pos * U.row(target);

    // Per-negative coefficients, all from the pre-update matrices so the
    // applied update equals the exact sample gradient even when a negative
    // repeats.
    std::vector<double> g_neg(negatives.size());
    for (std::size_t i = 0; i < negatives.size(); ++i) {
        double f = U.row(negatives[i]).dot(cbar);
        if (!std::isfinite(f))
            throw NumericError("non-finite activation for token id " + std::to_string(negatives[i]) +
                               " at step " + std::to_string(step_for_diagnostics));
        double s = sigmoid(f);
        g_neg[i] = -s;
        loss -= log_sigmoid(-f);
        cgrad += g_neg[i] * U.row(negatives[i]);
    }

    if (!freeze_output) {
        U.row(target) += (lr * g_pos) * cbar;
        for (std::size_t i = 0; i < negatives.size(); ++i)
            U.row(negatives[i]) += (lr * g_neg[i]) * cbar;
    }
    const double scale = lr * inv_ctx;
    for (TokenId id : context_ids) C.row(id) += scale * cgrad;
    return loss;
}

struct WorkerResult {
    std::size_t samples = 0;
    double loss_sum = 0.0;
};

}  // namespace

void TrainConfig::validate() const {
    if (dim < 1) throw ConfigError("dim must be >= 1");
    if (window < 1) throw ConfigError("window must be >= 1");
    if (negative < 0) throw ConfigError("negative must be >= 0");
    if (learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
    if (lr_floor_fraction < 0.0 || lr_floor_fraction > 1.0)
        throw ConfigError("lr_floor_fraction must be in [0, 1]");
    if (epochs < 1) throw ConfigError("epochs must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (subsample < 0.0) throw ConfigError("subsample must be >= 0");
}

std::vector<TokenId> context_window(const IdSentence& sentence, std::size_t position, int window) {
    std::vector<TokenId> out;
    if (position >= sentence.size()) return out;
    std::size_t begin = position >= static_cast<std::size_t>(window) ? position - window : 0;
    std::size_t end = std::min(sentence.size(), position + static_cast<std::size_t>(window) + 1);
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i)
        if (i != position) out.push_back(sentence[i]);
    return out;
}

Vector context_mean(const std::vector<TokenId>& context_ids, const EmbeddingMatrix& C) {
    if (context_ids.empty()) throw ConfigError("context_mean requires a non-empty context");
    Vector mean = Vector::Zero(C.cols());
    for (TokenId id : context_ids) mean += C.row(id);
    return mean / static_cast<double>(context_ids.size());
}

double pair_loss(TokenId target, const std::vector<TokenId>& context_ids,
                 const std::vector<TokenId>& negatives, const EmbeddingMatrix& C,
                 const EmbeddingMatrix& U) {
    Vector cbar = context_mean(context_ids, C);
    double loss = -log_sigmoid(U.row(target).dot(cbar));
    for (TokenId id : negatives) loss -= log_sigmoid(-U.row(id).dot(cbar));
    return loss;
}

double train_pair(TokenId target, const std::vector<TokenId>& context_ids,
                  const std::vector<TokenId>& negatives, EmbeddingMatrix& C, EmbeddingMatrix& U,
                  double lr, bool freeze_output) {
    return pair_step(target, context_ids, negatives, C, U, lr, freeze_output, 0);
}

double train_pair(TokenId target, const std::vector<TokenId>& context_ids,
                  const NegativeSampler& sampler, std::mt19937_64& rng, EmbeddingMatrix& C,
                  EmbeddingMatrix& U, double lr, int k, bool freeze_output) {
    std::vector<TokenId> negatives;
    negatives.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        TokenId id = sampler.draw_excluding(rng, target);
        if (id != kNoToken) negatives.push_back(id);
    }
    return pair_step(target, context_ids, negatives, C, U, lr, freeze_output, 0);
}

EpochStats train_epoch(const std::vector<IdSentence>& sentences, const TrainConfig& config,
                       EmbeddingMatrix& C, EmbeddingMatrix& U, const NegativeSampler& sampler,
                       TrainProgress& progress, int epoch_index, const Vocabulary* vocab) {
    config.validate();
    if (config.subsample > 0.0 && vocab == nullptr)
        throw ConfigError("subsampling requires the vocabulary for frequency lookups");

    // Keep probability per token id when subsampling is on.
    std::vector<double> keep_prob;
    if (config.subsample > 0.0) {
        double total = 0.0;
        for (auto c : vocab->counts()) total += static_cast<double>(c);
        keep_prob.resize(vocab->size(), 1.0);
        for (std::size_t i = 0; i < vocab->size(); ++i) {
            double freq = static_cast<double>(vocab->count(static_cast<TokenId>(i))) / total;
            keep_prob[i] = std::min(1.0, std::sqrt(config.subsample / freq));
        }
    }

    const int workers = std::min<int>(config.workers, std::max<std::size_t>(1, sentences.size()));
    std::vector<WorkerResult> results(workers);

    auto run_block = [&](int worker, std::size_t begin, std::size_t end) {
        std::mt19937_64 rng(derive_seed(config.seed, "epoch/" + std::to_string(epoch_index) +
                                                         "/worker/" + std::to_string(worker)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<TokenId> context;
        std::vector<TokenId> negatives;
        WorkerResult& res = results[worker];

        for (std::size_t s = begin; s < end; ++s) {
            const IdSentence& sentence = sentences[s];
            for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
                std::size_t step = progress.done.fetch_add(1, std::memory_order_relaxed);
                double lr = lr_at(config, step, progress.total_planned);
                if (!keep_prob.empty() && unit(rng) > keep_prob[sentence[pos]]) continue;

                int window = config.window;
                if (config.dynamic_window)
                    window = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(config.window));

                context.clear();
                std::size_t b = pos >= static_cast<std::size_t>(window) ? pos - window : 0;
                std::size_t e = std::min(sentence.size(), pos + static_cast<std::size_t>(window) + 1);
                for (std::size_t i = b; i < e; ++i)
                    if (i != pos) context.push_back(sentence[i]);
                if (context.empty()) continue;

                negatives.clear();
                for (int k = 0; k < config.negative; ++k) {
                    TokenId id = sampler.draw_excluding(rng, sentence[pos]);
                    if (id != kNoToken) negatives.push_back(id);
                }
                res.loss_sum += pair_step(sentence[pos], context, negatives, C, U, lr,
                                          config.freeze_output, step);
                ++res.samples;
            }
        }
    };

    if (workers == 1) {
        run_block(0, 0, sentences.size());
    } else {
        std::vector<std::thread> threads;
        std::size_t chunk = (sentences.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::size_t begin = std::min(sentences.size(), static_cast<std::size_t>(w) * chunk);
            std::size_t end = std::min(sentences.size(), begin + chunk);
            threads.emplace_back(run_block, w, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    EpochStats stats;
    double loss_sum = 0.0;
    for (const auto& r : results) {
        stats.samples += r.samples;
        loss_sum += r.loss_sum;
    }
    stats.mean_loss = stats.samples ? loss_sum / static_cast<double>(stats.samples) : 0.0;

    if (!C.allFinite() || !U.allFinite())
        throw NumericError("non-finite matrix entries after epoch " + std::to_string(epoch_index));
    return stats;
}

std::vector<EpochStats> train_cbow(const std::vector<IdSentence>& sentences,
                                   const TrainConfig& config, EmbeddingMatrix& C,
                                   EmbeddingMatrix& U, const NegativeSampler& sampler,
                                   const Vocabulary* vocab) {
    config.validate();
    TrainProgress progress;
    for (const auto& s : sentences) progress.total_planned += s.size();
    progress.total_planned *= static_cast<std::size_t>(config.epochs);

    std::vector<EpochStats> stats;
    stats.reserve(static_cast<std::size_t>(config.epochs));
    for (int e = 0; e < config.epochs; ++e)
        stats.push_back(train_epoch(sentences, config, C, U, sampler, progress, e, vocab));
    return stats;
}

}  // namespace cade
