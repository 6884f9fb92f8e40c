#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cade/compass.hpp"
#include "cade/corpus.hpp"
#include "cade/query.hpp"

namespace cade {

// One cross-corpora analogy "w1 : slice_i :: gold : slice_j".
struct AnalogyItem {
    std::string w1;
    std::string slice_i;
    std::string gold;
    std::string slice_j;
    std::string category;

    bool is_static() const { return w1 == gold; }
    // |slice_i - slice_j| when both ids parse as integers.
    std::optional<int> time_depth() const;
};

// TSV columns: category, w1, slice_i, w2, slice_j. Malformed rows raise
// ConfigError naming the line number.
std::vector<AnalogyItem> load_analogy_testset(const std::string& path);

// TSV columns: source_word, target_word.
std::vector<std::pair<std::string, std::string>> load_pair_testset(const std::string& path);

struct MetricRow {
    std::size_t n = 0;
    double mrr = 0.0;
    std::map<int, double> mp;    // K in {1,3,5,10}
    std::map<int, double> hits;  // K in {5,10}
    double stat = 0.0;
};

struct EvalReport {
    std::map<std::string, MetricRow> subsets;  // All / Static / Dynamic
    std::map<std::string, MetricRow> categories;
    std::map<int, MetricRow> time_depth;
    std::size_t evaluated = 0;
    std::size_t skipped_oov = 0;
    std::size_t k_max = 0;  // 0 = full scan
};

// Per-item outcome, kept for staticness and error analysis.
struct AnswerRecord {
    AnalogyItem item;
    TokenId top1 = kNoToken;
    std::size_t gold_rank = 0;  // 1-based, 0 when the gold is outside the top k_max
};

// Ranks every in-vocabulary item's gold among the top k_max cross-corpora
// neighbors of w1 (k_max = 0 scans the whole target vocabulary, giving
// exact ranks). Items whose w1 or gold is untrained in its slice are
// skipped and counted. Throws ConfigError when nothing remains.
EvalReport evaluate_analogies(const std::vector<AnalogyItem>& testset, const Framework& framework,
                              std::size_t k_max, std::vector<AnswerRecord>* answers = nullptr);

// Fraction of answers equal to their input word.
double staticness(const std::vector<std::pair<std::string, std::string>>& input_and_answer);
double staticness(const std::vector<AnswerRecord>& answers, const Vocabulary& vocab);

struct HeldoutOptions {
    int window = 5;
    int negative = 5;
    std::uint64_t seed = 1;
};

struct HeldoutResult {
    double normalized_loglik = 0.0;  // mean per-position balanced log-likelihood
    std::size_t positions = 0;
};

// Mean over eligible positions of
//   1/2 log s(u_x . cbar) + 1/2 * (1/K) sum log s(-u_neg . cbar),
// the positive and negative halves contributing equally. Positions need an
// in-vocabulary target and a non-empty in-vocabulary context.
HeldoutResult heldout_loglikelihood(const EmbeddingMatrix& context, const EmbeddingMatrix& target,
                                    const Vocabulary& vocab, const SliceCorpus& heldout,
                                    const NegativeSampler& sampler, const HeldoutOptions& options);

// log-space softmax: posteriors over class log-likelihoods, safe for values
// as low as -1e3 and summing to 1.
std::vector<double> log_normalize(const std::vector<double>& logliks);

// One slice's scoring pair for held-out classification.
struct ScoringModel {
    std::string slice_id;
    const EmbeddingMatrix* context = nullptr;
    const EmbeddingMatrix* target = nullptr;
};

struct PosteriorOptions {
    int window = 5;
    int negative = 5;
    int sentence_chunk = 20;  // 0 keeps the held-out sentence boundaries
    std::uint64_t seed = 1;
};

struct PosteriorResult {
    std::map<std::string, double> per_slice;  // mean posterior of the correct label
    double mean = 0.0;
    std::map<std::string, std::size_t> sentences_used;
    std::map<std::string, std::size_t> sentences_skipped;
};

// Bayes classification of held-out text over T slice models with a uniform
// prior. Negative draws are shared across models at each position so that
// identical models score identically. Held-out slices pair with models by
// slice_id.
PosteriorResult posterior_classification(const std::vector<ScoringModel>& models,
                                         const std::vector<SliceCorpus>& heldout,
                                         const Vocabulary& vocab, const NegativeSampler& sampler,
                                         const PosteriorOptions& options);

struct HitsResult {
    double rate = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

// Fraction of pairs whose gold target appears in the top-k neighbors of the
// source word across slices.
HitsResult hits_at_k(const std::vector<std::pair<std::string, std::string>>& pairs,
                     const std::string& source_slice, const std::string& target_slice,
                     const Framework& framework, std::size_t k);

// TSV emission: subsets.tsv, categories.tsv, time_depth.tsv, summary.tsv.
void write_report(const EvalReport& report, const std::string& directory);

}  // namespace cade
