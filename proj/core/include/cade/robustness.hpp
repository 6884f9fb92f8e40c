#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "cade/compass.hpp"
#include "cade/corpus.hpp"

namespace cade {

// Vocabulary-splitting plan for twin-slice generation: a sampled fraction q
// of the slice's distinct tokens is rewritten as token+suffix_A in one twin
// and token+suffix_B in the other.
struct SplitSpec {
    double separation_rate = 0.0;  // q
    std::string suffix_a = "_A";
    std::string suffix_b = "_B";
    // original -> (twin_A token, twin_B token), only for split tokens
    std::map<std::string, std::pair<std::string, std::string>> mapping;
};

// Deep copy under a new id.
SliceCorpus duplicate_slice(const SliceCorpus& slice, const std::string& new_id);

// Each token is independently replaced with probability p by a uniformly
// sampled different token from the slice's own vocabulary. Sentence lengths
// are preserved. Throws ConfigError when p > 0 and the vocabulary has a
// single token (no different word exists).
SliceCorpus scramble(const SliceCorpus& slice, double p, std::mt19937_64& rng);

// Samples round(q * |V_slice|) distinct tokens without replacement and
// builds the suffix mapping. Throws ConfigError when a suffixed token
// collides with an existing one.
SplitSpec make_split_spec(const SliceCorpus& slice, double q, const std::string& suffix_a,
                          const std::string& suffix_b, std::mt19937_64& rng);

// Applies the spec: twin_A rewrites every split token with suffix_a, twin_B
// with suffix_b; unsplit tokens are untouched.
std::pair<SliceCorpus, SliceCorpus> split_vocabulary(const SliceCorpus& slice,
                                                     const SplitSpec& spec);

// Global random permutation of all token positions; sentence lengths and
// the token multiset are preserved.
SliceCorpus shuffle_slice(const SliceCorpus& slice, std::mt19937_64& rng);

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

SummaryStats summarize(std::vector<double> values);

struct SimilarityReport {
    std::vector<double> split_scores;
    std::vector<double> unsplit_scores;
    std::size_t skipped_untrained = 0;

    std::vector<double> all_scores() const;
};

// Cosine between each sampled token's vectors in the two models. Tokens in
// the split mapping are compared as (token+suffix_A in A, token+suffix_B in
// B); the sample names ORIGINAL tokens. Untrained tokens are skipped and
// counted. Split and unsplit scores are reported separately.
SimilarityReport same_word_similarity(const AlignedSliceModel& model_a,
                                      const AlignedSliceModel& model_b,
                                      const std::vector<std::string>& sample,
                                      const SplitSpec* spec = nullptr);

struct MatchResult {
    double rate = 0.0;
    std::size_t evaluated = 0;
    std::size_t skipped_untrained = 0;
};

// Fraction of sampled tokens whose A->B correspondence is the expected twin:
// token+suffix_B for split tokens, the token itself otherwise.
MatchResult correspondence_match_rate(const AlignedSliceModel& model_a,
                                      const AlignedSliceModel& model_b,
                                      const std::vector<std::string>& sample,
                                      const SplitSpec* spec = nullptr);

// One (parameter, stats) table row per sweep point, TSV with columns
// parameter, n, mean, q1, median, q3.
void write_sweep_table(const std::string& path,
                       const std::vector<std::pair<double, SummaryStats>>& rows);

}  // namespace cade
