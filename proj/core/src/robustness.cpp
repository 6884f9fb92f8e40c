#include "cade/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "cade/errors.hpp"
#include "cade/format.hpp"
#include "cade/query.hpp"

namespace cade {

namespace {

// Distinct tokens in first-occurrence order, so sampling is deterministic
// under a fixed seed.
std::vector<std::string> distinct_tokens(const SliceCorpus& slice) {
    std::vector<std::string> tokens;
    std::unordered_set<std::string> seen;
    for (const auto& sentence : slice.sentences)
        for (const auto& tok : sentence)
            if (seen.insert(tok).second) tokens.push_back(tok);
    return tokens;
}

}  // namespace

SliceCorpus duplicate_slice(const SliceCorpus& slice, const std::string& new_id) {
    SliceCorpus copy = slice;
    copy.slice_id = new_id;
    return copy;
}

SliceCorpus scramble(const SliceCorpus& slice, double p, std::mt19937_64& rng) {
    if (p < 0.0 || p > 1.0) throw ConfigError("scramble probability must be in [0, 1]");
    auto tokens = distinct_tokens(slice);
    if (p > 0.0 && tokens.size() < 2)
        throw ConfigError("impossible replacement: vocabulary of size " +
                          std::to_string(tokens.size()) + " has no different word");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, tokens.empty() ? 0 : tokens.size() - 1);

    SliceCorpus noisy = slice;
    for (auto& sentence : noisy.sentences) {
        for (auto& tok : sentence) {
            if (p == 0.0 || unit(rng) >= p) continue;
            std::string replacement;
            do {
                replacement = tokens[pick(rng)];
            } while (replacement == tok);
            tok = replacement;
        }
    }
    return noisy;
}

SplitSpec make_split_spec(const SliceCorpus& slice, double q, const std::string& suffix_a,
                          const std::string& suffix_b, std::mt19937_64& rng) {
    if (q < 0.0 || q > 1.0) throw ConfigError("separation rate q must be in [0, 1]");
    if (suffix_a == suffix_b) throw ConfigError("split suffixes must differ");

    auto tokens = distinct_tokens(slice);
    std::unordered_set<std::string> existing(tokens.begin(), tokens.end());
    auto split_count = static_cast<std::size_t>(std::llround(q * static_cast<double>(tokens.size())));

    // Partial Fisher-Yates: the first split_count entries are the sample.
    for (std::size_t i = 0; i < split_count && i + 1 < tokens.size(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, tokens.size() - 1);
        std::swap(tokens[i], tokens[pick(rng)]);
    }

    SplitSpec spec;
    spec.separation_rate = q;
    spec.suffix_a = suffix_a;
    spec.suffix_b = suffix_b;
    for (std::size_t i = 0; i < split_count; ++i) {
        std::string a = tokens[i] + suffix_a;
        std::string b = tokens[i] + suffix_b;
        if (existing.count(a) || existing.count(b))
            throw ConfigError("split suffix collides with existing token: " + tokens[i]);
        spec.mapping.emplace(tokens[i], std::make_pair(std::move(a), std::move(b)));
    }
    return spec;
}

std::pair<SliceCorpus, SliceCorpus> split_vocabulary(const SliceCorpus& slice,
                                                     const SplitSpec& spec) {
    SliceCorpus twin_a = slice;
    twin_a.slice_id = slice.slice_id + spec.suffix_a;
    SliceCorpus twin_b = slice;
    twin_b.slice_id = slice.slice_id + spec.suffix_b;

    auto rewrite = [&](SliceCorpus& twin, bool first) {
        for (auto& sentence : twin.sentences) {
            for (auto& tok : sentence) {
                auto it = spec.mapping.find(tok);
                if (it != spec.mapping.end()) tok = first ? it->second.first : it->second.second;
            }
        }
    };
    rewrite(twin_a, true);
    rewrite(twin_b, false);
    return {std::move(twin_a), std::move(twin_b)};
}

SliceCorpus shuffle_slice(const SliceCorpus& slice, std::mt19937_64& rng) {
    std::vector<std::string> stream;
    stream.reserve(slice.token_count());
    for (const auto& sentence : slice.sentences)
        for (const auto& tok : sentence) stream.push_back(tok);
    std::shuffle(stream.begin(), stream.end(), rng);

    SliceCorpus shuffled;
    shuffled.slice_id = slice.slice_id;
    shuffled.sentences.reserve(slice.sentences.size());
    std::size_t next = 0;
    for (const auto& sentence : slice.sentences) {
        Sentence s(stream.begin() + next, stream.begin() + next + sentence.size());
        next += sentence.size();
        shuffled.sentences.push_back(std::move(s));
    }
    return shuffled;
}

SummaryStats summarize(std::vector<double> values) {
    SummaryStats stats;
    stats.n = values.size();
    if (values.empty()) return stats;
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());

    auto quantile = [&](double q) {
        double idx = q * static_cast<double>(values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(idx);
        std::size_t hi = std::min(lo + 1, values.size() - 1);
        double frac = idx - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    stats.q1 = quantile(0.25);
    stats.median = quantile(0.5);
    stats.q3 = quantile(0.75);
    return stats;
}

std::vector<double> SimilarityReport::all_scores() const {
    std::vector<double> all = unsplit_scores;
    all.insert(all.end(), split_scores.begin(), split_scores.end());
    return all;
}

namespace {

// Resolves the token a sample entry names inside one twin model.
TokenId resolve_in_model(const std::string& token, const AlignedSliceModel& model,
                         const SplitSpec* spec, bool twin_a, bool* is_split) {
    *is_split = false;
    std::string name = token;
    if (spec) {
        auto it = spec->mapping.find(token);
        if (it != spec->mapping.end()) {
            *is_split = true;
            name = twin_a ? it->second.first : it->second.second;
        }
    }
    TokenId id = model.vocab->id_of(name);
    if (id == kNoToken || !model.trained[id]) return kNoToken;
    return id;
}

}  // namespace

SimilarityReport same_word_similarity(const AlignedSliceModel& model_a,
                                      const AlignedSliceModel& model_b,
                                      const std::vector<std::string>& sample,
                                      const SplitSpec* spec) {
    SimilarityReport report;
    for (const auto& token : sample) {
        bool split_a = false;
        bool split_b = false;
        TokenId ida = resolve_in_model(token, model_a, spec, true, &split_a);
        TokenId idb = resolve_in_model(token, model_b, spec, false, &split_b);
        if (ida == kNoToken || idb == kNoToken) {
            ++report.skipped_untrained;
            continue;
        }
        Vector va = model_a.context.row(ida);
        Vector vb = model_b.context.row(idb);
        if (va.norm() == 0.0 || vb.norm() == 0.0) {
            ++report.skipped_untrained;
            continue;
        }
        double sim = cosine(va, vb);
        (split_a ? report.split_scores : report.unsplit_scores).push_back(sim);
    }
    return report;
}

MatchResult correspondence_match_rate(const AlignedSliceModel& model_a,
                                      const AlignedSliceModel& model_b,
                                      const std::vector<std::string>& sample,
                                      const SplitSpec* spec) {
    Framework framework({&model_a, &model_b});
    const Vocabulary& vocab = *model_a.vocab;

    MatchResult result;
    std::size_t matches = 0;
    for (const auto& token : sample) {
        bool split_a = false;
        bool split_b = false;
        TokenId ida = resolve_in_model(token, model_a, spec, true, &split_a);
        TokenId idb = resolve_in_model(token, model_b, spec, false, &split_b);
        if (ida == kNoToken || idb == kNoToken) {
            ++result.skipped_untrained;
            continue;
        }
        TokenId found = framework.correspondence(vocab.token(ida), model_a.slice_id, model_b.slice_id);
        if (found == idb) ++matches;
        ++result.evaluated;
    }
    if (result.evaluated > 0)
        result.rate = static_cast<double>(matches) / static_cast<double>(result.evaluated);
    return result;
}

void write_sweep_table(const std::string& path,
                       const std::vector<std::pair<double, SummaryStats>>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write sweep table: " + path);
    out << "parameter\tn\tmean\tq1\tmedian\tq3\n";
    for (const auto& [param, stats] : rows) {
        out << format_real(param) << '\t' << stats.n << '\t' << format_real(stats.mean) << '\t'
            << format_real(stats.q1) << '\t' << format_real(stats.median) << '\t'
            << format_real(stats.q3) << '\n';
    }
}

}  // namespace cade
