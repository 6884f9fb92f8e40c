#include "cade/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "cade/errors.hpp"
#include "cade/hash.hpp"
#include "cade/format.hpp"

namespace cade {

namespace {

constexpr int kMpKs[] = {1, 3, 5, 10};
constexpr int kHitsKs[] = {5, 10};

double log_sigmoid(double x) {
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

std::optional<int> parse_int(const std::string& s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

// Accumulates rank outcomes for one report row.
struct RowAccumulator {
    std::size_t n = 0;
    double rr_sum = 0.0;
    std::map<int, std::size_t> mp_hits;
    std::size_t static_answers = 0;

    void add(std::size_t gold_rank, bool answer_is_static) {
        ++n;
        if (gold_rank > 0) {
            rr_sum += 1.0 / static_cast<double>(gold_rank);
            for (int k : kMpKs)
                if (gold_rank <= static_cast<std::size_t>(k)) ++mp_hits[k];
        }
        if (answer_is_static) ++static_answers;
    }

    MetricRow finish() const {
        MetricRow row;
        row.n = n;
        if (n == 0) return row;
        row.mrr = rr_sum / static_cast<double>(n);
        for (int k : kMpKs) {
            auto it = mp_hits.find(k);
            row.mp[k] = it == mp_hits.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
        }
        for (int k : kHitsKs) row.hits[k] = row.mp.at(k);
        row.stat = static_cast<double>(static_answers) / static_cast<double>(n);
        return row;
    }
};

}  // namespace

std::optional<int> AnalogyItem::time_depth() const {
    auto a = parse_int(slice_i);
    auto b = parse_int(slice_j);
    if (!a || !b) return std::nullopt;
    return std::abs(*a - *b);
}

std::vector<AnalogyItem> load_analogy_testset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open analogy test set: " + path);
    std::vector<AnalogyItem> items;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tsv(line);
        if (fields.size() != 5)
            throw ConfigError("malformed analogy row at line " + std::to_string(lineno) +
                              ": expected 5 tab-separated fields, got " + std::to_string(fields.size()));
        items.push_back({fields[1], fields[2], fields[3], fields[4], fields[0]});
    }
    return items;
}

std::vector<std::pair<std::string, std::string>> load_pair_testset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pair test set: " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tsv(line);
        if (fields.size() != 2)
            throw ConfigError("malformed pair row at line " + std::to_string(lineno) +
                              ": expected 2 tab-separated fields, got " + std::to_string(fields.size()));
        pairs.emplace_back(fields[0], fields[1]);
    }
    return pairs;
}

EvalReport evaluate_analogies(const std::vector<AnalogyItem>& testset, const Framework& framework,
                              std::size_t k_max, std::vector<AnswerRecord>* answers) {
    EvalReport report;
    report.k_max = k_max;

    RowAccumulator all, stat_subset, dyn_subset;
    std::map<std::string, RowAccumulator> categories;
    std::map<int, RowAccumulator> depths;
    const Vocabulary& vocab = framework.vocab();

    for (const auto& item : testset) {
        const AlignedSliceModel& src = framework.model(item.slice_i);
        const AlignedSliceModel& dst = framework.model(item.slice_j);
        TokenId w1 = vocab.id_of(item.w1);
        TokenId gold = vocab.id_of(item.gold);
        if (w1 == kNoToken || gold == kNoToken || !src.trained[w1] || !dst.trained[gold]) {
            ++report.skipped_oov;
            continue;
        }

        NeighborList list = framework.top_k(w1, item.slice_i, item.slice_j, k_max);
        std::size_t gold_rank = 0;
        for (std::size_t i = 0; i < list.entries.size(); ++i) {
            if (list.entries[i].first == gold) {
                gold_rank = i + 1;
                break;
            }
        }
        TokenId top1 = list.entries.empty() ? kNoToken : list.entries.front().first;
        bool answer_is_static = top1 == w1;

        ++report.evaluated;
        all.add(gold_rank, answer_is_static);
        (item.is_static() ? stat_subset : dyn_subset).add(gold_rank, answer_is_static);
        categories[item.category].add(gold_rank, answer_is_static);
        if (auto depth = item.time_depth()) depths[*depth].add(gold_rank, answer_is_static);
        if (answers) answers->push_back({item, top1, gold_rank});
    }

    if (report.evaluated == 0)
        throw ConfigError("evaluation error: no analogy item has both words in vocabulary");

    report.subsets["All"] = all.finish();
    if (stat_subset.n) report.subsets["Static"] = stat_subset.finish();
    if (dyn_subset.n) report.subsets["Dynamic"] = dyn_subset.finish();
    for (const auto& [name, acc] : categories) report.categories[name] = acc.finish();
    for (const auto& [depth, acc] : depths) report.time_depth[depth] = acc.finish();
    return report;
}

double staticness(const std::vector<std::pair<std::string, std::string>>& input_and_answer) {
    if (input_and_answer.empty()) throw ConfigError("staticness over an empty answer set");
    std::size_t static_answers = 0;
    for (const auto& [input, answer] : input_and_answer)
        if (input == answer) ++static_answers;
    return static_cast<double>(static_answers) / static_cast<double>(input_and_answer.size());
}

double staticness(const std::vector<AnswerRecord>& answers, const Vocabulary& vocab) {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(answers.size());
    for (const auto& rec : answers)
        pairs.emplace_back(rec.item.w1, rec.top1 == kNoToken ? "" : vocab.token(rec.top1));
    return staticness(pairs);
}

namespace {

// Balanced per-position log-likelihood shared by the held-out metrics.
double position_loglik(const EmbeddingMatrix& context, const EmbeddingMatrix& target,
                       TokenId center, const std::vector<TokenId>& ctx,
                       const std::vector<TokenId>& negatives) {
    Vector cbar = Vector::Zero(context.cols());
    for (TokenId id : ctx) cbar += context.row(id);
    cbar /= static_cast<double>(ctx.size());

    double positive = log_sigmoid(target.row(center).dot(cbar));
    if (negatives.empty()) return positive;
    double negative = 0.0;
    for (TokenId id : negatives) negative += log_sigmoid(-target.row(id).dot(cbar));
    return 0.5 * positive + 0.5 * negative / static_cast<double>(negatives.size());
}

// Negative draws are seeded from the sentence content, not the stream
// position, so held-out scores are invariant to sentence order.
std::mt19937_64 sentence_rng(std::uint64_t seed, const IdSentence& sentence) {
    Fnv1a h;
    h.update(&seed, sizeof(seed));
    for (TokenId id : sentence) h.update(&id, sizeof(id));
    return std::mt19937_64(h.value);
}

std::vector<IdSentence> chunk_positions(const std::vector<IdSentence>& sentences, int chunk) {
    if (chunk <= 0) return sentences;
    std::vector<IdSentence> out;
    IdSentence current;
    current.reserve(static_cast<std::size_t>(chunk));
    for (const auto& s : sentences) {
        for (TokenId id : s) {
            current.push_back(id);
            if (static_cast<int>(current.size()) == chunk) {
                out.push_back(std::move(current));
                current.clear();
            }
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

}  // namespace

HeldoutResult heldout_loglikelihood(const EmbeddingMatrix& context, const EmbeddingMatrix& target,
                                    const Vocabulary& vocab, const SliceCorpus& heldout,
                                    const NegativeSampler& sampler, const HeldoutOptions& options) {
    if (options.window < 1) throw ConfigError("held-out window must be >= 1");
    if (options.negative < 0) throw ConfigError("held-out negative count must be >= 0");

    auto sentences = vocab.encode(heldout);

    double sum = 0.0;
    std::size_t positions = 0;
    std::vector<TokenId> negatives;
    for (const auto& sentence : sentences) {
        std::mt19937_64 rng = sentence_rng(options.seed, sentence);
        for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
            auto ctx = context_window(sentence, pos, options.window);
            if (ctx.empty()) continue;
            negatives.clear();
            for (int k = 0; k < options.negative; ++k) {
                TokenId id = sampler.draw_excluding(rng, sentence[pos]);
                if (id != kNoToken) negatives.push_back(id);
            }
            sum += position_loglik(context, target, sentence[pos], ctx, negatives);
            ++positions;
        }
    }
    if (positions == 0)
        throw ConfigError("evaluation error: held-out text has no eligible positions");
    return {sum / static_cast<double>(positions), positions};
}

std::vector<double> log_normalize(const std::vector<double>& logliks) {
    if (logliks.empty()) throw ConfigError("log_normalize over an empty vector");
    double max_ll = *std::max_element(logliks.begin(), logliks.end());
    double denom = 0.0;
    for (double ll : logliks) denom += std::exp(ll - max_ll);
    std::vector<double> out(logliks.size());
    for (std::size_t i = 0; i < logliks.size(); ++i) out[i] = std::exp(logliks[i] - max_ll) / denom;
    return out;
}

PosteriorResult posterior_classification(const std::vector<ScoringModel>& models,
                                         const std::vector<SliceCorpus>& heldout,
                                         const Vocabulary& vocab, const NegativeSampler& sampler,
                                         const PosteriorOptions& options) {
    if (models.size() < 2) throw ConfigError("posterior classification needs at least 2 models");
    for (const auto& m : models)
        if (!m.context || !m.target) throw ConfigError("scoring model missing matrices: " + m.slice_id);

    PosteriorResult result;
    double total = 0.0;
    std::size_t slices_scored = 0;

    for (const auto& slice : heldout) {
        std::size_t correct = models.size();
        for (std::size_t i = 0; i < models.size(); ++i)
            if (models[i].slice_id == slice.slice_id) correct = i;
        if (correct == models.size())
            throw ConfigError("held-out slice has no matching model: " + slice.slice_id);

        auto sentences = chunk_positions(vocab.encode(slice), options.sentence_chunk);

        double posterior_sum = 0.0;
        std::size_t used = 0;
        std::size_t skipped = 0;
        std::vector<double> logliks(models.size());
        std::vector<TokenId> negatives;

        for (const auto& sentence : sentences) {
            std::mt19937_64 rng = sentence_rng(options.seed, sentence);
            std::fill(logliks.begin(), logliks.end(), 0.0);
            std::size_t positions = 0;
            for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
                auto ctx = context_window(sentence, pos, options.window);
                if (ctx.empty()) continue;
                // One draw per position, shared across models: identical
                // models must produce identical likelihoods.
                negatives.clear();
                for (int k = 0; k < options.negative; ++k) {
                    TokenId id = sampler.draw_excluding(rng, sentence[pos]);
                    if (id != kNoToken) negatives.push_back(id);
                }
                for (std::size_t m = 0; m < models.size(); ++m)
                    logliks[m] += position_loglik(*models[m].context, *models[m].target,
                                                  sentence[pos], ctx, negatives);
                ++positions;
            }
            if (positions == 0) {
                ++skipped;
                continue;
            }
            posterior_sum += log_normalize(logliks)[correct];
            ++used;
        }

        if (used == 0)
            throw ConfigError("evaluation error: held-out slice '" + slice.slice_id +
                              "' has no scorable sentences");
        result.per_slice[slice.slice_id] = posterior_sum / static_cast<double>(used);
        result.sentences_used[slice.slice_id] = used;
        result.sentences_skipped[slice.slice_id] = skipped;
        total += result.per_slice[slice.slice_id];
        ++slices_scored;
    }

    if (slices_scored == 0) throw ConfigError("posterior classification needs held-out slices");
    result.mean = total / static_cast<double>(slices_scored);
    return result;
}

HitsResult hits_at_k(const std::vector<std::pair<std::string, std::string>>& pairs,
                     const std::string& source_slice, const std::string& target_slice,
                     const Framework& framework, std::size_t k) {
    const Vocabulary& vocab = framework.vocab();
    const AlignedSliceModel& src = framework.model(source_slice);
    const AlignedSliceModel& dst = framework.model(target_slice);

    HitsResult result;
    std::size_t hits = 0;
    for (const auto& [source_word, gold_word] : pairs) {
        TokenId w = vocab.id_of(source_word);
        TokenId gold = vocab.id_of(gold_word);
        if (w == kNoToken || gold == kNoToken || !src.trained[w] || !dst.trained[gold]) {
            ++result.skipped;
            continue;
        }
        NeighborList list = framework.top_k(w, source_slice, target_slice, k);
        for (const auto& [id, sim] : list.entries) {
            if (id == gold) {
                ++hits;
                break;
            }
        }
        ++result.evaluated;
    }
    if (result.evaluated == 0)
        throw ConfigError("evaluation error: no pair has both words in vocabulary");
    result.rate = static_cast<double>(hits) / static_cast<double>(result.evaluated);
    return result;
}

namespace {

void write_metric_table(std::ofstream& out, const std::string& key_name) {
    out << key_name << "\tn\tmrr\tmp1\tmp3\tmp5\tmp10\thits5\thits10\tstat\n";
}

void write_metric_row(std::ofstream& out, const std::string& key, const MetricRow& row) {
    out << key << '\t' << row.n << '\t' << format_real(row.mrr);
    for (int k : kMpKs) out << '\t' << format_real(row.mp.count(k) ? row.mp.at(k) : 0.0);
    for (int k : kHitsKs) out << '\t' << format_real(row.hits.count(k) ? row.hits.at(k) : 0.0);
    out << '\t' << format_real(row.stat) << '\n';
}

}  // namespace

void write_report(const EvalReport& report, const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);

    {
        std::ofstream out(fs::path(directory) / "subsets.tsv");
        write_metric_table(out, "subset");
        for (const auto& [name, row] : report.subsets) write_metric_row(out, name, row);
    }
    {
        std::ofstream out(fs::path(directory) / "categories.tsv");
        write_metric_table(out, "category");
        for (const auto& [name, row] : report.categories) write_metric_row(out, name, row);
    }
    {
        std::ofstream out(fs::path(directory) / "time_depth.tsv");
        write_metric_table(out, "delta_t");
        for (const auto& [depth, row] : report.time_depth)
            write_metric_row(out, std::to_string(depth), row);
    }
    {
        std::ofstream out(fs::path(directory) / "summary.tsv");
        out << "key\tvalue\n";
        out << "evaluated\t" << report.evaluated << '\n';
        out << "skipped_oov\t" << report.skipped_oov << '\n';
        out << "k_max\t" << report.k_max << '\n';
    }
}

}  // namespace cade
