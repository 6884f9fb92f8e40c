#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cade/errors.hpp"
#include "cade/robustness.hpp"
#include "cade/text.hpp"
#include "support/models.hpp"

using namespace cade;
using cade::testing::toy_model;
using cade::testing::toy_vocab;

namespace {

SliceCorpus slice_from(const std::string& id, const std::string& text) {
    SliceCorpus slice;
    slice.slice_id = id;
    slice.sentences = tokenize(text);
    return slice;
}

std::multiset<std::string> token_multiset(const SliceCorpus& slice) {
    std::multiset<std::string> tokens;
    for (const auto& s : slice.sentences) tokens.insert(s.begin(), s.end());
    return tokens;
}

std::set<std::string> token_set(const SliceCorpus& slice) {
    std::set<std::string> tokens;
    for (const auto& s : slice.sentences) tokens.insert(s.begin(), s.end());
    return tokens;
}

SliceCorpus numbered_slice(const std::string& id, int distinct, int repeats) {
    SliceCorpus slice;
    slice.slice_id = id;
    for (int r = 0; r < repeats; ++r) {
        Sentence sentence;
        for (int i = 0; i < distinct; ++i) sentence.push_back("w" + std::to_string(i));
        slice.sentences.push_back(std::move(sentence));
    }
    return slice;
}

}  // namespace

TEST_CASE("duplicate_slice deep-copies under a new id") {
    SliceCorpus slice = slice_from("A", "a b c\nd e\n");
    SliceCorpus copy = duplicate_slice(slice, "A_copy");
    CHECK(copy.slice_id == "A_copy");
    CHECK(copy.sentences == slice.sentences);
    CHECK(copy.token_count() == slice.token_count());
    CHECK(token_set(copy) == token_set(slice));

    copy.sentences[0][0] = "mutated";
    CHECK(slice.sentences[0][0] == "a");
}

TEST_CASE("scramble respects p = 0 and p = 1 exactly") {
    SliceCorpus slice = numbered_slice("A", 20, 10);
    std::mt19937_64 rng(3);

    SliceCorpus same = scramble(slice, 0.0, rng);
    CHECK(same.sentences == slice.sentences);

    SliceCorpus full = scramble(slice, 1.0, rng);
    REQUIRE(full.sentences.size() == slice.sentences.size());
    for (std::size_t s = 0; s < full.sentences.size(); ++s) {
        REQUIRE(full.sentences[s].size() == slice.sentences[s].size());
        for (std::size_t i = 0; i < full.sentences[s].size(); ++i)
            CHECK(full.sentences[s][i] != slice.sentences[s][i]);
    }
}

TEST_CASE("scramble replaces about p of the positions") {
    SliceCorpus slice = numbered_slice("A", 50, 200);  // 10000 tokens
    REQUIRE(slice.token_count() == 10000);
    std::mt19937_64 rng(17);
    SliceCorpus noisy = scramble(slice, 0.5, rng);

    std::size_t replaced = 0;
    for (std::size_t s = 0; s < noisy.sentences.size(); ++s)
        for (std::size_t i = 0; i < noisy.sentences[s].size(); ++i)
            if (noisy.sentences[s][i] != slice.sentences[s][i]) ++replaced;
    double fraction = static_cast<double>(replaced) / 10000.0;
    CHECK(fraction > 0.48);
    CHECK(fraction < 0.52);
}

TEST_CASE("scrambling a single-token vocabulary is impossible") {
    SliceCorpus slice = slice_from("A", "a a a a");
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(scramble(slice, 0.5, rng), ConfigError);
    CHECK(scramble(slice, 0.0, rng).sentences == slice.sentences);
}

TEST_CASE("corruption generators are deterministic under a fixed seed") {
    SliceCorpus slice = numbered_slice("A", 30, 20);
    auto run_scramble = [&] {
        std::mt19937_64 rng(99);
        return scramble(slice, 0.4, rng);
    };
    CHECK(run_scramble().sentences == run_scramble().sentences);

    auto run_shuffle = [&] {
        std::mt19937_64 rng(98);
        return shuffle_slice(slice, rng);
    };
    CHECK(run_shuffle().sentences == run_shuffle().sentences);

    auto run_split = [&] {
        std::mt19937_64 rng(97);
        return make_split_spec(slice, 0.5, "_A", "_B", rng);
    };
    CHECK(run_split().mapping == run_split().mapping);
}

TEST_CASE("split_vocabulary separates exactly round(q |V|) tokens") {
    SliceCorpus slice = numbered_slice("A", 1000, 3);
    std::mt19937_64 rng(5);

    SUBCASE("q = 0 leaves the twins identical to the original") {
        SplitSpec spec = make_split_spec(slice, 0.0, "_A", "_B", rng);
        auto [a, b] = split_vocabulary(slice, spec);
        CHECK(a.sentences == slice.sentences);
        CHECK(b.sentences == slice.sentences);
        CHECK(spec.mapping.empty());
    }

    SUBCASE("q = 0.5 splits exactly 500 with overlap 0.5") {
        SplitSpec spec = make_split_spec(slice, 0.5, "_A", "_B", rng);
        CHECK(spec.mapping.size() == 500);
        auto [a, b] = split_vocabulary(slice, spec);
        auto va = token_set(a);
        auto vb = token_set(b);
        std::vector<std::string> shared;
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                              std::back_inserter(shared));
        CHECK(shared.size() == 500);
        CHECK(va.size() == 1000);
        CHECK(vb.size() == 1000);
    }

    SUBCASE("q = 1 separates the vocabularies completely") {
        SplitSpec spec = make_split_spec(slice, 1.0, "_A", "_B", rng);
        auto [a, b] = split_vocabulary(slice, spec);
        auto va = token_set(a);
        auto vb = token_set(b);
        std::vector<std::string> shared;
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                              std::back_inserter(shared));
        CHECK(shared.empty());
        CHECK(a.token_count() == slice.token_count());
    }
}

TEST_CASE("suffix collisions with existing tokens are rejected") {
    SliceCorpus slice = slice_from("A", "word word_A other");
    std::mt19937_64 rng(6);
    CHECK_THROWS_AS(make_split_spec(slice, 1.0, "_A", "_B", rng), ConfigError);
}

TEST_CASE("shuffle preserves the token multiset and sentence lengths") {
    SliceCorpus slice = numbered_slice("A", 25, 12);
    std::mt19937_64 rng(8);
    SliceCorpus shuffled = shuffle_slice(slice, rng);

    CHECK(shuffled.token_count() == slice.token_count());
    CHECK(token_multiset(shuffled) == token_multiset(slice));
    REQUIRE(shuffled.sentences.size() == slice.sentences.size());
    for (std::size_t i = 0; i < slice.sentences.size(); ++i)
        CHECK(shuffled.sentences[i].size() == slice.sentences[i].size());
    CHECK(shuffled.sentences != slice.sentences);  // 300 tokens: permutation moved something
}

TEST_CASE("same_word_similarity of a model with itself is all ones") {
    auto vocab = toy_vocab({"a", "b", "c"});
    EmbeddingMatrix m(3, 4);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
    auto model = toy_model("X", vocab, m);
    auto twin = toy_model("Y", vocab, m);

    SimilarityReport report = same_word_similarity(model, twin, {"a", "b", "c"});
    REQUIRE(report.unsplit_scores.size() == 3);
    for (double s : report.unsplit_scores) CHECK(s == doctest::Approx(1.0));
    CHECK(report.split_scores.empty());
    CHECK(report.skipped_untrained == 0);
}

TEST_CASE("same_word_similarity resolves split twins through the mapping") {
    auto vocab = toy_vocab({"x_A", "x_B", "y"});
    EmbeddingMatrix a(3, 2), b(3, 2);
    a << 1, 0, 0, 0, 0, 1;  // x_A row 0, y row 2
    b << 0, 0, 1, 0, 0, 1;  // x_B row 1 equals x_A's vector in a
    std::vector<bool> trained_a{true, false, true};
    std::vector<bool> trained_b{false, true, true};
    auto ma = toy_model("A", vocab, a, 42, trained_a);
    auto mb = toy_model("B", vocab, b, 42, trained_b);

    SplitSpec spec;
    spec.separation_rate = 0.5;
    spec.mapping["x"] = {"x_A", "x_B"};

    SimilarityReport report = same_word_similarity(ma, mb, {"x", "y"}, &spec);
    REQUIRE(report.split_scores.size() == 1);
    CHECK(report.split_scores[0] == doctest::Approx(1.0));
    REQUIRE(report.unsplit_scores.size() == 1);
    CHECK(report.unsplit_scores[0] == doctest::Approx(1.0));
}

TEST_CASE("untrained sample tokens are skipped and counted") {
    auto vocab = toy_vocab({"a", "b"});
    EmbeddingMatrix m = EmbeddingMatrix::Identity(2, 2);
    std::vector<bool> partial{true, false};
    auto ma = toy_model("A", vocab, m, 42, partial);
    auto mb = toy_model("B", vocab, m);

    SimilarityReport report = same_word_similarity(ma, mb, {"a", "b", "zzz"});
    CHECK(report.unsplit_scores.size() == 1);
    CHECK(report.skipped_untrained == 2);
}

TEST_CASE("correspondence match rate is 1 against an identical model") {
    auto vocab = toy_vocab({"a", "b", "c", "d"});
    EmbeddingMatrix m(4, 3);
    m << 1, 0, 0,
         0, 1, 0,
         0, 0, 1,
         1, 1, 0;
    auto ma = toy_model("A", vocab, m);
    auto mb = toy_model("B", vocab, m);

    MatchResult r = correspondence_match_rate(ma, mb, {"a", "b", "c", "d"});
    CHECK(r.rate == doctest::Approx(1.0));
    CHECK(r.evaluated == 4);
}

TEST_CASE("summarize reports quartiles of the score distribution") {
    SummaryStats stats = summarize({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(stats.n == 5);
    CHECK(stats.mean == doctest::Approx(3.0));
    CHECK(stats.median == doctest::Approx(3.0));
    CHECK(stats.q1 == doctest::Approx(2.0));
    CHECK(stats.q3 == doctest::Approx(4.0));

    SummaryStats empty = summarize({});
    CHECK(empty.n == 0);
}
