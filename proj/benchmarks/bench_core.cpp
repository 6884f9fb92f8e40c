#include <benchmark/benchmark.h>

#include <random>

#include "cade/compass.hpp"
#include "cade/query.hpp"
#include "cade/trainer.hpp"

using namespace cade;

namespace {

Vocabulary bench_vocab(int size) {
    std::vector<std::string> tokens;
    std::vector<std::int64_t> counts;
    for (int i = 0; i < size; ++i) {
        tokens.push_back("w" + std::to_string(i));
        counts.push_back(1 + (size - i));
    }
    return Vocabulary::from_table(std::move(tokens), std::move(counts), 1);
}

std::vector<IdSentence> bench_sentences(int vocab, int sentences, int len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<IdSentence> out(static_cast<std::size_t>(sentences));
    for (auto& s : out) {
        s.resize(static_cast<std::size_t>(len));
        for (auto& id : s) id = static_cast<TokenId>(rng() % vocab);
    }
    return out;
}

void BM_TrainPair(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    EmbeddingMatrix C = random_init(1000, dim, rng);
    EmbeddingMatrix U = random_init(1000, dim, rng);
    std::vector<TokenId> context{1, 2, 3, 4, 5};
    std::vector<TokenId> negatives{10, 11, 12, 13, 14};
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_pair(0, context, negatives, C, U, 0.01, false));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrainPair)->Arg(20)->Arg(50)->Arg(100);

void BM_TrainEpoch(benchmark::State& state) {
    const int vocab_size = 2000;
    Vocabulary vocab = bench_vocab(vocab_size);
    NegativeSampler sampler(vocab, 0.75);
    auto sentences = bench_sentences(vocab_size, 500, 12, 3);

    TrainConfig config;
    config.dim = static_cast<int>(state.range(0));
    config.window = 5;
    config.negative = 5;
    config.epochs = 1;

    std::mt19937_64 rng(2);
    EmbeddingMatrix C = random_init(vocab_size, config.dim, rng);
    EmbeddingMatrix U = zero_init(vocab_size, config.dim);
    std::size_t tokens = 0;
    for (const auto& s : sentences) tokens += s.size();

    for (auto _ : state) {
        TrainProgress progress;
        progress.total_planned = tokens;
        benchmark::DoNotOptimize(train_epoch(sentences, config, C, U, sampler, progress, 0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tokens));
}
BENCHMARK(BM_TrainEpoch)->Arg(20)->Arg(50);

void BM_TopK(benchmark::State& state) {
    const int vocab_size = static_cast<int>(state.range(0));
    auto vocab = std::make_shared<Vocabulary>(bench_vocab(vocab_size));
    std::mt19937_64 rng(4);

    AlignedSliceModel a;
    a.slice_id = "A";
    a.vocab = vocab;
    a.context = random_init(vocab_size, 50, rng);
    a.trained.assign(static_cast<std::size_t>(vocab_size), true);
    a.compass_fingerprint = 7;
    AlignedSliceModel b = a;
    b.slice_id = "B";
    b.context = random_init(vocab_size, 50, rng);

    Framework framework({&a, &b});
    for (auto _ : state) {
        benchmark::DoNotOptimize(framework.top_k("w10", "A", "B", 10));
    }
    state.SetItemsProcessed(state.iterations() * vocab_size);
}
BENCHMARK(BM_TopK)->Arg(2000)->Arg(20000);

void BM_SamplerDraw(benchmark::State& state) {
    Vocabulary vocab = bench_vocab(static_cast<int>(state.range(0)));
    NegativeSampler sampler(vocab, 0.75);
    std::mt19937_64 rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.draw(rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SamplerDraw)->Arg(2000)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
