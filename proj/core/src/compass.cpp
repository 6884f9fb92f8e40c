#include "cade/compass.hpp"

#include <algorithm>

#include "cade/errors.hpp"
#include "cade/format.hpp"

namespace cade {

namespace {

int resolved_epochs(int requested, int fallback) { return requested < 0 ? fallback : requested; }

std::vector<bool> occurrence_mask(const std::vector<IdSentence>& sentences, std::size_t vocab_size) {
    std::vector<bool> mask(vocab_size, false);
    for (const auto& s : sentences)
        for (TokenId id : s) mask[id] = true;
    return mask;
}

}  // namespace

std::string to_string(InitMode mode) {
    return mode == InitMode::Random ? "random" : "compass";
}

InitMode init_mode_from_string(const std::string& s) {
    if (s == "random") return InitMode::Random;
    if (s == "compass") return InitMode::FromCompass;
    throw ConfigError("unknown init mode: " + s + " (expected 'random' or 'compass')");
}

CompassModel train_compass(const std::vector<SliceCorpus>& slices,
                           std::shared_ptr<const Vocabulary> vocab,
                           const CollectionOptions& options) {
    if (slices.empty()) throw ConfigError("train_compass requires at least one slice");
    if (!vocab || vocab->size() == 0) throw ConfigError("train_compass requires a built vocabulary");
    options.config.validate();

    CompassModel model;
    model.vocab = vocab;
    model.config = options.config;
    model.config.freeze_output = false;
    model.config.epochs = std::max(1, resolved_epochs(options.compass_epochs, options.config.epochs));
    model.config.seed = derive_seed(options.config.seed, "compass");

    const auto rows = static_cast<Eigen::Index>(vocab->size());
    std::mt19937_64 init_rng(derive_seed(model.config.seed, "init"));
    model.context = random_init(rows, model.config.dim, init_rng);
    model.target = zero_init(rows, model.config.dim);

    SliceCorpus joined = concatenate_slices(slices);
    auto sentences = vocab->encode(joined);
    NegativeSampler sampler(*vocab, options.sampling_power);
    train_cbow(sentences, model.config, model.context, model.target, sampler, vocab.get());

    model.fingerprint = embedding_fingerprint(*vocab, model.target);
    return model;
}

AlignedSliceModel train_slice(const SliceCorpus& slice, const CompassModel& compass,
                              const CollectionOptions& options) {
    if (!compass.vocab) throw ConfigError("train_slice requires a trained compass");
    if (options.config.dim != compass.config.dim)
        throw ConfigError("slice dim " + std::to_string(options.config.dim) +
                          " does not match compass dim " + std::to_string(compass.config.dim));

    const Vocabulary& vocab = *compass.vocab;
    AlignedSliceModel model;
    model.slice_id = slice.slice_id;
    model.vocab = compass.vocab;
    model.init_mode = options.init_mode;
    model.compass_fingerprint = compass.fingerprint;

    TrainConfig cfg = options.config;
    cfg.freeze_output = true;
    cfg.seed = derive_seed(options.config.seed, "slice/" + slice.slice_id);
    int epochs = resolved_epochs(options.slice_epochs, options.config.epochs);

    if (options.init_mode == InitMode::FromCompass) {
        model.context = compass.context;
    } else {
        std::mt19937_64 init_rng(derive_seed(cfg.seed, "init"));
        model.context = random_init(static_cast<Eigen::Index>(vocab.size()), cfg.dim, init_rng);
    }

    auto sentences = vocab.encode(slice);
    model.trained = occurrence_mask(sentences, vocab.size());

    if (epochs > 0) {
        cfg.epochs = epochs;
        NegativeSampler sampler(vocab, options.sampling_power);
        // freeze_output guarantees the trainer never writes U; the compass
        // stays bit-identical (asserted by the freeze tests).
        auto& frozen_target = const_cast<EmbeddingMatrix&>(compass.target);
        train_cbow(sentences, cfg, model.context, frozen_target, sampler, &vocab);
    }
    return model;
}

CollectionResult train_collection(const std::vector<SliceCorpus>& slices,
                                  const CollectionOptions& options) {
    if (slices.empty()) throw ConfigError("train_collection requires at least one slice");
    auto vocab = std::make_shared<Vocabulary>(build_vocabulary(slices, options.min_count));

    CollectionResult result;
    result.compass = train_compass(slices, vocab, options);
    result.slices.reserve(slices.size());
    for (const auto& slice : slices) result.slices.push_back(train_slice(slice, result.compass, options));
    return result;
}

AlignedSliceModel train_static_baseline(const std::vector<SliceCorpus>& slices,
                                        std::shared_ptr<const Vocabulary> vocab,
                                        const CollectionOptions& options) {
    CompassModel compass = train_compass(slices, std::move(vocab), options);
    AlignedSliceModel model;
    model.slice_id = "SW2V";
    model.vocab = compass.vocab;
    model.context = std::move(compass.context);
    model.trained.assign(compass.vocab->size(), true);
    model.init_mode = InitMode::Random;
    model.compass_fingerprint = compass.fingerprint;
    return model;
}

std::vector<AlignedSliceModel> replicate_static(const AlignedSliceModel& model,
                                                const std::vector<std::string>& slice_ids) {
    std::vector<AlignedSliceModel> out;
    out.reserve(slice_ids.size());
    for (const auto& id : slice_ids) {
        AlignedSliceModel copy = model;
        copy.slice_id = id;
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace cade
