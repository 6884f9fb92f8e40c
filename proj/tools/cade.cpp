// Command-line surface for the aligned-embedding pipeline:
//   cade train    build a model bundle from plain-text slices
//   cade query    cross-corpora nearest neighbors from a bundle
//   cade eval     analogies / hits / heldout / posterior evaluations
//   cade corrupt  duplicate / scramble / split / shuffle a slice
//   cade export   word2vec text vectors or 2-D PCA coordinates
//
// Exit codes: 0 ok, 2 config error, 3 I/O error, 4 out-of-vocabulary,
// 5 numerical error.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cade/align.hpp"
#include "cade/compass.hpp"
#include "cade/errors.hpp"
#include "cade/eval.hpp"
#include "cade/format.hpp"
#include "cade/io.hpp"
#include "cade/query.hpp"
#include "cade/robustness.hpp"

namespace fs = std::filesystem;
using namespace cade;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitOov = 4;
constexpr int kExitNumeric = 5;

struct TrainArgs {
    std::string manifest;
    std::vector<std::string> slice_files;
    std::string out_dir;
    std::string preset = "custom";
    std::string init = "random";
    std::string baseline;
    std::string stopwords;
    bool lowercase = true;
    bool strip_punct = true;
    int chunk = 0;
    int dim = 100;
    int window = 5;
    int negative = 5;
    double lr = 0.025;
    int epochs = 5;
    int compass_epochs = -1;
    int slice_epochs = -1;
    std::int64_t min_count = 5;
    std::uint64_t seed = 1;
    int workers = 1;
    double subsample = 0.0;
    bool dynamic_window = false;
    double power = 0.75;
};

double elapsed_s(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::vector<SliceCorpus> load_slices(const TrainArgs& args, const PreprocessOptions& prep) {
    std::vector<std::pair<std::string, std::string>> entries;
    if (!args.manifest.empty()) {
        entries = read_manifest(args.manifest);
    } else {
        for (const auto& path : args.slice_files)
            entries.emplace_back(fs::path(path).stem().string(), path);
    }
    if (entries.empty()) throw ConfigError("no slices: give --manifest or slice files");

    std::vector<SliceCorpus> slices;
    slices.reserve(entries.size());
    for (const auto& [id, path] : entries) slices.push_back(load_slice_file(path, id, prep));
    return slices;
}

int run_train(const TrainArgs& args) {
    PreprocessOptions prep;
    prep.lowercase = args.lowercase;
    prep.strip_punctuation = args.strip_punct;
    prep.fixed_chunk = args.chunk;
    if (!args.stopwords.empty()) prep.stopwords = load_stopwords(args.stopwords, args.lowercase);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<SliceCorpus> slices = load_slices(args, prep);
    std::size_t total_tokens = 0;
    for (const auto& s : slices) total_tokens += s.token_count();
    std::cout << "loaded " << slices.size() << " slices, " << total_tokens << " tokens in "
              << format_real(elapsed_s(t0)) << "s\n";

    CollectionOptions options;
    options.config.dim = args.dim;
    options.config.window = args.window;
    options.config.negative = args.negative;
    options.config.learning_rate = args.lr;
    options.config.epochs = args.epochs;
    options.config.seed = args.seed;
    options.config.workers = args.workers;
    options.config.subsample = args.subsample;
    options.config.dynamic_window = args.dynamic_window;
    options.min_count = args.min_count;
    options.sampling_power = args.power;
    options.compass_epochs = args.compass_epochs;
    options.slice_epochs = args.slice_epochs;
    options.init_mode = init_mode_from_string(args.init);

    std::map<std::string, std::string> extra_meta;
    extra_meta["preset"] = args.preset;
    extra_meta["init_mode"] = args.init;
    extra_meta["compass_epochs"] = std::to_string(options.compass_epochs);
    extra_meta["slice_epochs"] = std::to_string(options.slice_epochs);
    extra_meta["sampling_power"] = format_real(args.power);
    extra_meta["subsample"] = format_real(args.subsample);
    extra_meta["dynamic_window"] = args.dynamic_window ? "1" : "0";
    extra_meta["lowercase"] = args.lowercase ? "1" : "0";
    extra_meta["chunk"] = std::to_string(args.chunk);

    if (args.baseline == "sw2v") {
        auto vocab = std::make_shared<Vocabulary>(build_vocabulary(slices, options.min_count));
        auto t1 = std::chrono::steady_clock::now();
        CompassModel compass = train_compass(slices, vocab, options);
        std::cout << "static phase: " << format_real(elapsed_s(t1)) << "s\n";

        AlignedSliceModel baseline;
        baseline.slice_id = "SW2V";
        baseline.vocab = vocab;
        baseline.context = compass.context;
        baseline.trained.assign(vocab->size(), true);
        baseline.compass_fingerprint = compass.fingerprint;

        std::vector<std::string> ids;
        for (const auto& s : slices) ids.push_back(s.slice_id);
        std::vector<AlignedSliceModel> views = replicate_static(baseline, ids);
        extra_meta["baseline"] = "sw2v";
        save_bundle(args.out_dir, compass, views, extra_meta);
    } else if (args.baseline.empty()) {
        auto t1 = std::chrono::steady_clock::now();
        CollectionResult result = train_collection(slices, options);
        std::cout << "trained compass + " << result.slices.size() << " slices in "
                  << format_real(elapsed_s(t1)) << "s (|V|=" << result.compass.vocab->size()
                  << ", h=" << args.dim << ")\n";
        save_bundle(args.out_dir, result.compass, result.slices, extra_meta);
    } else {
        throw ConfigError("unknown baseline: " + args.baseline + " (expected 'sw2v')");
    }

    std::cout << "bundle written to " << args.out_dir << "\n";
    return 0;
}

Framework make_framework(const Bundle& bundle) {
    std::vector<const AlignedSliceModel*> models;
    models.reserve(bundle.slices.size());
    for (const auto& slice : bundle.slices) models.push_back(&slice);
    return Framework(models);
}

int run_query(const std::string& bundle_dir, const std::string& word, const std::string& source,
              const std::string& target, std::size_t k) {
    Bundle bundle = load_bundle(bundle_dir);
    Framework framework = make_framework(bundle);
    NeighborList list = framework.top_k(word, source, target, k);
    std::size_t rank = 1;
    for (const auto& [id, sim] : list.entries) {
        std::cout << rank++ << '\t' << bundle.vocab->token(id) << '\t' << format_real(sim) << '\t'
                  << source << '\t' << target << '\n';
    }
    return 0;
}

void zero_debug_matrices(Bundle& bundle) {
    bundle.compass.target.setZero();
    bundle.compass.context.setZero();
    for (auto& slice : bundle.slices) slice.context.setZero();
}

int run_eval(const std::string& bundle_dir, const std::string& mode, const std::string& testset,
             const std::string& out_dir, const std::string& source, const std::string& target,
             std::size_t k, std::size_t k_max, const std::string& heldout_text,
             const std::string& heldout_slice, const std::string& heldout_manifest, int chunk,
             int negative_override, std::uint64_t seed, bool debug_zero) {
    Bundle bundle = load_bundle(bundle_dir);
    if (debug_zero) zero_debug_matrices(bundle);
    int window = std::stoi(bundle.meta.at("window"));
    int negative = negative_override >= 0 ? negative_override : std::stoi(bundle.meta.at("negative"));

    if (mode == "analogies") {
        if (testset.empty()) throw ConfigError("analogies mode needs --testset");
        Framework framework = make_framework(bundle);
        auto items = load_analogy_testset(testset);
        std::vector<AnswerRecord> answers;
        EvalReport report = evaluate_analogies(items, framework, k_max, &answers);
        if (!out_dir.empty()) write_report(report, out_dir);
        const MetricRow& all = report.subsets.at("All");
        std::cout << "subset\tn\tmrr\tmp1\tstat\n";
        for (const auto& [name, row] : report.subsets)
            std::cout << name << '\t' << row.n << '\t' << format_real(row.mrr) << '\t'
                      << format_real(row.mp.at(1)) << '\t' << format_real(row.stat) << '\n';
        std::cout << "skipped_oov\t" << report.skipped_oov << "\nstat_all\t"
                  << format_real(all.stat) << '\n';
        return 0;
    }

    if (mode == "hits") {
        if (testset.empty()) throw ConfigError("hits mode needs --testset");
        if (source.empty() || target.empty()) throw ConfigError("hits mode needs --source and --target");
        Framework framework = make_framework(bundle);
        auto pairs = load_pair_testset(testset);
        HitsResult result = hits_at_k(pairs, source, target, framework, k);
        std::cout << "hits@" << k << '\t' << format_real(result.rate) << "\nevaluated\t"
                  << result.evaluated << "\nskipped\t" << result.skipped << '\n';
        return 0;
    }

    if (mode == "heldout") {
        if (heldout_text.empty()) throw ConfigError("heldout mode needs --text");
        PreprocessOptions prep;  // defaults match training
        SliceCorpus heldout = load_slice_file(heldout_text, "heldout", prep);
        NegativeSampler sampler(*bundle.vocab, 0.75);
        HeldoutOptions options{window, negative, seed};

        std::cout << "slice\tL\tpositions\n";
        for (const auto& slice : bundle.slices) {
            if (!heldout_slice.empty() && slice.slice_id != heldout_slice) continue;
            HeldoutResult r = heldout_loglikelihood(slice.context, bundle.compass.target,
                                                    *bundle.vocab, heldout, sampler, options);
            std::cout << slice.slice_id << '\t' << format_real(r.normalized_loglik) << '\t'
                      << r.positions << '\n';
        }
        return 0;
    }

    if (mode == "posterior") {
        if (heldout_manifest.empty()) throw ConfigError("posterior mode needs --heldout-manifest");
        PreprocessOptions prep;
        std::vector<SliceCorpus> heldout;
        for (const auto& [id, path] : read_manifest(heldout_manifest))
            heldout.push_back(load_slice_file(path, id, prep));

        std::vector<ScoringModel> models;
        models.reserve(bundle.slices.size());
        for (const auto& slice : bundle.slices)
            models.push_back({slice.slice_id, &slice.context, &bundle.compass.target});

        NegativeSampler sampler(*bundle.vocab, 0.75);
        PosteriorOptions options{window, negative, chunk, seed};
        PosteriorResult result = posterior_classification(models, heldout, *bundle.vocab, sampler, options);
        std::cout << "slice\tposterior\tsentences\tskipped\n";
        for (const auto& [id, p] : result.per_slice)
            std::cout << id << '\t' << format_real(p) << '\t' << result.sentences_used.at(id) << '\t'
                      << result.sentences_skipped.at(id) << '\n';
        std::cout << "mean\t" << format_real(result.mean) << "\n";
        return 0;
    }

    throw ConfigError("unknown eval mode: " + mode);
}

int run_corrupt(const std::string& input, const std::string& id_override, const std::string& kind,
                double p, double q, const std::string& suffix_a, const std::string& suffix_b,
                std::uint64_t seed, const std::string& out_dir) {
    PreprocessOptions prep;
    prep.lowercase = false;  // corruption preserves the input tokens as-is
    prep.strip_punctuation = false;
    SliceCorpus slice = load_slice_file(input, id_override, prep);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    std::mt19937_64 rng(derive_seed(seed, "corrupt/" + kind));

    std::map<std::string, std::string> record;
    record["kind"] = kind;
    record["input"] = input;
    record["slice_id"] = slice.slice_id;
    record["seed"] = std::to_string(seed);
    record["token_count"] = std::to_string(slice.token_count());

    std::string stem = sanitize_slice_id(slice.slice_id);
    if (kind == "duplicate") {
        SliceCorpus copy = duplicate_slice(slice, slice.slice_id + "_copy");
        write_slice_file((dir / (stem + "_copy.txt")).string(), copy);
    } else if (kind == "scramble") {
        if (p < 0.0 || p > 1.0) throw ConfigError("--p must be in [0, 1]");
        SliceCorpus noisy = scramble(slice, p, rng);
        noisy.slice_id = slice.slice_id + "_noisy";
        write_slice_file((dir / (stem + "_noisy.txt")).string(), noisy);
        record["p"] = format_real(p);
    } else if (kind == "split") {
        if (q < 0.0 || q > 1.0) throw ConfigError("--q must be in [0, 1]");
        SplitSpec spec = make_split_spec(slice, q, suffix_a, suffix_b, rng);
        auto [twin_a, twin_b] = split_vocabulary(slice, spec);
        write_slice_file((dir / (stem + suffix_a + ".txt")).string(), twin_a);
        write_slice_file((dir / (stem + suffix_b + ".txt")).string(), twin_b);
        std::ofstream mapping(dir / "split_mapping.tsv", std::ios::binary);
        mapping << "original\ttwin_a\ttwin_b\n";
        for (const auto& [orig, pair] : spec.mapping)
            mapping << orig << '\t' << pair.first << '\t' << pair.second << '\n';
        record["q"] = format_real(q);
        record["suffix_a"] = suffix_a;
        record["suffix_b"] = suffix_b;
        record["split_tokens"] = std::to_string(spec.mapping.size());
    } else if (kind == "shuffle") {
        SliceCorpus shuffled = shuffle_slice(slice, rng);
        shuffled.slice_id = slice.slice_id + "_shuffled";
        write_slice_file((dir / (stem + "_shuffled.txt")).string(), shuffled);
    } else {
        throw ConfigError("unknown corruption kind: " + kind);
    }
    write_meta((dir / "record").string(), record);
    return 0;
}

int run_export(const std::string& bundle_dir, const std::string& format, const std::string& out,
               const std::vector<std::string>& words, const std::string& words_file) {
    Bundle bundle = load_bundle(bundle_dir);

    if (format == "word2vec-text") {
        fs::create_directories(out);
        const fs::path dir(out);
        std::vector<TokenId> ids(bundle.vocab->size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TokenId>(i);
        write_embeddings_file((dir / "compass.vec").string(), *bundle.vocab, ids,
                              bundle.compass.target);
        for (const auto& slice : bundle.slices) {
            std::vector<TokenId> trained;
            for (std::size_t i = 0; i < slice.trained.size(); ++i)
                if (slice.trained[i]) trained.push_back(static_cast<TokenId>(i));
            write_embeddings_file((dir / ("slice_" + sanitize_slice_id(slice.slice_id) + ".vec")).string(),
                                  *bundle.vocab, trained, slice.context);
        }
        return 0;
    }

    if (format == "pca2d-csv") {
        std::vector<std::string> selected = words;
        if (!words_file.empty()) {
            std::ifstream in(words_file);
            if (!in) throw IoError("cannot open words file: " + words_file);
            std::string token;
            while (in >> token) selected.push_back(token);
        }
        if (selected.empty()) throw ConfigError("pca2d-csv needs --words or --words-file");

        std::vector<std::pair<std::string, std::string>> labels;  // (word, slice)
        std::vector<Eigen::RowVectorXd> rows;
        for (const auto& word : selected) {
            TokenId id = bundle.vocab->id_of(word);
            if (id == kNoToken) continue;
            for (const auto& slice : bundle.slices) {
                if (!slice.trained[id]) continue;
                labels.emplace_back(word, slice.slice_id);
                rows.push_back(slice.context.row(id));
            }
        }
        if (rows.size() < 3)
            throw ConfigError("pca2d-csv needs at least 3 vectors, found " +
                              std::to_string(rows.size()));

        Eigen::MatrixXd data(static_cast<Eigen::Index>(rows.size()), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) data.row(static_cast<Eigen::Index>(i)) = rows[i];
        Eigen::RowVectorXd mean = data.colwise().mean();
        data.rowwise() -= mean;

        Eigen::MatrixXd cov = data.transpose() * data / static_cast<double>(rows.size() - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        if (eig.info() != Eigen::Success) throw NumericError("PCA eigendecomposition failed");
        // Largest two eigenvalues last in Eigen's ascending order.
        Eigen::MatrixXd components(data.cols(), 2);
        components.col(0) = eig.eigenvectors().col(data.cols() - 1);
        components.col(1) = eig.eigenvectors().col(data.cols() - 2);
        for (int c = 0; c < 2; ++c) {
            Eigen::Index argmax = 0;
            components.col(c).cwiseAbs().maxCoeff(&argmax);
            if (components(argmax, c) < 0) components.col(c) = -components.col(c);
        }
        Eigen::MatrixXd projected = data * components;

        std::ofstream out_file(out, std::ios::binary);
        if (!out_file) throw IoError("cannot write " + out);
        out_file << "word,slice,x,y\n";
        for (std::size_t i = 0; i < labels.size(); ++i)
            out_file << labels[i].first << ',' << labels[i].second << ','
                     << format_real(projected(static_cast<Eigen::Index>(i), 0)) << ','
                     << format_real(projected(static_cast<Eigen::Index>(i), 1)) << '\n';
        return 0;
    }

    throw ConfigError("unknown export format: " + format);
}

void apply_preset(TrainArgs& args, const CLI::App* cmd) {
    auto unset = [&](const std::string& flag) { return cmd->get_option(flag)->count() == 0; };
    if (args.preset == "analogy-small") {
        if (unset("--dim")) args.dim = 50;
        if (unset("--window")) args.window = 5;
        if (unset("--negative")) args.negative = 5;
        if (unset("--min-count")) args.min_count = 200;
    } else if (args.preset == "heldout") {
        if (unset("--lr")) args.lr = 0.0025;
        if (unset("--window")) args.window = 1;
        if (unset("--dim")) args.dim = 50;
        if (unset("--compass-epochs")) args.compass_epochs = 5;
        if (unset("--slice-epochs")) args.slice_epochs = 5;
        if (unset("--init")) args.init = "compass";
    } else if (args.preset != "custom") {
        throw ConfigError("unknown preset: " + args.preset);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compass-aligned embeddings: training and cross-corpora analysis"};
    app.require_subcommand(1);

    TrainArgs targs;
    auto* train = app.add_subcommand("train", "Train a compass and per-slice embeddings");
    train->set_config("--config");
    train->add_option("--manifest", targs.manifest, "TSV manifest: slice_id<TAB>path");
    train->add_option("files", targs.slice_files, "Slice files (id = filename stem)");
    train->add_option("--out", targs.out_dir, "Output bundle directory")->required();
    train->add_option("--preset", targs.preset, "analogy-small | heldout | custom");
    train->add_option("--dim", targs.dim, "Embedding size h");
    train->add_option("--window", targs.window, "Context window");
    train->add_option("--negative", targs.negative, "Negative samples per position");
    train->add_option("--lr", targs.lr, "Starting learning rate");
    train->add_option("--epochs", targs.epochs, "Default epochs for both phases");
    train->add_option("--compass-epochs", targs.compass_epochs, "Compass-phase epochs (-1: --epochs)");
    train->add_option("--slice-epochs", targs.slice_epochs, "Slice-phase epochs (-1: --epochs)");
    train->add_option("--min-count", targs.min_count, "Global min count");
    train->add_option("--seed", targs.seed, "Root RNG seed");
    train->add_option("--workers", targs.workers, "Trainer threads (1 = deterministic)");
    train->add_option("--init", targs.init, "Slice init: random | compass");
    train->add_option("--subsample", targs.subsample, "Frequent-word subsampling threshold");
    train->add_flag("--dynamic-window", targs.dynamic_window, "Shrink the window per position");
    train->add_option("--power", targs.power, "Negative-sampling distribution power");
    train->add_option("--stopwords", targs.stopwords, "Stopword list, one token per line");
    train->add_flag("--lowercase,!--no-lowercase", targs.lowercase, "Lowercase input text");
    train->add_flag("!--keep-punctuation", targs.strip_punct, "Keep leading/trailing punctuation");
    train->add_option("--chunk", targs.chunk, "Fixed sentence chunk length (0: newline sentences)");
    train->add_option("--baseline", targs.baseline, "Train a baseline instead: sw2v");

    std::string q_bundle, q_word, q_source, q_target;
    std::size_t q_k = 10;
    auto* query = app.add_subcommand("query", "Cross-corpora nearest neighbors");
    query->set_config("--config");
    query->add_option("--bundle", q_bundle)->required();
    query->add_option("--word", q_word)->required();
    query->add_option("--source", q_source)->required();
    query->add_option("--target", q_target)->required();
    query->add_option("-k,--k", q_k, "Neighbors to return (0: all)");

    std::string e_bundle, e_mode, e_testset, e_out, e_source, e_target, e_text, e_slice, e_hmanifest;
    std::size_t e_k = 5, e_kmax = 100;
    int e_chunk = 20, e_negative = -1;
    std::uint64_t e_seed = 1;
    bool e_zero = false;
    auto* eval = app.add_subcommand("eval", "Evaluate a bundle");
    eval->set_config("--config");
    eval->add_option("--bundle", e_bundle)->required();
    eval->add_option("--mode", e_mode, "analogies | hits | heldout | posterior")->required();
    eval->add_option("--testset", e_testset, "Analogy or pair TSV");
    eval->add_option("--out", e_out, "Report directory (analogies mode)");
    eval->add_option("--source", e_source, "Source slice (hits mode)");
    eval->add_option("--target", e_target, "Target slice (hits mode)");
    eval->add_option("-k,--k", e_k, "K for hits mode");
    eval->add_option("--kmax", e_kmax, "Neighbor window for ranks (0: full scan)");
    eval->add_option("--text", e_text, "Held-out plain text (heldout mode)");
    eval->add_option("--slice", e_slice, "Restrict heldout mode to one slice");
    eval->add_option("--heldout-manifest", e_hmanifest, "slice_id<TAB>path (posterior mode)");
    eval->add_option("--chunk", e_chunk, "Sentence chunk length (posterior mode)");
    eval->add_option("--negative", e_negative, "Negative samples (-1: bundle value)");
    eval->add_option("--seed", e_seed, "Evaluation RNG seed");
    eval->add_flag("--debug-zero-matrices", e_zero, "Replace all matrices with zeros");

    std::string c_input, c_id, c_kind, c_sufa = "_A", c_sufb = "_B", c_out;
    double c_p = 0.0, c_q = 0.0;
    std::uint64_t c_seed = 1;
    auto* corrupt = app.add_subcommand("corrupt", "Generate corrupted copies of a slice");
    corrupt->set_config("--config");
    corrupt->add_option("--input", c_input, "Plain-text slice")->required();
    corrupt->add_option("--id", c_id, "Slice id (default: filename stem)");
    corrupt->add_option("--kind", c_kind, "duplicate | scramble | split | shuffle")->required();
    corrupt->add_option("--p", c_p, "Scramble probability");
    corrupt->add_option("--q", c_q, "Split separation rate");
    corrupt->add_option("--suffix-a", c_sufa);
    corrupt->add_option("--suffix-b", c_sufb);
    corrupt->add_option("--seed", c_seed);
    corrupt->add_option("--out", c_out, "Output directory")->required();

    std::string x_bundle, x_format, x_out, x_words_file;
    std::vector<std::string> x_words;
    auto* exportc = app.add_subcommand("export", "Export vectors or PCA coordinates");
    exportc->set_config("--config");
    exportc->add_option("--bundle", x_bundle)->required();
    exportc->add_option("--format", x_format, "word2vec-text | pca2d-csv")->required();
    exportc->add_option("--out", x_out, "Output directory or CSV path")->required();
    exportc->add_option("--words", x_words)->delimiter(',');
    exportc->add_option("--words-file", x_words_file);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (train->parsed()) {
            apply_preset(targs, train);
            return run_train(targs);
        }
        if (query->parsed()) return run_query(q_bundle, q_word, q_source, q_target, q_k);
        if (eval->parsed())
            return run_eval(e_bundle, e_mode, e_testset, e_out, e_source, e_target, e_k, e_kmax,
                            e_text, e_slice, e_hmanifest, e_chunk, e_negative, e_seed, e_zero);
        if (corrupt->parsed())
            return run_corrupt(c_input, c_id, c_kind, c_p, c_q, c_sufa, c_sufb, c_seed, c_out);
        if (exportc->parsed()) return run_export(x_bundle, x_format, x_out, x_words, x_words_file);
    } catch (const OovError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOov;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
