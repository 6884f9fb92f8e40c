#include "cade/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cade/errors.hpp"
#include "cade/format.hpp"

namespace fs = std::filesystem;

namespace cade {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<TokenId> all_ids(const Vocabulary& vocab) {
    std::vector<TokenId> ids(vocab.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TokenId>(i);
    return ids;
}

std::vector<TokenId> mask_ids(const std::vector<bool>& mask) {
    std::vector<TokenId> ids;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) ids.push_back(static_cast<TokenId>(i));
    return ids;
}

}  // namespace

SliceCorpus load_slice_file(const std::string& path, const std::string& slice_id,
                            const PreprocessOptions& options) {
    SliceCorpus slice;
    slice.slice_id = slice_id.empty() ? fs::path(path).stem().string() : slice_id;
    slice.sentences = tokenize(read_file(path), options);
    return slice;
}

void write_slice_file(const std::string& path, const SliceCorpus& slice) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write slice file: " + path);
    for (const auto& sentence : slice.sentences) {
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (i) out << ' ';
            out << sentence[i];
        }
        out << '\n';
    }
}

std::vector<std::pair<std::string, std::string>> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ConfigError("malformed manifest line " + std::to_string(lineno) +
                              ": expected 'slice_id<TAB>path'");
        entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return entries;
}

void write_meta(const std::string& path, const std::map<std::string, std::string>& meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write meta file: " + path);
    for (const auto& [key, value] : meta) out << key << '=' << value << '\n';
}

std::map<std::string, std::string> read_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open meta file: " + path);
    std::map<std::string, std::string> meta;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw IoError("malformed meta line: " + line);
        meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

void write_embeddings_file(const std::string& path, const Vocabulary& vocab,
                           const std::vector<TokenId>& ids, const EmbeddingMatrix& matrix) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write vector file: " + path);
    out << serialize_embeddings(vocab, ids, matrix);
}

TextEmbeddings read_embeddings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vector file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw IoError("empty vector file: " + path);
    std::istringstream hs(header);
    std::size_t rows = 0;
    std::size_t dim = 0;
    if (!(hs >> rows >> dim) || dim == 0) throw IoError("malformed vector header in " + path);

    TextEmbeddings result;
    result.tokens.reserve(rows);
    result.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(dim));
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) throw IoError("truncated vector file: " + path);
        std::istringstream ls(line);
        std::string token;
        if (!(ls >> token)) throw IoError("malformed vector row " + std::to_string(r) + " in " + path);
        result.tokens.push_back(token);
        for (std::size_t c = 0; c < dim; ++c) {
            double v = 0.0;
            if (!(ls >> v))
                throw IoError("malformed vector row " + std::to_string(r) + " in " + path);
            result.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return result;
}

std::string sanitize_slice_id(const std::string& slice_id) {
    std::string out;
    out.reserve(slice_id.size());
    for (char c : slice_id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '.' || c == '_';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? "_" : out;
}

void save_bundle(const std::string& directory, const CompassModel& compass,
                 const std::vector<AlignedSliceModel>& slices,
                 const std::map<std::string, std::string>& extra_meta) {
    if (!compass.vocab) throw ConfigError("cannot save a bundle without a vocabulary");
    fs::create_directories(directory);
    const Vocabulary& vocab = *compass.vocab;
    const fs::path dir(directory);

    auto ids = all_ids(vocab);
    write_embeddings_file((dir / "compass.vec").string(), vocab, ids, compass.target);
    write_embeddings_file((dir / "compass.ctx.vec").string(), vocab, ids, compass.context);

    {
        std::ofstream out(dir / "vocab.tsv", std::ios::binary);
        if (!out) throw IoError("cannot write vocab file");
        for (std::size_t i = 0; i < vocab.size(); ++i)
            out << vocab.token(static_cast<TokenId>(i)) << '\t'
                << vocab.count(static_cast<TokenId>(i)) << '\n';
    }

    std::map<std::string, std::string> meta = extra_meta;
    meta["dim"] = std::to_string(compass.config.dim);
    meta["window"] = std::to_string(compass.config.window);
    meta["negative"] = std::to_string(compass.config.negative);
    meta["learning_rate"] = format_real(compass.config.learning_rate);
    meta["epochs"] = std::to_string(compass.config.epochs);
    meta["seed"] = std::to_string(compass.config.seed);
    meta["workers"] = std::to_string(compass.config.workers);
    meta["min_count"] = std::to_string(vocab.min_count());
    meta["fingerprint"] = std::to_string(compass.fingerprint);
    meta["vocab_file"] = "vocab.tsv";

    std::string slice_list;
    for (const auto& slice : slices) {
        std::string stem = sanitize_slice_id(slice.slice_id);
        if (slice.compass_fingerprint != compass.fingerprint)
            throw ConfigError("slice '" + slice.slice_id + "' does not belong to this compass");
        write_embeddings_file((dir / ("slice_" + stem + ".vec")).string(), vocab,
                              mask_ids(slice.trained), slice.context);
        meta["slice_file_" + slice.slice_id] = "slice_" + stem + ".vec";
        meta["slice_init_" + slice.slice_id] = to_string(slice.init_mode);
        if (!slice_list.empty()) slice_list += ',';
        slice_list += slice.slice_id;
    }
    meta["slices"] = slice_list;
    write_meta((dir / "meta").string(), meta);
}

Bundle load_bundle(const std::string& directory) {
    const fs::path dir(directory);
    Bundle bundle;
    bundle.meta = read_meta((dir / "meta").string());

    // Vocabulary from the stored table.
    std::vector<std::string> tokens;
    std::vector<std::int64_t> counts;
    {
        std::ifstream in(dir / "vocab.tsv");
        if (!in) throw IoError("bundle has no vocab.tsv: " + directory);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos) throw IoError("malformed vocab.tsv line: " + line);
            tokens.push_back(line.substr(0, tab));
            counts.push_back(std::stoll(line.substr(tab + 1)));
        }
    }
    std::int64_t min_count = bundle.meta.count("min_count") ? std::stoll(bundle.meta.at("min_count")) : 1;
    bundle.vocab = std::make_shared<Vocabulary>(
        Vocabulary::from_table(std::move(tokens), std::move(counts), min_count));

    auto require = [&](const std::string& key) -> const std::string& {
        auto it = bundle.meta.find(key);
        if (it == bundle.meta.end()) throw IoError("bundle meta missing key: " + key);
        return it->second;
    };

    TrainConfig config;
    config.dim = std::stoi(require("dim"));
    config.window = std::stoi(require("window"));
    config.negative = std::stoi(require("negative"));
    config.learning_rate = std::stod(require("learning_rate"));
    config.epochs = std::stoi(require("epochs"));
    config.seed = std::stoull(require("seed"));
    config.workers = std::stoi(require("workers"));

    auto load_full = [&](const std::string& name) {
        TextEmbeddings text = read_embeddings_file((dir / name).string());
        if (text.tokens.size() != bundle.vocab->size())
            throw IoError(name + " row count does not match the vocabulary");
        for (std::size_t i = 0; i < text.tokens.size(); ++i)
            if (bundle.vocab->id_of(text.tokens[i]) != static_cast<TokenId>(i))
                throw IoError(name + " row order does not match the vocabulary");
        return std::move(text.values);
    };

    bundle.compass.vocab = bundle.vocab;
    bundle.compass.config = config;
    bundle.compass.target = load_full("compass.vec");
    bundle.compass.context = load_full("compass.ctx.vec");
    bundle.compass.fingerprint = embedding_fingerprint(*bundle.vocab, bundle.compass.target);
    if (std::to_string(bundle.compass.fingerprint) != require("fingerprint"))
        throw ConfigError(
            "framework error: compass fingerprint mismatch (bundle was modified or mixed)");

    std::string slice_list = require("slices");
    std::size_t start = 0;
    while (start <= slice_list.size() && !slice_list.empty()) {
        std::size_t comma = slice_list.find(',', start);
        std::string id = slice_list.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!id.empty()) {
            AlignedSliceModel model;
            model.slice_id = id;
            model.vocab = bundle.vocab;
            model.compass_fingerprint = bundle.compass.fingerprint;
            if (bundle.meta.count("slice_init_" + id))
                model.init_mode = init_mode_from_string(bundle.meta.at("slice_init_" + id));

            TextEmbeddings text = read_embeddings_file((dir / require("slice_file_" + id)).string());
            model.context = zero_init(static_cast<Eigen::Index>(bundle.vocab->size()), config.dim);
            model.trained.assign(bundle.vocab->size(), false);
            if (text.values.cols() != config.dim)
                throw IoError("slice '" + id + "' has dim " + std::to_string(text.values.cols()) +
                              ", bundle says " + std::to_string(config.dim));
            for (std::size_t r = 0; r < text.tokens.size(); ++r) {
                TokenId tid = bundle.vocab->id_of(text.tokens[r]);
                if (tid == kNoToken)
                    throw IoError("slice '" + id + "' has a token outside the vocabulary: " +
                                  text.tokens[r]);
                model.context.row(tid) = text.values.row(static_cast<Eigen::Index>(r));
                model.trained[tid] = true;
            }
            bundle.slices.push_back(std::move(model));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }

    // Rebuild slice masks so vocabulary queries keep working after reload.
    Vocabulary& vocab = *bundle.vocab;
    for (const auto& slice : bundle.slices) {
        std::vector<bool> mask(vocab.size(), false);
        for (std::size_t i = 0; i < vocab.size(); ++i) mask[i] = slice.trained[i];
        vocab.set_slice_mask(slice.slice_id, std::move(mask));
    }
    return bundle;
}

}  // namespace cade
