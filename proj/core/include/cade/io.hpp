#pragma once

#include <map>
#include <string>
#include <vector>

#include "cade/compass.hpp"
#include "cade/corpus.hpp"
#include "cade/text.hpp"

namespace cade {

// Reads one plain-text slice file; the slice id defaults to the filename stem.
SliceCorpus load_slice_file(const std::string& path, const std::string& slice_id,
                            const PreprocessOptions& options);

// Writes a slice as plain text, one sentence per line.
void write_slice_file(const std::string& path, const SliceCorpus& slice);

// Manifest rows: slice_id <TAB> path. '#' lines are comments.
std::vector<std::pair<std::string, std::string>> read_manifest(const std::string& path);

// key=value records, keys emitted in sorted order.
void write_meta(const std::string& path, const std::map<std::string, std::string>& meta);
std::map<std::string, std::string> read_meta(const std::string& path);

// word2vec text format: "<rows> <dim>" header then token + values per line.
struct TextEmbeddings {
    std::vector<std::string> tokens;
    EmbeddingMatrix values;
};
void write_embeddings_file(const std::string& path, const Vocabulary& vocab,
                           const std::vector<TokenId>& ids, const EmbeddingMatrix& matrix);
TextEmbeddings read_embeddings_file(const std::string& path);

// Model bundle directory:
//   compass.vec      target matrix U over the full vocabulary
//   compass.ctx.vec  compass-phase context matrix
//   slice_<id>.vec   per-slice context rows, restricted to the slice tokens
//   vocab.tsv        token <TAB> global count, in id order
//   meta             key=value record (dims, seeds, fingerprint, ...)
struct Bundle {
    std::shared_ptr<Vocabulary> vocab;
    CompassModel compass;
    std::vector<AlignedSliceModel> slices;
    std::map<std::string, std::string> meta;
};

void save_bundle(const std::string& directory, const CompassModel& compass,
                 const std::vector<AlignedSliceModel>& slices,
                 const std::map<std::string, std::string>& extra_meta = {});

// Rebuilds the models and verifies the stored fingerprint against the
// reloaded compass. Throws IoError / ConfigError on malformed bundles.
Bundle load_bundle(const std::string& directory);

// Filesystem-safe slice file stem.
std::string sanitize_slice_id(const std::string& slice_id);

}  // namespace cade
