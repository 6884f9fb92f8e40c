#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace cade {

using Sentence = std::vector<std::string>;

// Preprocessing applied when turning raw text into token sentences.
// Defaults: lowercase, strip leading/trailing punctuation, keep stopwords,
// one sentence per input line.
struct PreprocessOptions {
    bool lowercase = true;
    bool strip_punctuation = true;
    // When set, matching tokens are dropped after normalization.
    std::optional<std::unordered_set<std::string>> stopwords;
    // 0: newline-delimited sentences. N > 0: ignore line boundaries and emit
    // fixed-length chunks of N tokens (the final chunk may be shorter).
    int fixed_chunk = 0;
};

// Splits UTF-8 text into non-empty sentences of normalized tokens.
// Throws IoError naming the byte offset on invalid UTF-8.
std::vector<Sentence> tokenize(const std::string& raw_text, const PreprocessOptions& options = {});

// Loads a stopword list, one token per line. Tokens are normalized with the
// same lowercasing rule that tokenize() applies.
std::unordered_set<std::string> load_stopwords(const std::string& path, bool lowercase = true);

}  // namespace cade
