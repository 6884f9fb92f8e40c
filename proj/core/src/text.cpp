#include "cade/text.hpp"

#include <cctype>
#include <fstream>

#include "cade/errors.hpp"

namespace cade {

namespace {

// Validates UTF-8 structure and returns the byte offset of the first invalid
// sequence, or npos when the whole string is valid.
std::size_t first_invalid_utf8(const std::string& s) {
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        unsigned char c = p[i];
        std::size_t extra;
        if (c < 0x80) {
            extra = 0;
        } else if ((c & 0xE0) == 0xC0) {
            extra = 1;
            if (c < 0xC2) return i;  // overlong
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            if (c > 0xF4) return i;  // beyond U+10FFFF
        } else {
            return i;
        }
        if (i + extra >= n) return i;  // truncated sequence
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) return i;
        }
        i += extra + 1;
    }
    return std::string::npos;
}

bool is_strippable(unsigned char c) {
    return std::ispunct(c) != 0;
}

// Trims ASCII punctuation from both ends; multi-byte characters are never
// stripped.
std::string strip_token(const std::string& tok) {
    std::size_t b = 0;
    std::size_t e = tok.size();
    while (b < e && static_cast<unsigned char>(tok[b]) < 0x80 && is_strippable(tok[b])) ++b;
    while (e > b && static_cast<unsigned char>(tok[e - 1]) < 0x80 && is_strippable(tok[e - 1])) --e;
    return tok.substr(b, e - b);
}

std::string lowercase_ascii(std::string tok) {
    for (auto& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return tok;
}

}  // namespace

std::vector<Sentence> tokenize(const std::string& raw_text, const PreprocessOptions& options) {
    if (std::size_t off = first_invalid_utf8(raw_text); off != std::string::npos) {
        throw IoError("invalid UTF-8 at byte offset " + std::to_string(off));
    }

    auto normalize = [&](std::string tok) -> std::string {
        if (options.strip_punctuation) tok = strip_token(tok);
        if (options.lowercase) tok = lowercase_ascii(std::move(tok));
        if (!tok.empty() && options.stopwords && options.stopwords->count(tok)) tok.clear();
        return tok;
    };

    std::vector<Sentence> sentences;
    Sentence current;
    auto flush = [&] {
        if (!current.empty()) sentences.push_back(std::move(current));
        current.clear();
    };

    std::string tok;
    auto push_token = [&] {
        if (tok.empty()) return;
        std::string norm = normalize(std::move(tok));
        tok.clear();
        if (norm.empty()) return;
        current.push_back(std::move(norm));
        if (options.fixed_chunk > 0 && static_cast<int>(current.size()) == options.fixed_chunk) flush();
    };

    for (char ch : raw_text) {
        if (ch == '\n') {
            push_token();
            if (options.fixed_chunk == 0) flush();
        } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == '\r') {
            push_token();
        } else {
            tok.push_back(ch);
        }
    }
    push_token();
    flush();
    return sentences;
}

std::unordered_set<std::string> load_stopwords(const std::string& path, bool lowercase) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword list: " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        words.insert(lowercase ? lowercase_ascii(line) : line);
    }
    return words;
}

}  // namespace cade
