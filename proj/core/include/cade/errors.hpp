#pragma once

#include <stdexcept>
#include <string>

namespace cade {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a distinct exit code (see tools/cade.cpp and README).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameters, malformed test sets, empty vocabularies, incompatible
// model combinations.
struct ConfigError : Error {
    using Error::Error;
};

// Unreadable files, bad encodings, malformed bundles.
struct IoError : Error {
    using Error::Error;
};

// A query word missing from the vocabulary of the named slice.
struct OovError : Error {
    OovError(const std::string& word, const std::string& slice)
        : Error("out-of-vocabulary word '" + word + "' in slice '" + slice + "'"),
          word(word),
          slice(slice) {}
    std::string word;
    std::string slice;
};

// Non-finite gradients, singular systems, SVD failures.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace cade
