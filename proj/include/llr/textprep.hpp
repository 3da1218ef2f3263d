#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace llr::textprep {

/// Ordered list of lowercase terms produced by the preprocessing pipeline.
using TokenStream = std::vector<std::string>;

using StopwordSet = std::unordered_set<std::string>;

/// One of the four preprocessing configurations applied uniformly to
/// documents and queries: none, stem-only, stop-only, both.
struct PreprocessConfig {
    bool stemming = false;
    bool stopping = false;

    bool operator==(const PreprocessConfig&) const = default;

    /// The four configurations in their fixed enumeration order:
    /// none, stem, stop, stemstop.
    static const std::array<PreprocessConfig, 4>& all();

    /// Canonical label, also used inside classifier config ids.
    std::string_view label() const;

    /// Inverse of label(); throws ConfigError on unknown labels.
    static PreprocessConfig from_label(std::string_view label);
};

/// Lowercases, splits on any non-alphanumeric byte, drops tokens shorter
/// than 2 characters and purely numeric tokens.
TokenStream tokenize(std::string_view text);

/// The embedded English stopword list (mirrors resources/stopwords_en.txt).
const StopwordSet& default_stopwords();

/// Loads a one-word-per-line stopword file (UTF-8, blank lines ignored).
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Removes stopwords, preserving the relative order of survivors.
/// Matches on the token's surface form, so this runs before stemming.
TokenStream remove_stopwords(TokenStream stream,
                             const StopwordSet& stopwords = default_stopwords());

/// Porter (1980) stem of a single lowercase token.
std::string porter_stem(std::string_view word);

/// Stems every token in place; order and count preserved.
TokenStream stem(TokenStream stream);

/// Full pipeline: tokenize, then stopword removal if cfg.stopping,
/// then stemming if cfg.stemming.
TokenStream preprocess(std::string_view text, PreprocessConfig cfg,
                       const StopwordSet& stopwords = default_stopwords());

} // namespace llr::textprep
