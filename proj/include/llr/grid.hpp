#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "llr/corpus.hpp"
#include "llr/lda.hpp"
#include "llr/ranked_list.hpp"
#include "llr/textprep.hpp"
#include "llr/vsm.hpp"

namespace llr::grid {

enum class ModelKind { vsm, lsi, lda };

/// Similarity axis of the grid; conditional probability is LDA-only.
enum class Similarity { cosine, overlap, conditional_probability };

std::string_view to_string(ModelKind model);
ModelKind model_kind_from(std::string_view s);
std::string_view to_string(Similarity sim);
Similarity similarity_axis_from(std::string_view s);

inline constexpr std::array<int, 4> kTopicGrid{32, 64, 128, 256};

/// One point of the 88-configuration grid.
/// id grammar: model:prep:weighting:similarity:topics, "-" for absent
/// fields, e.g. "lsi:stemstop:sublinear:cosine:128".
struct ClassifierConfig {
    ModelKind model = ModelKind::vsm;
    textprep::PreprocessConfig prep;
    std::optional<vsm::WeightingScheme> weighting; // vsm, lsi
    Similarity similarity = Similarity::cosine;
    std::optional<int> topics; // lsi, lda

    bool operator==(const ClassifierConfig&) const = default;

    std::string id() const;

    /// Parses and validates a canonical id. Throws ConfigError.
    static ClassifierConfig parse(std::string_view id);

    /// Family invariants: vsm has weighting+cosine/overlap and no topics;
    /// lsi has weighting+cosine+topics; lda has condprob+topics only.
    /// Throws ConfigError on violation.
    void validate() const;
};

/// The 88 configurations in canonical order
/// (model, prep, weighting, similarity, topics): 24 VSM, 48 LSI, 16 LDA.
std::vector<ClassifierConfig> enumerate_grid();

/// Knobs shared by every grid run. stopwords == nullptr selects the
/// embedded default list.
struct RunSettings {
    lda::GibbsParams lda_params{};
    std::uint64_t master_seed = 42;
    int jobs = 0; // 0 -> hardware concurrency
    std::optional<std::filesystem::path> cache_dir;
    const textprep::StopwordSet* stopwords = nullptr;

    int effective_jobs() const;
    const textprep::StopwordSet& effective_stopwords() const;
};

/// Builds and executes any grid configuration against one corpus.
/// Models are built lazily, memoized per configuration, and optionally
/// persisted under cache_dir/<corpus-hash>/<config-id>.model. A Runner is
/// immutable from the caller's view and safe for concurrent run() calls.
class Runner {
public:
    explicit Runner(const corpus::Corpus& corpus, RunSettings settings = {});

    /// Preprocesses the artifact's query string with the config's prep and
    /// ranks with the config's model. An artifact whose query text
    /// preprocesses to nothing yields an empty list for every config.
    RankedList run(const ClassifierConfig& config,
                   const corpus::QueryArtifact& artifact) const;

    /// Lookup by artifact id; throws ValidationError if unknown.
    RankedList run(const ClassifierConfig& config,
                   std::string_view artifact_id) const;

    /// Builds (or loads from cache) the model for a config without running
    /// a query; used to warm caches in parallel.
    void prepare(const ClassifierConfig& config) const;

    const corpus::Corpus& corpus() const;
    const RunSettings& settings() const;
    std::uint64_t corpus_hash() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// One-shot convenience wrapper over a throwaway Runner.
RankedList run_classifier(const ClassifierConfig& config,
                          const corpus::Corpus& corpus,
                          const corpus::QueryArtifact& artifact,
                          const RunSettings& settings = {});

} // namespace llr::grid
