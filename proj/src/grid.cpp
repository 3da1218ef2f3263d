#include "llr/grid.hpp"

#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "llr/error.hpp"
#include "llr/lsi.hpp"
#include "llr/rng.hpp"
#include "model_cache.hpp"

namespace llr::grid {

std::string_view to_string(ModelKind model) {
    switch (model) {
    case ModelKind::vsm: return "vsm";
    case ModelKind::lsi: return "lsi";
    case ModelKind::lda: return "lda";
    }
    return "?";
}

ModelKind model_kind_from(std::string_view s) {
    if (s == "vsm") return ModelKind::vsm;
    if (s == "lsi") return ModelKind::lsi;
    if (s == "lda") return ModelKind::lda;
    throw ConfigError("unknown model kind: " + std::string(s));
}

std::string_view to_string(Similarity sim) {
    switch (sim) {
    case Similarity::cosine: return "cosine";
    case Similarity::overlap: return "overlap";
    case Similarity::conditional_probability: return "condprob";
    }
    return "?";
}

Similarity similarity_axis_from(std::string_view s) {
    if (s == "cosine") return Similarity::cosine;
    if (s == "overlap") return Similarity::overlap;
    if (s == "condprob") return Similarity::conditional_probability;
    throw ConfigError("unknown similarity: " + std::string(s));
}

std::string ClassifierConfig::id() const {
    std::string out{to_string(model)};
    out += ':';
    out += prep.label();
    out += ':';
    out += weighting ? vsm::to_string(*weighting) : "-";
    out += ':';
    out += to_string(similarity);
    out += ':';
    out += topics ? std::to_string(*topics) : "-";
    return out;
}

ClassifierConfig ClassifierConfig::parse(std::string_view id) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : id) {
        if (c == ':') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    if (fields.size() != 5) {
        throw ConfigError("config id must have 5 ':'-separated fields: " +
                          std::string(id));
    }
    ClassifierConfig config;
    config.model = model_kind_from(fields[0]);
    config.prep = textprep::PreprocessConfig::from_label(fields[1]);
    if (fields[2] != "-") config.weighting = vsm::weighting_from(fields[2]);
    config.similarity = similarity_axis_from(fields[3]);
    if (fields[4] != "-") {
        int topics = 0;
        try {
            topics = std::stoi(fields[4]);
        } catch (const std::exception&) {
            throw ConfigError("bad topic count in config id: " +
                              std::string(id));
        }
        config.topics = topics;
    }
    config.validate();
    return config;
}

void ClassifierConfig::validate() const {
    switch (model) {
    case ModelKind::vsm:
        if (!weighting || topics ||
            similarity == Similarity::conditional_probability) {
            throw ConfigError("invalid vsm config: " + id());
        }
        break;
    case ModelKind::lsi:
        if (!weighting || !topics || similarity != Similarity::cosine) {
            throw ConfigError("invalid lsi config: " + id());
        }
        break;
    case ModelKind::lda:
        if (weighting || !topics ||
            similarity != Similarity::conditional_probability) {
            throw ConfigError("invalid lda config: " + id());
        }
        break;
    }
    if (topics && *topics < 1) {
        throw ConfigError("topic count must be >= 1: " + id());
    }
}

std::vector<ClassifierConfig> enumerate_grid() {
    std::vector<ClassifierConfig> configs;
    configs.reserve(88);
    constexpr std::array<vsm::WeightingScheme, 3> weights{
        vsm::WeightingScheme::tfidf, vsm::WeightingScheme::sublinear_tfidf,
        vsm::WeightingScheme::boolean};

    for (const auto& prep : textprep::PreprocessConfig::all()) {
        for (auto w : weights) {
            for (auto sim : {Similarity::cosine, Similarity::overlap}) {
                ClassifierConfig c;
                c.model = ModelKind::vsm;
                c.prep = prep;
                c.weighting = w;
                c.similarity = sim;
                configs.push_back(c);
            }
        }
    }
    for (const auto& prep : textprep::PreprocessConfig::all()) {
        for (auto w : weights) {
            for (int topics : kTopicGrid) {
                ClassifierConfig c;
                c.model = ModelKind::lsi;
                c.prep = prep;
                c.weighting = w;
                c.similarity = Similarity::cosine;
                c.topics = topics;
                configs.push_back(c);
            }
        }
    }
    for (const auto& prep : textprep::PreprocessConfig::all()) {
        for (int topics : kTopicGrid) {
            ClassifierConfig c;
            c.model = ModelKind::lda;
            c.prep = prep;
            c.similarity = Similarity::conditional_probability;
            c.topics = topics;
            configs.push_back(c);
        }
    }
    return configs;
}

int RunSettings::effective_jobs() const {
    if (jobs > 0) return jobs;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

const textprep::StopwordSet& RunSettings::effective_stopwords() const {
    return stopwords ? *stopwords : textprep::default_stopwords();
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace {

// Memoizes shared_ptr values under string keys; concurrent callers for the
// same key wait on one build instead of duplicating it.
template <typename T>
class KeyedOnce {
public:
    template <typename Fn>
    std::shared_ptr<const T> get_or_build(const std::string& key, Fn&& build) {
        std::unique_lock lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            auto future = it->second;
            lock.unlock();
            return future.get();
        }
        std::promise<std::shared_ptr<const T>> promise;
        entries_.emplace(key, promise.get_future().share());
        lock.unlock();
        try {
            std::shared_ptr<const T> value = build();
            promise.set_value(value);
            return value;
        } catch (...) {
            promise.set_exception(std::current_exception());
            lock.lock();
            entries_.erase(key); // waiters see the exception; later calls rebuild
            throw;
        }
    }

private:
    std::mutex mutex_;
    std::map<std::string, std::shared_future<std::shared_ptr<const T>>> entries_;
};

} // namespace

struct Runner::Impl {
    const corpus::Corpus& corpus;
    RunSettings settings;
    std::uint64_t corpus_hash;

    KeyedOnce<std::vector<textprep::TokenStream>> tokens_by_prep;
    KeyedOnce<vsm::TermDocMatrix> matrices;
    KeyedOnce<lsi::LsiModel> lsi_models;
    KeyedOnce<lda::LdaModel> lda_models;

    Impl(const corpus::Corpus& c, RunSettings s)
        : corpus(c), settings(std::move(s)),
          corpus_hash(corpus::content_hash(c)) {}

    std::shared_ptr<const std::vector<textprep::TokenStream>>
    lesson_tokens(textprep::PreprocessConfig prep) {
        return tokens_by_prep.get_or_build(std::string(prep.label()), [&] {
            auto docs = std::make_shared<std::vector<textprep::TokenStream>>();
            docs->reserve(corpus.lessons.size());
            for (const auto& lesson : corpus.lessons) {
                docs->push_back(textprep::preprocess(
                    corpus::lesson_document_text(lesson), prep,
                    settings.effective_stopwords()));
            }
            return docs;
        });
    }

    std::vector<std::string> lesson_ids() const {
        std::vector<std::string> ids;
        ids.reserve(corpus.lessons.size());
        for (const auto& lesson : corpus.lessons) ids.push_back(lesson.id);
        return ids;
    }

    std::optional<std::filesystem::path>
    cache_path(const ClassifierConfig& config) const {
        if (!settings.cache_dir) return std::nullopt;
        return cache::model_path(*settings.cache_dir, corpus_hash, config.id());
    }

    std::shared_ptr<const vsm::TermDocMatrix>
    matrix_for(const ClassifierConfig& config) {
        std::string key = std::string(config.prep.label()) + "/" +
                          std::string(vsm::to_string(*config.weighting));
        return matrices.get_or_build(key, [&] {
            if (config.model == ModelKind::vsm) {
                if (auto path = cache_path(config)) {
                    if (auto cached =
                            cache::read_vsm(*path, corpus_hash, config.id())) {
                        return std::make_shared<const vsm::TermDocMatrix>(
                            std::move(*cached));
                    }
                }
            }
            auto docs = lesson_tokens(config.prep);
            auto matrix = std::make_shared<const vsm::TermDocMatrix>(
                vsm::build_matrix_from_tokens(*docs, lesson_ids(),
                                              *config.weighting));
            if (config.model == ModelKind::vsm) {
                if (auto path = cache_path(config)) {
                    cache::write_vsm(*path, corpus_hash, config.id(), *matrix);
                }
            }
            return matrix;
        });
    }

    std::shared_ptr<const lsi::LsiModel>
    lsi_for(const ClassifierConfig& config,
            const std::shared_ptr<const vsm::TermDocMatrix>& matrix) {
        return lsi_models.get_or_build(config.id(), [&] {
            if (auto path = cache_path(config)) {
                if (auto cached =
                        cache::read_lsi(*path, corpus_hash, config.id())) {
                    return std::make_shared<const lsi::LsiModel>(
                        std::move(cached->second));
                }
            }
            auto model = std::make_shared<const lsi::LsiModel>(
                lsi::build_lsi(*matrix, *config.topics));
            if (auto path = cache_path(config)) {
                cache::write_lsi(*path, corpus_hash, config.id(), *matrix,
                                 *model);
            }
            return model;
        });
    }

    std::shared_ptr<const lda::LdaModel>
    lda_for(const ClassifierConfig& config) {
        std::string key = std::string(config.prep.label()) + "/" +
                          std::to_string(*config.topics);
        return lda_models.get_or_build(key, [&] {
            if (auto path = cache_path(config)) {
                if (auto cached =
                        cache::read_lda(*path, corpus_hash, config.id())) {
                    return std::make_shared<const lda::LdaModel>(
                        std::move(*cached));
                }
            }
            auto docs = lesson_tokens(config.prep);
            std::uint64_t seed =
                derive_seed(settings.master_seed, config.id());
            auto model = std::make_shared<const lda::LdaModel>(
                lda::build_lda(*docs, lesson_ids(), *config.topics, seed,
                               settings.lda_params));
            if (auto path = cache_path(config)) {
                cache::write_lda(*path, corpus_hash, config.id(), *model);
            }
            return model;
        });
    }
};

Runner::Runner(const corpus::Corpus& corpus, RunSettings settings)
    : impl_(std::make_shared<Impl>(corpus, std::move(settings))) {
    if (corpus.lessons.empty()) {
        throw ValidationError("runner needs a corpus with at least one lesson");
    }
}

const corpus::Corpus& Runner::corpus() const { return impl_->corpus; }
const RunSettings& Runner::settings() const { return impl_->settings; }
std::uint64_t Runner::corpus_hash() const { return impl_->corpus_hash; }

void Runner::prepare(const ClassifierConfig& config) const {
    config.validate();
    switch (config.model) {
    case ModelKind::vsm:
        impl_->matrix_for(config);
        break;
    case ModelKind::lsi:
        impl_->lsi_for(config, impl_->matrix_for(config));
        break;
    case ModelKind::lda:
        impl_->lda_for(config);
        break;
    }
}

RankedList Runner::run(const ClassifierConfig& config,
                       const corpus::QueryArtifact& artifact) const {
    config.validate();
    try {
        textprep::TokenStream query = textprep::preprocess(
            corpus::artifact_query_string(artifact), config.prep,
            impl_->settings.effective_stopwords());
        // Nothing left to search with: empty list for every model family.
        if (query.empty()) return RankedList{};

        switch (config.model) {
        case ModelKind::vsm: {
            auto matrix = impl_->matrix_for(config);
            auto sim = config.similarity == Similarity::cosine
                           ? vsm::SimilarityKind::cosine
                           : vsm::SimilarityKind::overlap;
            return vsm::vsm_rank(query, *matrix, sim);
        }
        case ModelKind::lsi: {
            auto matrix = impl_->matrix_for(config);
            auto model = impl_->lsi_for(config, matrix);
            return lsi::lsi_rank(query, *model, *matrix);
        }
        case ModelKind::lda: {
            auto model = impl_->lda_for(config);
            std::uint64_t infer_seed = derive_seed(
                derive_seed(impl_->settings.master_seed, config.id()),
                "infer:" + artifact.id);
            return lda::lda_rank(query, *model, infer_seed);
        }
        }
        return RankedList{};
    } catch (const ConfigError& e) {
        throw ConfigError("[" + config.id() + "] " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError("[" + config.id() + "] " + e.what());
    } catch (const Error& e) {
        throw Error("[" + config.id() + "] " + e.what());
    }
}

RankedList Runner::run(const ClassifierConfig& config,
                       std::string_view artifact_id) const {
    const corpus::QueryArtifact* artifact =
        impl_->corpus.find_artifact(artifact_id);
    if (!artifact) {
        throw ValidationError("unknown artifact id: " +
                              std::string(artifact_id));
    }
    return run(config, *artifact);
}

RankedList run_classifier(const ClassifierConfig& config,
                          const corpus::Corpus& corpus,
                          const corpus::QueryArtifact& artifact,
                          const RunSettings& settings) {
    Runner runner(corpus, settings);
    return runner.run(config, artifact);
}

} // namespace llr::grid
