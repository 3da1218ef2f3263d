#include "llr/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "llr/error.hpp"
#include "llr/fusion.hpp"
#include "llr/rng.hpp"
#include "llr/textprep.hpp"

namespace llr::eval {

double top_k_accuracy(
    const std::vector<std::pair<std::string, RankedList>>& results,
    const corpus::RelevanceJudgments& judgments, int k) {
    if (k < 1) throw ConfigError("top-K cutoff must be >= 1");
    if (results.empty()) {
        throw ValidationError("top-K accuracy undefined over zero artifacts");
    }
    int hits = 0;
    for (const auto& [artifact_id, list] : results) {
        auto it = judgments.find(artifact_id);
        if (it == judgments.end() || it->second.empty()) continue;
        const auto& relevant = it->second;
        int depth = std::min<int>(k, list.size());
        for (int i = 0; i < depth; ++i) {
            if (relevant.contains(list.items[i].doc_id)) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(results.size());
}

double relative_improvement(double p_hybrid, double p_best_individual) {
    if (!(p_best_individual > 0.0)) {
        throw ValidationError(
            "relative improvement undefined for non-positive baseline");
    }
    return 100.0 * (p_hybrid - p_best_individual) / p_best_individual;
}

int round_ri(double percent) {
    return static_cast<int>(std::lround(percent));
}

namespace {

// Subspace key in canonical order: model-major, prep-minor.
int subspace_index(const grid::ClassifierConfig& config) {
    int model = static_cast<int>(config.model);
    const auto& preps = textprep::PreprocessConfig::all();
    int prep = static_cast<int>(
        std::find(preps.begin(), preps.end(), config.prep) - preps.begin());
    return model * 4 + prep;
}

} // namespace

std::vector<std::string>
select_subspace_toppers(const std::vector<IndividualResult>& individual) {
    std::map<std::string, double> by_id;
    for (const auto& result : individual) by_id[result.config_id] = result.top_k;

    const auto grid = grid::enumerate_grid();
    std::vector<const grid::ClassifierConfig*> best(12, nullptr);
    std::vector<double> best_score(12, -1.0);
    for (const auto& config : grid) {
        auto it = by_id.find(config.id());
        if (it == by_id.end()) {
            throw ConfigError("missing individual result for config " +
                              config.id());
        }
        int space = subspace_index(config);
        // strict > keeps the canonically-first config on ties
        if (it->second > best_score[space]) {
            best_score[space] = it->second;
            best[space] = &config;
        }
    }
    std::vector<std::string> toppers;
    toppers.reserve(12);
    for (const auto* config : best) toppers.push_back(config->id());
    return toppers;
}

std::vector<CombinationSpec>
build_combinations(const std::vector<std::string>& toppers) {
    if (toppers.size() != 12) {
        throw ConfigError("expected 12 toppers, got " +
                          std::to_string(toppers.size()));
    }
    // canonicalize: one topper per (model, prep) subspace
    std::vector<std::string> by_space(12);
    std::vector<bool> seen(12, false);
    for (const auto& id : toppers) {
        auto config = grid::ClassifierConfig::parse(id);
        int space = subspace_index(config);
        if (seen[space]) {
            throw ConfigError("duplicate topper for subspace of " + id);
        }
        seen[space] = true;
        by_space[space] = id;
    }

    std::vector<CombinationSpec> combinations;
    combinations.reserve(22);
    int comb_id = 1;
    for (int model = 0; model < 3; ++model) {
        const auto* group = &by_space[model * 4];
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                combinations.push_back(
                    CombinationSpec{comb_id++, {group[a], group[b]}});
            }
        }
        combinations.push_back(CombinationSpec{
            comb_id++, {group[0], group[1], group[2], group[3]}});
    }
    combinations.push_back(CombinationSpec{comb_id++, by_space});
    return combinations;
}

// ---------------------------------------------------------------------------
// Experiment pipeline
// ---------------------------------------------------------------------------

namespace {

// Deterministic parallel-for: results land in per-index slots, so the
// schedule cannot affect anything downstream.
void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    workers.reserve(jobs);
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
                next.store(n); // stop handing out work
            }
        });
    }
    for (auto& worker : workers) worker.join();
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

} // namespace

ExperimentReport run_experiment(const corpus::Corpus& corpus,
                                const EvalConfig& eval_config,
                                const grid::RunSettings& settings) {
    if (corpus.artifacts.empty()) {
        throw ValidationError("experiment needs at least one artifact");
    }
    grid::RunSettings effective = settings;
    effective.master_seed = eval_config.master_seed;
    grid::Runner runner(corpus, effective);

    const auto grid_configs = grid::enumerate_grid();
    const int n_configs = static_cast<int>(grid_configs.size());
    const int n_artifacts = static_cast<int>(corpus.artifacts.size());
    const int jobs = effective.effective_jobs();

    // Evaluate every configuration against every artifact. Lists are stored
    // per (config, artifact) so fusion can reuse them without re-ranking.
    std::vector<std::vector<std::pair<std::string, RankedList>>> lists(
        n_configs);
    parallel_for(n_configs, jobs, [&](int c) {
        auto& per_artifact = lists[c];
        per_artifact.reserve(n_artifacts);
        for (const auto& artifact : corpus.artifacts) {
            per_artifact.emplace_back(artifact.id,
                                      runner.run(grid_configs[c], artifact));
        }
    });

    ExperimentReport report;
    report.k = eval_config.k;
    report.master_seed = eval_config.master_seed;
    report.individuals.reserve(n_configs);
    std::map<std::string, int> config_index;
    for (int c = 0; c < n_configs; ++c) {
        report.individuals.push_back(IndividualResult{
            grid_configs[c].id(),
            top_k_accuracy(lists[c], corpus.judgments, eval_config.k)});
        config_index[grid_configs[c].id()] = c;
    }

    const auto toppers = select_subspace_toppers(report.individuals);
    const auto combinations = build_combinations(toppers);

    report.rows.resize(combinations.size());
    parallel_for(static_cast<int>(combinations.size()), jobs, [&](int i) {
        const auto& spec = combinations[i];
        double best_member = 0.0;
        std::vector<int> member_index;
        member_index.reserve(spec.members.size());
        for (const auto& member : spec.members) {
            int idx = config_index.at(member);
            member_index.push_back(idx);
            best_member =
                std::max(best_member, report.individuals[idx].top_k);
        }

        std::vector<std::pair<std::string, RankedList>> borda_lists;
        std::vector<std::pair<std::string, RankedList>> scoreadd_lists;
        borda_lists.reserve(n_artifacts);
        scoreadd_lists.reserve(n_artifacts);
        std::vector<RankedList> members(spec.members.size());
        for (int a = 0; a < n_artifacts; ++a) {
            for (std::size_t m = 0; m < member_index.size(); ++m) {
                members[m] = lists[member_index[m]][a].second;
            }
            const std::string& artifact_id = corpus.artifacts[a].id;
            borda_lists.emplace_back(artifact_id, fusion::borda_fuse(members));
            scoreadd_lists.emplace_back(artifact_id,
                                        fusion::score_addition_fuse(members));
        }

        ReportRow row;
        row.comb_id = spec.comb_id;
        row.members = spec.members;
        row.top_individual = best_member;
        row.borda = top_k_accuracy(borda_lists, corpus.judgments, eval_config.k);
        row.score_addition =
            top_k_accuracy(scoreadd_lists, corpus.judgments, eval_config.k);
        row.ri_borda = round_ri(relative_improvement(row.borda, best_member));
        row.ri_score_addition =
            round_ri(relative_improvement(row.score_addition, best_member));
        report.rows[i] = std::move(row);
    });

    return report;
}

// ---------------------------------------------------------------------------
// Synthetic corpus
// ---------------------------------------------------------------------------

namespace {

// Pronounceable pseudo-words assembled from syllables; filtered against the
// stopword list, stem collisions, and pure-prefix duplicates so planted
// theme vocabularies stay disjoint after every preprocessing config.
class WordForge {
public:
    explicit WordForge(UniformRng& rng) : rng_(rng) {}

    std::string fresh() {
        static constexpr std::string_view onsets[] = {
            "b", "br", "c", "cl", "d", "dr", "f", "fl", "g", "gr", "h",
            "j",  "k", "kr", "l", "m", "n", "p", "pr", "qu", "r", "s",
            "sk", "sl", "st", "t", "tr", "v", "w", "z"};
        static constexpr std::string_view nuclei[] = {"a", "e", "i", "o", "u",
                                                      "ai", "ea", "io", "ou"};
        static constexpr std::string_view codas[] = {"b", "c", "d", "f", "g",
                                                     "k", "l", "m", "n", "p",
                                                     "r", "t", "x", "z"};
        for (int attempt = 0; attempt < 1000; ++attempt) {
            std::string word;
            int syllables = 2 + static_cast<int>(rng_.next_index(2));
            for (int s = 0; s < syllables; ++s) {
                word += onsets[rng_.next_index(std::size(onsets))];
                word += nuclei[rng_.next_index(std::size(nuclei))];
            }
            word += codas[rng_.next_index(std::size(codas))];
            if (textprep::default_stopwords().contains(word)) continue;
            std::string stemmed = textprep::porter_stem(word);
            if (!used_stems_.insert(stemmed).second) continue;
            if (!used_.insert(word).second) continue;
            return word;
        }
        throw Error("synthetic word pool exhausted");
    }

private:
    UniformRng& rng_;
    std::unordered_set<std::string> used_;
    std::unordered_set<std::string> used_stems_;
};

std::string sentence(UniformRng& rng, const std::vector<std::string>& theme,
                     const std::vector<std::string>& noise, int min_words,
                     int max_words, double theme_prob) {
    int n = min_words +
            static_cast<int>(rng.next_index(max_words - min_words + 1));
    std::string text;
    for (int i = 0; i < n; ++i) {
        const auto& pool =
            rng.next_double() < theme_prob ? theme : noise;
        if (!text.empty()) text.push_back(' ');
        text += pool[rng.next_index(pool.size())];
    }
    return text;
}

std::string padded_id(const char* prefix, int value, int width = 4) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%s%0*d", prefix, width, value);
    return buffer;
}

} // namespace

corpus::Corpus generate_synthetic_corpus(std::uint64_t seed, int n_lessons,
                                         int n_artifacts, int n_themes) {
    if (n_lessons < 1 || n_artifacts < 1 || n_themes < 1) {
        throw ConfigError("synthetic corpus counts must be >= 1");
    }
    if (n_themes > n_lessons) {
        throw ConfigError("synthetic corpus needs n_themes <= n_lessons");
    }

    UniformRng rng(mix64(seed));
    WordForge forge(rng);

    constexpr int kThemeWords = 30;
    constexpr int kNoiseWords = 220;
    std::vector<std::vector<std::string>> themes(n_themes);
    for (auto& theme : themes) {
        theme.reserve(kThemeWords);
        for (int i = 0; i < kThemeWords; ++i) theme.push_back(forge.fresh());
    }
    std::vector<std::string> noise;
    noise.reserve(kNoiseWords);
    for (int i = 0; i < kNoiseWords; ++i) noise.push_back(forge.fresh());

    corpus::Corpus corpus;
    int n_projects = std::max(1, n_lessons / 7);
    corpus.lessons.reserve(n_lessons);
    std::vector<std::vector<std::string>> theme_lessons(n_themes);
    for (int i = 0; i < n_lessons; ++i) {
        int theme = i % n_themes; // every theme gets lessons
        corpus::LessonRecord lesson;
        lesson.id = padded_id("L", i + 1);
        lesson.project_id =
            padded_id("P", 1 + static_cast<int>(rng.next_index(n_projects)), 2);
        lesson.context =
            sentence(rng, themes[theme], noise, 10, 22, 0.55);
        lesson.problem =
            sentence(rng, themes[theme], noise, 8, 18, 0.55);
        lesson.recommended_actions =
            sentence(rng, themes[theme], noise, 8, 18, 0.55);
        theme_lessons[theme].push_back(lesson.id);
        corpus.lessons.push_back(std::move(lesson));
    }

    corpus.artifacts.reserve(n_artifacts);
    for (int i = 0; i < n_artifacts; ++i) {
        int theme = i % n_themes;
        corpus::QueryArtifact artifact;
        artifact.id = padded_id("A", i + 1);
        artifact.kind = (i % 2 == 0) ? corpus::ArtifactKind::issue
                                     : corpus::ArtifactKind::risk;
        artifact.title = sentence(rng, themes[theme], noise, 4, 8, 0.7);
        artifact.description =
            sentence(rng, themes[theme], noise, 14, 28, 0.6);
        for (const auto& lesson_id : theme_lessons[theme]) {
            corpus.judgments[artifact.id].insert(lesson_id);
        }
        corpus.artifacts.push_back(std::move(artifact));
    }
    return corpus;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) out.push_back(sep);
        out += part;
    }
    return out;
}

std::string fraction4(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

} // namespace

std::string report_csv(const ExperimentReport& report) {
    std::string out = "comb_id,members,top_individual,score_addition,"
                      "ri_score_addition,borda,ri_borda\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.comb_id);
        out += ',' + join(row.members, ';');
        out += ',' + fraction4(row.top_individual);
        out += ',' + fraction4(row.score_addition);
        out += ',' + std::to_string(row.ri_score_addition);
        out += ',' + fraction4(row.borda);
        out += ',' + std::to_string(row.ri_borda);
        out += '\n';
    }
    return out;
}

std::string individuals_csv(const ExperimentReport& report) {
    std::string out = "config_id,top_k\n";
    for (const auto& result : report.individuals) {
        out += result.config_id + ',' + fraction4(result.top_k) + '\n';
    }
    return out;
}

std::string report_json(const ExperimentReport& report) {
    nlohmann::ordered_json doc;
    doc["k"] = report.k;
    doc["master_seed"] = report.master_seed;
    doc["individuals"] = nlohmann::ordered_json::array();
    for (const auto& result : report.individuals) {
        doc["individuals"].push_back(
            {{"config_id", result.config_id}, {"top_k", result.top_k}});
    }
    doc["combinations"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        doc["combinations"].push_back({{"comb_id", row.comb_id},
                                       {"members", row.members},
                                       {"top_individual", row.top_individual},
                                       {"score_addition", row.score_addition},
                                       {"ri_score_addition", row.ri_score_addition},
                                       {"borda", row.borda},
                                       {"ri_borda", row.ri_borda}});
    }
    return doc.dump(2) + "\n";
}

void write_report(const ExperimentReport& report,
                  const std::filesystem::path& dir, bool as_json) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::filesystem::path& path, const std::string& data) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write file: " + path.string());
        out << data;
    };
    if (as_json) {
        write(dir / "report.json", report_json(report));
    } else {
        write(dir / "report.csv", report_csv(report));
        write(dir / "individuals.csv", individuals_csv(report));
    }
}

} // namespace llr::eval
