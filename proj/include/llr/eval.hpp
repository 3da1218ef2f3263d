#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "llr/corpus.hpp"
#include "llr/grid.hpp"
#include "llr/ranked_list.hpp"

namespace llr::eval {

struct EvalConfig {
    int k = 20; // top-K cutoff
    std::uint64_t master_seed = 42;
};

struct IndividualResult {
    std::string config_id;
    double top_k = 0.0;

    bool operator==(const IndividualResult&) const = default;
};

/// One hybrid classifier: 1-based combination id plus its member config ids.
struct CombinationSpec {
    int comb_id = 0;
    std::vector<std::string> members;

    bool operator==(const CombinationSpec&) const = default;
};

struct ReportRow {
    int comb_id = 0;
    std::vector<std::string> members;
    double top_individual = 0.0; // best member's top-K
    double score_addition = 0.0;
    double borda = 0.0;
    int ri_score_addition = 0; // percent, rounded as reported
    int ri_borda = 0;

    bool operator==(const ReportRow&) const = default;
};

struct ExperimentReport {
    int k = 0;
    std::uint64_t master_seed = 0;
    std::vector<IndividualResult> individuals; // canonical grid order
    std::vector<ReportRow> rows;               // one per combination

    bool operator==(const ExperimentReport&) const = default;
};

/// Fraction of artifacts whose top-k items contain at least one relevant
/// lesson. Artifacts with an empty (or missing) relevant set stay in the
/// denominator. Throws ValidationError when `results` is empty.
double top_k_accuracy(
    const std::vector<std::pair<std::string, RankedList>>& results,
    const corpus::RelevanceJudgments& judgments, int k);

/// RI = (p_hybrid - p_best) / p_best, in percent (unrounded).
/// Throws ValidationError when p_best <= 0.
double relative_improvement(double p_hybrid, double p_best_individual);

/// Report rounding: nearest integer, halves away from zero.
int round_ri(double percent);

/// Best configuration of each of the 12 (model x preprocessing) subspaces,
/// ties resolved toward the canonically first config. Input must cover all
/// 88 configurations. Returned in canonical subspace order: model-major,
/// then prep (none, stem, stop, stemstop).
std::vector<std::string>
select_subspace_toppers(const std::vector<IndividualResult>& individual);

/// The 22 combinations of the selection protocol, comb_ids 1..22:
/// per model all 6 pairs of its 4 toppers, then the model's 4-way, ordered
/// vsm pairs, vsm quad, lsi pairs, lsi quad, lda pairs, lda quad, all-12.
/// Input is the 12 toppers in any order; output is canonical.
std::vector<CombinationSpec>
build_combinations(const std::vector<std::string>& toppers);

/// Full protocol: evaluate all 88 configs per artifact, pick toppers, build
/// the 22 combinations, score both fusion methods per combination and the
/// RI against the best member. Deterministic for fixed
/// (corpus, eval config, settings), independent of settings.jobs.
ExperimentReport run_experiment(const corpus::Corpus& corpus,
                                const EvalConfig& eval_config,
                                const grid::RunSettings& settings = {});

/// Planted-relevance synthetic corpus: n_themes disjoint theme vocabularies
/// plus a shared noise pool; every lesson and artifact is drawn from one
/// theme and an artifact's relevant set is exactly its theme's lessons.
/// Defaults mirror the scale of the validation dataset in the source study.
corpus::Corpus generate_synthetic_corpus(std::uint64_t seed,
                                         int n_lessons = 212,
                                         int n_artifacts = 55,
                                         int n_themes = 8);

/// report.csv: comb_id,members,top_individual,score_addition,
/// ri_score_addition,borda,ri_borda — members ';'-joined, fractions with 4
/// decimals, RI as signed integers.
std::string report_csv(const ExperimentReport& report);

/// individuals.csv: config_id,top_k (4 decimals, canonical order).
std::string individuals_csv(const ExperimentReport& report);

std::string report_json(const ExperimentReport& report);

/// Writes report.csv + individuals.csv (or report.json + individuals.json)
/// into `dir`, creating it if needed.
void write_report(const ExperimentReport& report,
                  const std::filesystem::path& dir, bool as_json = false);

} // namespace llr::eval
