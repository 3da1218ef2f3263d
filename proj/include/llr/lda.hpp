#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "llr/ranked_list.hpp"
#include "llr/textprep.hpp"

namespace llr::lda {

/// Gibbs sampler hyperparameters. alpha <= 0 selects the 50/k default.
struct GibbsParams {
    double alpha = 0.0;
    double beta = 0.01;
    int train_sweeps = 500;
    int infer_sweeps = 100;

    double effective_alpha(int k) const {
        return alpha > 0.0 ? alpha : 50.0 / static_cast<double>(k);
    }
};

/// Topic model estimated by collapsed Gibbs sampling.
struct LdaModel {
    int k = 0;
    std::vector<std::string> terms;                  // index -> term
    std::unordered_map<std::string, int> vocabulary; // term -> index
    std::vector<std::string> doc_ids;
    std::vector<std::vector<double>> phi;       // k rows, each sums to 1
    std::vector<std::vector<double>> doc_theta; // one row per doc, sums to 1
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    int iterations = 0;     // training sweeps actually run
    int infer_sweeps = 100; // fold-in default, from GibbsParams at build
};

/// Trains a model over preprocessed documents. Deterministic given
/// (docs, k, seed, params). Throws ConfigError if k < 1, ValidationError if
/// every document is empty.
LdaModel build_lda(const std::vector<textprep::TokenStream>& docs,
                   const std::vector<std::string>& doc_ids, int k,
                   std::uint64_t seed, const GibbsParams& params = {});

/// Folds a query in with phi held fixed; returns a k-vector summing to 1.
/// Empty or all-out-of-vocabulary queries return the uniform distribution.
std::vector<double> infer_theta(const textprep::TokenStream& query,
                                const LdaModel& model, std::uint64_t seed,
                                int sweeps = 0); // 0 -> model's infer default

/// score(d) = sum_k theta_query[k] * theta_d[k]: the probability that query
/// and document emit the same topic under independent draws.
RankedList rank_by_theta(const std::vector<double>& theta_query,
                         const LdaModel& model);

/// infer_theta + rank_by_theta. The seed controls the fold-in chain.
RankedList lda_rank(const textprep::TokenStream& query, const LdaModel& model,
                    std::uint64_t seed);

} // namespace llr::lda
