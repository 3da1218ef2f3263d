#include "llr/lda.hpp"

#include <algorithm>
#include <numeric>

#include "llr/error.hpp"
#include "llr/rng.hpp"

namespace llr::lda {

namespace {

// One categorical draw proportional to `weights` (all > 0).
int draw(UniformRng& rng, const std::vector<double>& weights, double total) {
    double r = rng.next_double() * total;
    double acc = 0.0;
    int last = static_cast<int>(weights.size()) - 1;
    for (int i = 0; i <= last; ++i) {
        acc += weights[i];
        if (r < acc) return i;
    }
    return last; // rounding tail
}

} // namespace

LdaModel build_lda(const std::vector<textprep::TokenStream>& docs,
                   const std::vector<std::string>& doc_ids, int k,
                   std::uint64_t seed, const GibbsParams& params) {
    if (k < 1) {
        throw ConfigError("lda: topic count must be >= 1, got " +
                          std::to_string(k));
    }
    if (docs.size() != doc_ids.size()) {
        throw ValidationError("lda: docs and doc_ids size mismatch");
    }
    bool any_tokens = std::any_of(docs.begin(), docs.end(),
                                  [](const auto& d) { return !d.empty(); });
    if (!any_tokens) {
        throw ValidationError("lda: every document is empty");
    }

    LdaModel model;
    model.k = k;
    model.doc_ids = doc_ids;
    model.alpha = params.effective_alpha(k);
    model.beta = params.beta;
    model.seed = seed;
    model.iterations = params.train_sweeps;
    model.infer_sweeps = params.infer_sweeps;

    // vocabulary in first-seen order; token streams re-coded as term indexes
    std::vector<std::vector<int>> coded(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        coded[d].reserve(docs[d].size());
        for (const auto& token : docs[d]) {
            auto [it, inserted] = model.vocabulary.try_emplace(
                token, static_cast<int>(model.terms.size()));
            if (inserted) model.terms.push_back(token);
            coded[d].push_back(it->second);
        }
    }
    const int n_terms = static_cast<int>(model.terms.size());
    const int n_docs = static_cast<int>(docs.size());
    const double alpha = model.alpha;
    const double beta = model.beta;
    const double beta_sum = beta * n_terms;

    std::vector<std::vector<int>> doc_topic(n_docs, std::vector<int>(k, 0));
    std::vector<std::vector<int>> topic_term(k, std::vector<int>(n_terms, 0));
    std::vector<int> topic_total(k, 0);
    std::vector<std::vector<int>> assignment(n_docs);

    UniformRng rng(seed);
    for (int d = 0; d < n_docs; ++d) {
        assignment[d].resize(coded[d].size());
        for (std::size_t i = 0; i < coded[d].size(); ++i) {
            int z = static_cast<int>(rng.next_index(k));
            assignment[d][i] = z;
            ++doc_topic[d][z];
            ++topic_term[z][coded[d][i]];
            ++topic_total[z];
        }
    }

    std::vector<double> weights(k);
    for (int sweep = 0; sweep < params.train_sweeps; ++sweep) {
        for (int d = 0; d < n_docs; ++d) {
            for (std::size_t i = 0; i < coded[d].size(); ++i) {
                int w = coded[d][i];
                int z = assignment[d][i];
                --doc_topic[d][z];
                --topic_term[z][w];
                --topic_total[z];

                double total = 0.0;
                for (int t = 0; t < k; ++t) {
                    double p = (doc_topic[d][t] + alpha) *
                               (topic_term[t][w] + beta) /
                               (topic_total[t] + beta_sum);
                    weights[t] = p;
                    total += p;
                }
                z = draw(rng, weights, total);

                assignment[d][i] = z;
                ++doc_topic[d][z];
                ++topic_term[z][w];
                ++topic_total[z];
            }
        }
    }

    model.phi.assign(k, std::vector<double>(n_terms, 0.0));
    for (int t = 0; t < k; ++t) {
        double denom = topic_total[t] + beta_sum;
        double row_sum = 0.0;
        for (int w = 0; w < n_terms; ++w) {
            model.phi[t][w] = (topic_term[t][w] + beta) / denom;
            row_sum += model.phi[t][w];
        }
        for (int w = 0; w < n_terms; ++w) model.phi[t][w] /= row_sum;
    }
    model.doc_theta.assign(n_docs, std::vector<double>(k, 0.0));
    for (int d = 0; d < n_docs; ++d) {
        double n_d = static_cast<double>(coded[d].size());
        double denom = n_d + k * alpha;
        double row_sum = 0.0;
        for (int t = 0; t < k; ++t) {
            model.doc_theta[d][t] = (doc_topic[d][t] + alpha) / denom;
            row_sum += model.doc_theta[d][t];
        }
        for (int t = 0; t < k; ++t) model.doc_theta[d][t] /= row_sum;
    }
    return model;
}

std::vector<double> infer_theta(const textprep::TokenStream& query,
                                const LdaModel& model, std::uint64_t seed,
                                int sweeps) {
    const int k = model.k;
    if (sweeps <= 0) sweeps = model.infer_sweeps;

    std::vector<int> coded;
    coded.reserve(query.size());
    for (const auto& token : query) {
        auto it = model.vocabulary.find(token);
        if (it != model.vocabulary.end()) coded.push_back(it->second);
    }
    if (coded.empty()) {
        return std::vector<double>(k, 1.0 / static_cast<double>(k));
    }

    // Gibbs fold-in with phi frozen: p(z=t) proportional to
    // (m_t + alpha) * phi[t][w].
    UniformRng rng(seed);
    std::vector<int> topic_count(k, 0);
    std::vector<int> assignment(coded.size());
    for (std::size_t i = 0; i < coded.size(); ++i) {
        int z = static_cast<int>(rng.next_index(k));
        assignment[i] = z;
        ++topic_count[z];
    }
    std::vector<double> weights(k);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < coded.size(); ++i) {
            int w = coded[i];
            int z = assignment[i];
            --topic_count[z];
            double total = 0.0;
            for (int t = 0; t < k; ++t) {
                double p = (topic_count[t] + model.alpha) * model.phi[t][w];
                weights[t] = p;
                total += p;
            }
            z = draw(rng, weights, total);
            assignment[i] = z;
            ++topic_count[z];
        }
    }

    std::vector<double> theta(k);
    double denom =
        static_cast<double>(coded.size()) + k * model.alpha;
    double row_sum = 0.0;
    for (int t = 0; t < k; ++t) {
        theta[t] = (topic_count[t] + model.alpha) / denom;
        row_sum += theta[t];
    }
    for (int t = 0; t < k; ++t) theta[t] /= row_sum;
    return theta;
}

RankedList rank_by_theta(const std::vector<double>& theta_query,
                         const LdaModel& model) {
    if (theta_query.size() != static_cast<std::size_t>(model.k)) {
        throw ValidationError("lda: query distribution has wrong length");
    }
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(model.doc_ids.size());
    for (std::size_t d = 0; d < model.doc_ids.size(); ++d) {
        double score = 0.0;
        for (int t = 0; t < model.k; ++t) {
            score += theta_query[t] * model.doc_theta[d][t];
        }
        if (score > 0.0) scored.emplace_back(model.doc_ids[d], score);
    }
    return make_ranked_list(std::move(scored));
}

RankedList lda_rank(const textprep::TokenStream& query, const LdaModel& model,
                    std::uint64_t seed) {
    return rank_by_theta(infer_theta(query, model, seed), model);
}

} // namespace llr::lda
