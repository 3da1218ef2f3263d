#include "llr/vsm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "llr/error.hpp"

namespace llr::vsm {

std::string_view to_string(WeightingScheme scheme) {
    switch (scheme) {
    case WeightingScheme::tfidf: return "tfidf";
    case WeightingScheme::sublinear_tfidf: return "sublinear";
    case WeightingScheme::boolean: return "boolean";
    }
    return "?";
}

WeightingScheme weighting_from(std::string_view s) {
    if (s == "tfidf") return WeightingScheme::tfidf;
    if (s == "sublinear") return WeightingScheme::sublinear_tfidf;
    if (s == "boolean") return WeightingScheme::boolean;
    throw ConfigError("unknown weighting scheme: " + std::string(s));
}

std::string_view to_string(SimilarityKind sim) {
    return sim == SimilarityKind::cosine ? "cosine" : "overlap";
}

SimilarityKind similarity_from(std::string_view s) {
    if (s == "cosine") return SimilarityKind::cosine;
    if (s == "overlap") return SimilarityKind::overlap;
    throw ConfigError("unknown similarity: " + std::string(s));
}

double TermDocMatrix::idf(int term_index) const {
    return std::log(static_cast<double>(doc_count()) /
                    static_cast<double>(doc_freq[term_index]));
}

namespace {

double weigh(WeightingScheme scheme, int tf, double idf) {
    if (tf <= 0) return 0.0;
    switch (scheme) {
    case WeightingScheme::tfidf:
        return static_cast<double>(tf) * idf;
    case WeightingScheme::sublinear_tfidf:
        return (1.0 + std::log(static_cast<double>(tf))) * idf;
    case WeightingScheme::boolean:
        return 1.0;
    }
    return 0.0;
}

} // namespace

TermDocMatrix build_matrix_from_tokens(
    const std::vector<textprep::TokenStream>& docs,
    const std::vector<std::string>& doc_ids, WeightingScheme scheme) {
    if (docs.empty() || docs.size() != doc_ids.size()) {
        throw ValidationError("matrix build needs a non-empty document set");
    }

    TermDocMatrix matrix;
    matrix.scheme = scheme;
    matrix.doc_ids = doc_ids;

    // term counts per document; vocabulary in first-seen order for a
    // deterministic index that does not depend on container hashing
    std::vector<std::map<int, int>> tf_per_doc(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        for (const auto& token : docs[d]) {
            auto [it, inserted] = matrix.vocabulary.try_emplace(
                token, static_cast<int>(matrix.terms.size()));
            if (inserted) {
                matrix.terms.push_back(token);
                matrix.doc_freq.push_back(0);
            }
            ++tf_per_doc[d][it->second];
        }
    }
    if (matrix.terms.empty()) {
        throw Error("empty vocabulary after preprocessing");
    }
    for (const auto& tf : tf_per_doc) {
        for (const auto& [term, _] : tf) ++matrix.doc_freq[term];
    }

    matrix.columns.resize(docs.size());
    matrix.column_norm.assign(docs.size(), 0.0);
    matrix.column_sum.assign(docs.size(), 0.0);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        SparseVector& column = matrix.columns[d];
        column.reserve(tf_per_doc[d].size());
        double norm_sq = 0.0;
        double sum = 0.0;
        for (const auto& [term, tf] : tf_per_doc[d]) {
            double w = weigh(scheme, tf, matrix.idf(term));
            if (w <= 0.0) continue; // idf 0: term occurs in every document
            column.emplace_back(term, w);
            norm_sq += w * w;
            sum += w;
        }
        matrix.column_norm[d] = std::sqrt(norm_sq);
        matrix.column_sum[d] = sum;
    }
    return matrix;
}

TermDocMatrix build_matrix(const corpus::Corpus& corpus,
                           textprep::PreprocessConfig prep,
                           WeightingScheme scheme,
                           const textprep::StopwordSet& stopwords) {
    std::vector<textprep::TokenStream> docs;
    std::vector<std::string> doc_ids;
    docs.reserve(corpus.lessons.size());
    doc_ids.reserve(corpus.lessons.size());
    for (const auto& lesson : corpus.lessons) {
        docs.push_back(textprep::preprocess(corpus::lesson_document_text(lesson),
                                            prep, stopwords));
        doc_ids.push_back(lesson.id);
    }
    return build_matrix_from_tokens(docs, doc_ids, scheme);
}

SparseVector query_vector(const textprep::TokenStream& query,
                          const TermDocMatrix& matrix) {
    std::map<int, int> tf;
    for (const auto& token : query) {
        auto it = matrix.vocabulary.find(token);
        if (it != matrix.vocabulary.end()) ++tf[it->second];
    }
    SparseVector vec;
    vec.reserve(tf.size());
    for (const auto& [term, count] : tf) {
        double w = weigh(matrix.scheme, count, matrix.idf(term));
        if (w > 0.0) vec.emplace_back(term, w);
    }
    return vec;
}

namespace {

// Sparse dot products against a sorted column; both vectors sorted by index.
double dot(const SparseVector& a, const SparseVector& b) {
    double total = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            total += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return total;
}

double min_sum(const SparseVector& a, const SparseVector& b) {
    double total = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            total += std::min(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    return total;
}

} // namespace

RankedList vsm_rank(const textprep::TokenStream& query,
                    const TermDocMatrix& matrix, SimilarityKind sim) {
    SparseVector q = query_vector(query, matrix);
    if (q.empty()) return RankedList{};

    double q_norm_sq = 0.0;
    double q_sum = 0.0;
    for (const auto& [_, w] : q) {
        q_norm_sq += w * w;
        q_sum += w;
    }
    double q_norm = std::sqrt(q_norm_sq);

    std::vector<std::pair<std::string, double>> scored;
    for (int d = 0; d < matrix.doc_count(); ++d) {
        double score = 0.0;
        if (sim == SimilarityKind::cosine) {
            double denom = q_norm * matrix.column_norm[d];
            score = denom > 0.0 ? dot(q, matrix.columns[d]) / denom : 0.0;
        } else {
            double denom = std::min(q_sum, matrix.column_sum[d]);
            score = denom > 0.0 ? min_sum(q, matrix.columns[d]) / denom : 0.0;
        }
        if (score > 0.0) scored.emplace_back(matrix.doc_ids[d], score);
    }
    return make_ranked_list(std::move(scored));
}

} // namespace llr::vsm
