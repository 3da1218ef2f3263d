#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "llr/corpus.hpp"
#include "llr/ranked_list.hpp"
#include "llr/textprep.hpp"

namespace llr::vsm {

enum class WeightingScheme { tfidf, sublinear_tfidf, boolean };
enum class SimilarityKind { cosine, overlap };

std::string_view to_string(WeightingScheme scheme);
WeightingScheme weighting_from(std::string_view s);
std::string_view to_string(SimilarityKind sim);
SimilarityKind similarity_from(std::string_view s);

/// Sparse term vector: (term index, weight) pairs sorted by term index.
using SparseVector = std::vector<std::pair<int, double>>;

/// Weighted term-document matrix, stored column-sparse. Zero weights are not
/// stored (a term with df == N has idf 0 and vanishes from every tf-idf
/// column, but stays in the vocabulary with its document frequency).
struct TermDocMatrix {
    std::vector<std::string> terms;                  // index -> term
    std::unordered_map<std::string, int> vocabulary; // term -> index
    std::vector<std::string> doc_ids;                // column order
    std::vector<SparseVector> columns;               // one per document
    std::vector<int> doc_freq;                       // per term, >= 1
    WeightingScheme scheme = WeightingScheme::tfidf;

    // cached per-column aggregates
    std::vector<double> column_norm; // L2 norm
    std::vector<double> column_sum;  // sum of weights

    int term_count() const { return static_cast<int>(terms.size()); }
    int doc_count() const { return static_cast<int>(doc_ids.size()); }

    /// idf(t) = ln(N / df(t)); finite because df >= 1.
    double idf(int term_index) const;
};

/// Builds the matrix over preprocessed lesson documents.
/// weight(t,d): tfidf -> tf*idf; sublinear -> (1+ln tf)*idf for tf>0;
/// boolean -> 1 for tf>0. Throws Error if preprocessing leaves an empty
/// vocabulary, ValidationError if the corpus has no lessons.
TermDocMatrix build_matrix(const corpus::Corpus& corpus,
                           textprep::PreprocessConfig prep,
                           WeightingScheme scheme,
                           const textprep::StopwordSet& stopwords =
                               textprep::default_stopwords());

/// Same, over already-preprocessed documents (shared by grid and tests).
TermDocMatrix build_matrix_from_tokens(
    const std::vector<textprep::TokenStream>& docs,
    const std::vector<std::string>& doc_ids, WeightingScheme scheme);

/// Query-side vector under the matrix's scheme: query tf with corpus idf;
/// out-of-vocabulary terms are dropped.
SparseVector query_vector(const textprep::TokenStream& query,
                          const TermDocMatrix& matrix);

/// Ranks all documents with a positive similarity to the query.
/// cosine: (q . d) / (|q||d|); overlap: sum_t min(q_t, d_t) divided by
/// min(sum q, sum d); both defined 0 when a norm or sum is 0.
RankedList vsm_rank(const textprep::TokenStream& query,
                    const TermDocMatrix& matrix, SimilarityKind sim);

} // namespace llr::vsm
