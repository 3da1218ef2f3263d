#pragma once

#include <Eigen/Core>

#include "llr/ranked_list.hpp"
#include "llr/textprep.hpp"
#include "llr/vsm.hpp"

namespace llr::lsi {

/// Rank-k truncated SVD of a weighted term-document matrix, A ~ U_k S_k V_k^T.
struct LsiModel {
    int requested_k = 0;
    int k = 0;                       // effective: min(requested, rank bound)
    Eigen::MatrixXd term_space;      // terms x k, orthonormal columns (U_k)
    Eigen::VectorXd singular_values; // k, non-increasing, >= 0
    Eigen::MatrixXd doc_space;       // docs x k (rows of V_k)
    vsm::WeightingScheme scheme = vsm::WeightingScheme::tfidf;
};

/// Dense copy of the weighted matrix (terms x docs); used by the builder and
/// by reconstruction checks.
Eigen::MatrixXd to_dense(const vsm::TermDocMatrix& matrix);

/// Truncated SVD at k topics. Requested k above min(terms, docs) is clamped
/// to that bound (effective k recorded in the model). Throws ConfigError if
/// k < 1.
LsiModel build_lsi(const vsm::TermDocMatrix& matrix, int k);

/// Ranks documents by latent-space cosine. The query is weighted like any
/// document (query tf, corpus idf) and projected as qhat = U_k^T q; document
/// d is row d of V_k scaled by the singular values. This scores
/// cosine(P_k q, P_k a_d) for the rank-k projector P_k, so at full rank the
/// ordering coincides with VSM cosine. Components with a zero singular value
/// contribute nothing; a query with no energy in the latent space yields an
/// empty list.
RankedList lsi_rank(const textprep::TokenStream& query, const LsiModel& model,
                    const vsm::TermDocMatrix& matrix);

/// Frobenius norm of A - U_k S_k V_k^T.
double reconstruction_error(const LsiModel& model,
                            const vsm::TermDocMatrix& matrix);

} // namespace llr::lsi
