#include "llr/lsi.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "llr/error.hpp"

namespace llr::lsi {

Eigen::MatrixXd to_dense(const vsm::TermDocMatrix& matrix) {
    Eigen::MatrixXd dense =
        Eigen::MatrixXd::Zero(matrix.term_count(), matrix.doc_count());
    for (int d = 0; d < matrix.doc_count(); ++d) {
        for (const auto& [term, weight] : matrix.columns[d]) {
            dense(term, d) = weight;
        }
    }
    return dense;
}

LsiModel build_lsi(const vsm::TermDocMatrix& matrix, int k) {
    if (k < 1) {
        throw ConfigError("lsi: topic count must be >= 1, got " +
                          std::to_string(k));
    }
    Eigen::MatrixXd dense = to_dense(matrix);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(dense,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);

    LsiModel model;
    model.requested_k = k;
    model.scheme = matrix.scheme;
    // clamp: no more topics than the factorization carries
    model.k = std::min<int>(k, static_cast<int>(svd.singularValues().size()));
    model.term_space = svd.matrixU().leftCols(model.k);
    model.singular_values = svd.singularValues().head(model.k);
    model.doc_space = svd.matrixV().leftCols(model.k);
    return model;
}

RankedList lsi_rank(const textprep::TokenStream& query, const LsiModel& model,
                    const vsm::TermDocMatrix& matrix) {
    vsm::SparseVector q = vsm::query_vector(query, matrix);
    if (q.empty()) return RankedList{};

    Eigen::VectorXd q_dense = Eigen::VectorXd::Zero(matrix.term_count());
    double q_norm_sq = 0.0;
    for (const auto& [term, weight] : q) {
        q_dense(term) = weight;
        q_norm_sq += weight * weight;
    }

    // Latent-space query: qhat = U_k^T q. Document d sits at row d of
    // V_k Sigma_k, so cos(qhat, Sigma v_d) = cos(P_k q, P_k a_d).
    Eigen::VectorXd q_hat = model.term_space.transpose() * q_dense;

    // A query numerically orthogonal to the collection's column space leaves
    // only rounding dust in qhat; treat it as a zero vector.
    double q_hat_norm = q_hat.norm();
    if (q_hat_norm <= 1e-12 * std::sqrt(q_norm_sq)) return RankedList{};

    std::vector<std::pair<std::string, double>> scored;
    for (int d = 0; d < matrix.doc_count(); ++d) {
        Eigen::VectorXd doc =
            model.doc_space.row(d).transpose().cwiseProduct(
                model.singular_values);
        double doc_norm = doc.norm();
        if (doc_norm <= 0.0) continue;
        double score = q_hat.dot(doc) / (q_hat_norm * doc_norm);
        if (score > 0.0) scored.emplace_back(matrix.doc_ids[d], score);
    }
    return make_ranked_list(std::move(scored));
}

double reconstruction_error(const LsiModel& model,
                            const vsm::TermDocMatrix& matrix) {
    Eigen::MatrixXd approx = model.term_space *
                             model.singular_values.asDiagonal() *
                             model.doc_space.transpose();
    return (to_dense(matrix) - approx).norm();
}

} // namespace llr::lsi
