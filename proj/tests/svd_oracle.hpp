#pragma once

// Test-only dense SVD oracle: one-sided Jacobi on the columns of A.
// Deliberately independent of the library's Eigen-based implementation so
// LSI checks compare two different numerical routes.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace svd_oracle {

struct Svd {
    // column-major factors: u[i] and v[i] are the i-th singular vectors
    std::vector<std::vector<double>> u;
    std::vector<double> sigma;
    std::vector<std::vector<double>> v;
};

// A is row-major, rows x cols.
inline Svd jacobi_svd(std::vector<std::vector<double>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;

    // work on columns
    std::vector<std::vector<double>> u(cols, std::vector<double>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) u[c][r] = a[r][c];
    }
    std::vector<std::vector<double>> v(cols, std::vector<double>(cols, 0.0));
    for (std::size_t c = 0; c < cols; ++c) v[c][c] = 1.0;

    auto dot = [](const std::vector<double>& x, const std::vector<double>& y) {
        return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    };

    const double eps = 1e-14;
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < cols; ++i) {
            for (std::size_t j = i + 1; j < cols; ++j) {
                double alpha = dot(u[i], u[i]);
                double beta = dot(u[j], u[j]);
                double gamma = dot(u[i], u[j]);
                if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) ||
                    gamma == 0.0) {
                    continue;
                }
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) /
                           (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    double ui = u[i][r];
                    u[i][r] = c * ui - s * u[j][r];
                    u[j][r] = s * ui + c * u[j][r];
                }
                for (std::size_t r = 0; r < cols; ++r) {
                    double vi = v[i][r];
                    v[i][r] = c * vi - s * v[j][r];
                    v[j][r] = s * vi + c * v[j][r];
                }
            }
        }
        if (!rotated) break;
    }

    Svd out;
    out.sigma.resize(cols);
    out.u.assign(cols, std::vector<double>(rows, 0.0));
    out.v = v;
    std::vector<std::size_t> order(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        out.sigma[c] = std::sqrt(dot(u[c], u[c]));
        order[c] = c;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return out.sigma[x] > out.sigma[y];
    });

    Svd sorted;
    sorted.sigma.reserve(cols);
    for (std::size_t c : order) {
        sorted.sigma.push_back(out.sigma[c]);
        std::vector<double> uc(rows, 0.0);
        if (out.sigma[c] > 0.0) {
            for (std::size_t r = 0; r < rows; ++r) {
                uc[r] = u[c][r] / out.sigma[c];
            }
        }
        sorted.u.push_back(std::move(uc));
        sorted.v.push_back(v[c]);
    }
    return sorted;
}

// || A - sum_{i<k} sigma_i u_i v_i^T ||_F
inline double truncation_error(const std::vector<std::vector<double>>& a,
                               const Svd& svd, std::size_t k) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    double err_sq = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double approx = 0.0;
            for (std::size_t i = 0; i < k && i < svd.sigma.size(); ++i) {
                approx += svd.sigma[i] * svd.u[i][r] * svd.v[i][c];
            }
            double diff = a[r][c] - approx;
            err_sq += diff * diff;
        }
    }
    return std::sqrt(err_sq);
}

} // namespace svd_oracle
