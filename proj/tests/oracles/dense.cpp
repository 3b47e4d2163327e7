#include "dense.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace oracle {

namespace {

Eigen::MatrixXd to_dense(const tfp::TridiagonalOperator& op) {
    const auto n = static_cast<Eigen::Index>(op.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = op.diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            a(i, i + 1) = op.super[static_cast<std::size_t>(i)];
            a(i + 1, i) = op.sub[static_cast<std::size_t>(i)];
        }
    }
    return a;
}

}  // namespace

std::vector<double> dense_eigenvalues(const tfp::TridiagonalOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_dense(op), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    const auto& v = es.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

std::vector<double> dense_solve(const tfp::TridiagonalOperator& op, std::span<const double> rhs) {
    const std::size_t n = op.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = op.diag[i];
        if (i + 1 < n) {
            a[i][i + 1] = op.super[i];
            a[i + 1][i] = op.sub[i];
        }
        a[i][n] = rhs[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
        std::swap(a[p], a[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = a[i][n];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace oracle
