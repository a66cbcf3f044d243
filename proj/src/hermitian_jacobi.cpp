#include "ptwell/hermitian_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "ptwell/errors.hpp"

namespace ptwell {

HermitianEigen jacobi_eigen(const Eigen::MatrixXcd& input, double tol, int max_sweeps) {
    if (input.rows() != input.cols()) throw InvalidParameter("Jacobi eigensolver needs a square matrix");
    const Eigen::Index n = input.rows();

    Eigen::MatrixXcd a = input.triangularView<Eigen::Upper>();
    a.triangularView<Eigen::StrictlyLower>() = input.triangularView<Eigen::StrictlyUpper>().adjoint();
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);

    const double scale = std::max(a.norm(), 1e-300);
    auto off_norm = [&] {
        double sum = 0.0;
        for (Eigen::Index q = 1; q < n; ++q)
            for (Eigen::Index p = 0; p < q; ++p) sum += std::norm(a(p, q));
        return std::sqrt(2.0 * sum);
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const std::complex<double> g = a(p, q);
                const double mag = std::abs(g);
                if (mag <= 1e-300) continue;
                const std::complex<double> e = g / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const std::complex<double> ec = std::conj(e);

                // A <- A W with W = diag-phase * plane rotation on (p, q).
                Eigen::VectorXcd col_p = a.col(p);
                Eigen::VectorXcd col_q = a.col(q);
                a.col(p) = c * col_p - s * ec * col_q;
                a.col(q) = s * col_p + c * ec * col_q;
                // A <- W^H A
                Eigen::RowVectorXcd row_p = a.row(p);
                Eigen::RowVectorXcd row_q = a.row(q);
                a.row(p) = c * row_p - s * e * row_q;
                a.row(q) = s * row_p + c * e * row_q;
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                Eigen::VectorXcd vp = v.col(p);
                Eigen::VectorXcd vq = v.col(q);
                v.col(p) = c * vp - s * ec * vq;
                v.col(q) = s * vp + c * ec * vq;
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweep;
    return out;
}

}  // namespace ptwell
