#include "g2forge/form.hpp"

#include <Eigen/Dense>

namespace g2forge {

namespace {

Eigen::MatrixXd to_eigen(const FrameMetric<double>& m) {
    Eigen::MatrixXd g(m.dim, m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) g(i, j) = m.at(i, j);
    return g;
}

/// det of the submatrix of `a` with rows `rows` and columns `cols`.
double minor_det(const Eigen::MatrixXd& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int k = static_cast<int>(rows.size());
    if (k == 0) return 1.0;
    Eigen::MatrixXd sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i] - 1, cols[j] - 1);
    return sub.determinant();
}

} // namespace

double metric_det(const FrameMetric<double>& m) { return to_eigen(m).determinant(); }

std::vector<double> metric_inverse(const FrameMetric<double>& m) {
    Eigen::MatrixXd g = to_eigen(m);
    double det = g.determinant();
    if (!(std::abs(det) > 1e-300)) throw SingularMetric("metric_inverse: determinant is zero");
    Eigen::MatrixXd inv = g.inverse();
    std::vector<double> out(static_cast<std::size_t>(m.dim) * m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) out[i * m.dim + j] = inv(i, j);
    return out;
}

double inner(const Form<double>& x, const Form<double>& y, const FrameMetric<double>& m) {
    FrameMetric<double> ginv;
    ginv.dim = m.dim;
    ginv.g = metric_inverse(m);
    Eigen::MatrixXd gi = to_eigen(ginv);
    double total = 0.0;
    for (const auto& [mi, ci] : x.coeffs()) {
        auto rows = mask_indices(mi);
        for (const auto& [mj, cj] : y.coeffs()) {
            total += ci * cj * minor_det(gi, rows, mask_indices(mj));
        }
    }
    return total;
}

Form<double> hodge(const Form<double>& x, const FrameMetric<double>& m) {
    Eigen::MatrixXd g = to_eigen(m);
    double det = g.determinant();
    if (!(det > 1e-300)) throw SingularMetric("hodge: metric not positive (det <= 0)");
    Eigen::MatrixXd gi = g.inverse();
    const double volume_scale = m.orientation * std::sqrt(det);
    const int n = x.dim();
    const int k = x.degree();
    const IndexMask full = (1u << n) - 1;

    // w_{J^c} = sgn(J, J^c) * volume_scale * sum_I x_I det(g^{-1}[J, I])
    Form<double> out(n, n - k);
    for (IndexMask J = 0; J <= full; ++J) {
        if (mask_degree(J) != k) continue;
        double raised = 0.0;
        auto jrows = mask_indices(J);
        for (const auto& [I, xc] : x.coeffs()) raised += xc * minor_det(gi, jrows, mask_indices(I));
        if (raised == 0.0) continue;
        IndexMask comp = full & ~J;
        out.add(comp, wedge_sign(J, comp) * volume_scale * raised);
    }
    return out;
}

Form<double> pullback(const Form<double>& x, const std::vector<double>& M) {
    const int n = x.dim();
    Eigen::MatrixXd mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mat(i, j) = M[i * n + j];
    const int k = x.degree();
    const IndexMask full = (1u << n) - 1;
    Form<double> out(n, k);
    for (IndexMask target = 0; target <= full; ++target) {
        if (mask_degree(target) != k) continue;
        double value = 0.0;
        auto cols = mask_indices(target);
        for (const auto& [src, c] : x.coeffs()) value += c * minor_det(mat, mask_indices(src), cols);
        out.add(target, value);
    }
    return out;
}

} // namespace g2forge
