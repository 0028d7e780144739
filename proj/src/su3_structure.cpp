#include "g2forge/su3_structure.hpp"

#include <cmath>

namespace g2forge {

Form<double> apply_linear(const Eigen::MatrixXd& M, const Form<double>& x) {
    const int n = x.dim();
    std::vector<double> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat[i * n + j] = M(i, j);
    return pullback(x, flat);
}

HitchinResult hitchin_j(const Form<double>& rho, const Form<double>& vol) {
    const int n = rho.dim();
    if (n != 6 || rho.degree() != 3) throw UnstableForm("hitchin_j: expected a 3-form in dimension 6");
    if (vol.degree() != 6 || vol.is_zero()) throw UnstableForm("hitchin_j: degenerate volume form");
    const double v = vol.coeff(mask_from({1, 2, 3, 4, 5, 6}));

    // K_{ji}: (i_{e_i} rho) ^ rho = 2 sum_j K_{ji} i_{e_j} vol,
    // and i_{e_j} vol = v (-1)^{j-1} e^{complement of j}.
    Eigen::MatrixXd K(6, 6);
    const IndexMask full = mask_from({1, 2, 3, 4, 5, 6});
    for (int i = 1; i <= 6; ++i) {
        Form<double> five = wedge(interior(i, rho), rho);
        for (int j = 1; j <= 6; ++j) {
            double coeff = five.coeff(full & ~(1u << (j - 1)));
            double sign = (j % 2 == 1) ? 1.0 : -1.0;
            K(j - 1, i - 1) = coeff / (2.0 * v * sign);
        }
    }

    HitchinResult out;
    out.lambda = (K * K).trace() / 6.0;
    double scale = rho.norm();
    if (!(out.lambda < -1e-10 * std::pow(scale, 4)))
        throw UnstableForm("hitchin_j: form is not of positive type (lambda = " +
                           std::to_string(out.lambda) + ")");
    out.J = K / std::sqrt(-out.lambda);
    return out;
}

FrameMetric<double> metric_from(const Form<double>& omega, const Eigen::MatrixXd& J) {
    const int n = omega.dim();
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [m, c] : omega.coeffs()) {
        auto idx = mask_indices(m);
        W(idx[0] - 1, idx[1] - 1) = c;
        W(idx[1] - 1, idx[0] - 1) = -c;
    }
    Eigen::MatrixXd H = W * J;  // h(e_i, e_j) = omega(e_i, J e_j)
    double scale = std::max(1.0, H.norm());
    if ((H - H.transpose()).norm() > 1e-9 * scale)
        throw NonSymmetric("metric_from: omega is not compatible with J");
    H = 0.5 * (H + H.transpose());

    FrameMetric<double> g;
    g.dim = n;
    g.g.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = H(i, j);

    if (n == 6) {
        Form<double> omega3 = wedge(wedge(omega, omega), omega);
        double top = omega3.coeff(mask_from({1, 2, 3, 4, 5, 6}));
        g.orientation = (top >= 0) ? 1 : -1;
    }
    return g;
}

SU3Structure make_su3(LieAlgebra algebra, Form<double> omega, Form<double> psi_plus) {
    SU3Structure s;
    s.algebra = std::move(algebra);
    s.omega = std::move(omega);
    s.psi_plus = std::move(psi_plus);
    auto hit = hitchin_j(s.psi_plus, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
    s.J = hit.J;
    s.lambda = hit.lambda;
    s.psi_minus = apply_linear(s.J, s.psi_plus);
    s.h = metric_from(s.omega, s.J);
    return s;
}

SU3Checks su3_checks(const SU3Structure& s, double tol) {
    SU3Checks out;
    out.stable = s.lambda < 0;

    Form<double> po = wedge(s.psi_plus, s.omega);
    Form<double> mo = wedge(s.psi_minus, s.omega);
    double scale = std::max(1.0, s.psi_plus.norm() * s.omega.norm());
    out.compat_residual = std::max(po.norm(), mo.norm()) / scale;
    out.compatible = out.compat_residual <= tol;

    Form<double> omega3 = wedge(wedge(s.omega, s.omega), s.omega);
    Form<double> pp = wedge(s.psi_plus, s.psi_minus);
    double o3 = omega3.coeff(mask_from({1, 2, 3, 4, 5, 6}));
    double ppv = pp.coeff(mask_from({1, 2, 3, 4, 5, 6}));
    if (o3 != 0.0) {
        out.volume_ratio = ppv / o3;
        out.norm_residual = std::abs(out.volume_ratio - kSU3VolumeRatio);
        out.normalized = out.norm_residual <= 1e3 * tol;
    }

    Eigen::Map<const Eigen::MatrixXd> h(s.h.g.data(), s.h.dim, s.h.dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    out.positive = es.eigenvalues().minCoeff() > 0;
    return out;
}

SU3ClassReport class_predicates(const SU3Structure& s, double tol) {
    SU3ClassReport out;
    const auto& alg = s.algebra;
    double scale = std::max(1.0, s.omega.norm() + s.psi_plus.norm());

    out.d_omega = ce_d(alg, s.omega).norm() / scale;
    out.d_psi_plus = ce_d(alg, s.psi_plus).norm() / scale;
    out.d_psi_minus = ce_d(alg, s.psi_minus).norm() / scale;
    out.d_omega2 = ce_d(alg, wedge(s.omega, s.omega)).norm() / scale;

    out.symplectic = out.d_omega <= tol;
    out.half_flat = out.d_psi_plus <= tol && out.d_omega2 <= tol;
    out.torsion_free = out.symplectic && out.d_psi_plus <= tol && out.d_psi_minus <= tol;

    // Nijenhuis tensor N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on basis pairs.
    const int n = alg.dim();
    double nmax = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            Eigen::VectorXd N = Eigen::VectorXd::Zero(n);
            auto add_bracket = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y, double w,
                                   bool post_j) {
                Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
                for (int a = 1; a <= n; ++a)
                    for (int b = 1; b <= n; ++b) {
                        double c = x(a - 1) * y(b - 1);
                        if (c == 0.0) continue;
                        auto v = alg.bracket(a, b);
                        for (int k = 0; k < n; ++k) acc(k) += c * v[k].to_double();
                    }
                if (post_j) acc = s.J * acc;
                N += w * acc;
            };
            Eigen::VectorXd ei = Eigen::VectorXd::Zero(n), ej = Eigen::VectorXd::Zero(n);
            ei(i - 1) = 1;
            ej(j - 1) = 1;
            Eigen::VectorXd Ji = s.J * ei, Jj = s.J * ej;
            add_bracket(Ji, Jj, 1.0, false);
            add_bracket(Ji, ej, -1.0, true);
            add_bracket(ei, Jj, -1.0, true);
            add_bracket(ei, ej, -1.0, false);
            nmax = std::max(nmax, N.lpNorm<Eigen::Infinity>());
        }
    }
    out.nijenhuis = nmax;
    out.complex_structure = nmax <= tol;
    return out;
}

} // namespace g2forge
