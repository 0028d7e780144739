#include "g2forge/g2_structure.hpp"

#include <cmath>

namespace g2forge {

namespace {

std::vector<IndexMask> masks_of_degree(int dim, int degree) {
    std::vector<IndexMask> out;
    const IndexMask full = (1u << dim) - 1;
    for (IndexMask m = 0; m <= full; ++m)
        if (mask_degree(m) == degree) out.push_back(m);
    return out;
}

Eigen::VectorXd to_vector(const Form<double>& f, const std::vector<IndexMask>& basis) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<int>(i)) = f.coeff(basis[i]);
    return v;
}

Form<double> from_vector(const Eigen::VectorXd& v, const std::vector<IndexMask>& basis, int dim,
                         int degree) {
    Form<double> f(dim, degree);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double c = v(static_cast<int>(i));
        if (c != 0.0) f.add(basis[i], c);
    }
    return f;
}

/// Matrix of a linear map Forms(deg_in) -> Forms(deg_out).
template <class F>
Eigen::MatrixXd linear_matrix(int dim, int deg_in, int deg_out, F&& map) {
    auto in = masks_of_degree(dim, deg_in);
    auto out = masks_of_degree(dim, deg_out);
    Eigen::MatrixXd M(static_cast<int>(out.size()), static_cast<int>(in.size()));
    for (std::size_t j = 0; j < in.size(); ++j) {
        Form<double> basis(dim, deg_in);
        basis.add(in[j], 1.0);
        M.col(static_cast<int>(j)) = to_vector(map(basis), out);
    }
    return M;
}

/// Orthonormal basis of the kernel of M (columns), via full-pivot LU.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& M) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-10);
    return lu.kernel();
}

} // namespace

FrameMetric<double> metric_from_phi(const Form<double>& phi) {
    if (phi.dim() != 7 || phi.degree() != 3)
        throw NonPositiveType("metric_from_phi: expected a 3-form in dimension 7");
    const IndexMask full = (1u << 7) - 1;
    Eigen::MatrixXd B(7, 7);
    std::vector<Form<double>> contraction;
    contraction.reserve(7);
    for (int i = 1; i <= 7; ++i) contraction.push_back(interior(i, phi));
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
            double c = wedge(wedge(contraction[i], contraction[j]), phi).coeff(full) / 6.0;
            B(i, j) = c;
            B(j, i) = c;
        }
    double det = B.determinant();
    if (std::abs(det) < 1e-300) throw NonPositiveType("metric_from_phi: degenerate form");
    double root = std::copysign(std::pow(std::abs(det), 1.0 / 9.0), det);
    Eigen::MatrixXd G = B / root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (es.eigenvalues().minCoeff() <= 0)
        throw NonPositiveType("metric_from_phi: induced bilinear form is not positive-definite");

    FrameMetric<double> g;
    g.dim = 7;
    g.orientation = det > 0 ? 1 : -1;
    g.g.resize(49);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) g.at(i, j) = G(i, j);
    return g;
}

G2Structure make_g2(LieAlgebra algebra, Form<double> phi) {
    G2Structure gs;
    gs.algebra = std::move(algebra);
    gs.phi = std::move(phi);
    gs.g = metric_from_phi(gs.phi);
    gs.star_phi = hodge(gs.phi, gs.g);
    return gs;
}

G2Structure build_phi(const SU3Structure& s, const LieAlgebra& extension, int e7) {
    Form<double> e7form = Form<double>::monomial(extension.dim(), {e7});
    Form<double> phi = wedge(s.omega.extended(extension.dim()), e7form) +
                       s.psi_plus.extended(extension.dim());
    return make_g2(extension, std::move(phi));
}

SU3Structure su3_from_g2(const G2Structure& gs, int e7) {
    Form<double> omega7 = interior(e7, gs.phi);
    Form<double> e7form = Form<double>::monomial(gs.algebra.dim(), {e7});
    Form<double> psi7 = gs.phi - wedge(omega7, e7form);
    if (e7 != gs.algebra.dim())
        throw SchemaError("su3_from_g2: the transverse direction must be the last frame index");
    return make_su3(gs.algebra.restricted(6), omega7.restricted(6), psi7.restricted(6));
}

TorsionComponents torsion(const G2Structure& gs, double tol) {
    const auto& alg = gs.algebra;
    const auto& phi = gs.phi;
    const auto& star = gs.star_phi;
    const auto& g = gs.g;

    Form<double> dphi = ce_d(alg, phi);
    Form<double> dstar = ce_d(alg, star);
    const double scale = std::max(1.0, dphi.norm() + dstar.norm());

    auto b1 = masks_of_degree(7, 1);
    auto b2 = masks_of_degree(7, 2);
    auto b3 = masks_of_degree(7, 3);
    auto b4 = masks_of_degree(7, 4);
    auto b5 = masks_of_degree(7, 5);

    // Lambda^3_27 = ker(beta -> (beta ^ phi, beta ^ *phi)); dim 27.
    Eigen::MatrixXd wphi3 = linear_matrix(7, 3, 6, [&](const Form<double>& b) { return wedge(b, phi); });
    Eigen::MatrixXd wstar3 = linear_matrix(7, 3, 7, [&](const Form<double>& b) { return wedge(b, star); });
    Eigen::MatrixXd c3(wphi3.rows() + wstar3.rows(), 35);
    c3 << wphi3, wstar3;
    Eigen::MatrixXd basis27 = kernel_basis(c3);  // 35 x 27

    // Lambda^2_14 = ker(alpha -> alpha ^ *phi); dim 14.
    Eigen::MatrixXd wstar2 = linear_matrix(7, 2, 6, [&](const Form<double>& b) { return wedge(b, star); });
    Eigen::MatrixXd basis14 = kernel_basis(wstar2);  // 21 x 14

    if (basis27.cols() != 27 || basis14.cols() != 14)
        throw InconsistentTau1("torsion: unexpected type-decomposition dimensions (not a G2 structure?)");

    // System 1 over (tau0, tau1 [7], tau3 [27]): tau0 *phi + t ^ phi + *tau3 = dphi.
    Eigen::MatrixXd wphi1 = linear_matrix(7, 1, 4, [&](const Form<double>& b) { return wedge(b, phi); });
    Eigen::MatrixXd hodge3 = linear_matrix(7, 3, 4, [&](const Form<double>& b) { return hodge(b, g); });
    Eigen::MatrixXd A1(35, 35);
    A1.col(0) = to_vector(star, b4);
    A1.block(0, 1, 35, 7) = wphi1;
    A1.block(0, 8, 35, 27) = hodge3 * basis27;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr1(A1);
    qr1.setThreshold(1e-10);
    TorsionComponents tc;
    tc.rank_system1 = static_cast<int>(qr1.rank());
    Eigen::VectorXd rhs1 = to_vector(dphi, b4);
    Eigen::VectorXd x1 = qr1.solve(rhs1);

    tc.tau0 = x1(0);
    Eigen::VectorXd tau1_a = x1.segment(1, 7);
    tc.tau3 = from_vector(basis27 * x1.segment(8, 27), b3, 7, 3);

    // System 2 over (tau1 [7], tau2 [14]): (4/3) tau1 ^ *phi + tau2 ^ phi = dstar.
    // Both systems solve for tau1 in the same (Lee-form) normalization.
    Eigen::MatrixXd wstar1 = linear_matrix(7, 1, 5, [&](const Form<double>& b) { return wedge(b, star); });
    Eigen::MatrixXd wphi2 = linear_matrix(7, 2, 5, [&](const Form<double>& b) { return wedge(b, phi); });
    Eigen::MatrixXd A2(21, 21);
    A2.block(0, 0, 21, 7) = (4.0 / 3.0) * wstar1;
    A2.block(0, 7, 21, 14) = wphi2 * basis14;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr2(A2);
    qr2.setThreshold(1e-10);
    tc.rank_system2 = static_cast<int>(qr2.rank());
    Eigen::VectorXd rhs2 = to_vector(dstar, b5);
    Eigen::VectorXd x2 = qr2.solve(rhs2);
    Eigen::VectorXd tau1_b = x2.segment(0, 7);
    tc.tau2 = from_vector(basis14 * x2.segment(7, 14), b2, 7, 2);

    tc.tau1_mismatch = (tau1_a - tau1_b).norm() / scale;
    if (tc.tau1_mismatch > tol)
        throw InconsistentTau1("torsion: tau1 estimates from dphi and d*phi disagree by " +
                               std::to_string(tc.tau1_mismatch));

    tc.tau1 = from_vector(0.5 * (tau1_a + tau1_b), b1, 7, 1);

    tc.residual_dphi = (reconstruct_dphi(gs, tc) - dphi).norm() / scale;
    tc.residual_dstar = (reconstruct_dstar_phi(gs, tc) - dstar).norm() / scale;
    return tc;
}

Form<double> reconstruct_dphi(const G2Structure& gs, const TorsionComponents& tc) {
    Form<double> out = tc.tau0 * gs.star_phi;
    out += wedge(tc.tau1, gs.phi);
    out += hodge(tc.tau3, gs.g);
    return out;
}

Form<double> reconstruct_dstar_phi(const G2Structure& gs, const TorsionComponents& tc) {
    Form<double> out = wedge((4.0 / 3.0) * tc.tau1, gs.star_phi);
    out += wedge(tc.tau2, gs.phi);
    return out;
}

std::string FernandezGrayClass::label() const {
    std::string s;
    auto append = [&s](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += "+";
        s += name;
    };
    append(t0, "T0");
    append(t1, "T1");
    append(t2, "T2");
    append(t3, "T3");
    return s.empty() ? "parallel" : s;
}

FernandezGrayClass fg_class(const TorsionComponents& tc, double scale, double eps_class) {
    const double cut = eps_class * std::max(scale, 1e-300);
    FernandezGrayClass c;
    c.t0 = std::abs(tc.tau0) > cut;
    c.t1 = tc.tau1.norm() > cut;
    c.t2 = tc.tau2.norm() > cut;
    c.t3 = tc.tau3.norm() > cut;
    return c;
}

Form<double> skew_torsion(const G2Structure& gs, const TorsionComponents& tc, double tol) {
    double scale = std::max(1.0, gs.phi.norm());
    if (tc.tau2.norm() > tol * scale)
        throw Tau2NonZero("skew_torsion: tau2 != 0, no connection with skew torsion exists");
    Form<double> dphi = ce_d(gs.algebra, gs.phi);
    Form<double> out = (7.0 / 6.0 * tc.tau0) * gs.phi;
    out -= hodge(dphi, gs.g);
    out += hodge(wedge((4.0 / 3.0) * tc.tau1, gs.phi), gs.g);
    return out;
}

ConformalParallelReport conformal_parallel_check(const LieAlgebra& algebra, const FormQ& phi,
                                                 const Rat& m, int t_index) {
    ConformalParallelReport rep;
    if (!algebra.d1(t_index).is_zero())
        throw UnresolvableStructureFunctions("conformal_parallel_check: e^{t} direction not closed");

    // Orientation of the phi-induced metric, needed for the exact *phi.
    FrameMetric<double> g = metric_from_phi(phi.cast<double>());
    FormQ star_phi = hodge_orthonormal(phi, g.orientation);

    // f = -m t: e^{3f} phi and e^{4f} *phi as ScalarExpr forms.
    QSqrt6 mval{m};
    auto scaled_form = [&](const FormQ& f, int k) {
        FormS out(f.dim(), f.degree());
        for (const auto& [mask, c] : f.coeffs())
            out.add(mask, ScalarExpr::exponential(c, QSqrt6(Rat(-k)) * mval));
        return out;
    };
    FormS phi_t = scaled_form(phi, 3);
    FormS star_t = scaled_form(star_phi, 4);

    FormS dphi = time_dependent_d(algebra, phi_t, t_index);
    FormS dstar = time_dependent_d(algebra, star_t, t_index);
    rep.dphi_zero = dphi.is_zero();
    rep.dstar_zero = dstar.is_zero();
    rep.residual_terms_dphi = dphi.term_count();
    rep.residual_terms_dstar = dstar.term_count();
    if (!rep.dphi_zero) rep.residual_dphi = dphi.str();
    if (!rep.dstar_zero) rep.residual_dstar = dstar.str();
    rep.pass = rep.dphi_zero && rep.dstar_zero;
    return rep;
}

} // namespace g2forge
