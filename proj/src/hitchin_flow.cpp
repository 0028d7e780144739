#include "g2forge/hitchin_flow.hpp"

#include <cmath>

namespace g2forge {

namespace {

std::vector<IndexMask> degree_masks(int dim, int degree) {
    std::vector<IndexMask> out;
    const IndexMask full = (1u << dim) - 1;
    for (IndexMask m = 0; m <= full; ++m)
        if (mask_degree(m) == degree) out.push_back(m);
    return out;
}

Eigen::VectorXd pack(const Form<double>& f, const std::vector<IndexMask>& basis) {
    Eigen::VectorXd v(static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<int>(i)) = f.coeff(basis[i]);
    return v;
}

Form<double> unpack(const Eigen::VectorXd& v, const std::vector<IndexMask>& basis, int dim, int deg) {
    Form<double> f(dim, deg);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        double c = v(static_cast<int>(i));
        if (c != 0.0) f.add(basis[i], c);
    }
    return f;
}

const std::vector<IndexMask>& basis2() {
    static const auto b = degree_masks(6, 2);
    return b;
}
const std::vector<IndexMask>& basis3() {
    static const auto b = degree_masks(6, 3);
    return b;
}
const std::vector<IndexMask>& basis4() {
    static const auto b = degree_masks(6, 4);
    return b;
}

double volume_ratio(const Form<double>& rho, const Form<double>& psi_minus, const Form<double>& omega) {
    const IndexMask top = (1u << 6) - 1;
    double num = wedge(rho, psi_minus).coeff(top);
    double den = wedge(wedge(omega, omega), omega).coeff(top);
    return den != 0.0 ? num / den : 0.0;
}

} // namespace

Form<double> omega_from_sigma(const Form<double>& sigma, const Form<double>& guess) {
    const auto& b2 = basis2();
    const auto& b4 = basis4();
    Eigen::VectorXd x = pack(guess, b2);
    const Eigen::VectorXd target = pack(sigma, b4);

    double sigma_scale = std::max(1.0, target.norm());
    for (int iter = 0; iter < 50; ++iter) {
        Form<double> omega = unpack(x, b2, 6, 2);
        Eigen::VectorXd residual = pack(wedge(omega, omega), b4) * 0.5 - target;
        if (residual.norm() <= 1e-13 * sigma_scale) return omega;
        // F'(omega) delta = omega ^ delta
        Eigen::MatrixXd Jm(15, 15);
        for (std::size_t j = 0; j < b2.size(); ++j) {
            Form<double> basis(6, 2);
            basis.add(b2[j], 1.0);
            Jm.col(static_cast<int>(j)) = pack(wedge(omega, basis), b4);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Jm);
        if (qr.rank() < 15) throw NewtonDiverged("omega_from_sigma: degenerate Jacobian (omega singular)");
        Eigen::VectorXd step = qr.solve(residual);
        x -= step;
        if (!x.allFinite()) throw NewtonDiverged("omega_from_sigma: iteration diverged");
    }
    throw NewtonDiverged("omega_from_sigma: no convergence in 50 iterations");
}

FlowRhs flow_rhs(const FlowState& state, const LieAlgebra& algebra) {
    FlowRhs rhs;
    rhs.omega = omega_from_sigma(state.sigma, state.omega_guess);
    rhs.drho_dt = ce_d(algebra, rhs.omega);
    auto hit = hitchin_j(state.rho, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
    Form<double> psi_minus = apply_linear(hit.J, state.rho);
    rhs.dsigma_dt = -ce_d(algebra, psi_minus);
    return rhs;
}

std::string to_string(FlowStop s) {
    switch (s) {
        case FlowStop::Completed: return "completed";
        case FlowStop::SingularTime: return "singular-time";
        case FlowStop::BlowUp: return "blow-up";
        case FlowStop::UnstableForm: return "unstable-form";
        case FlowStop::NewtonFailed: return "newton-failed";
    }
    return "unknown";
}

FlowSolution integrate(const FlowState& initial, const LieAlgebra& algebra, double t_end,
                       double h_step, double m) {
    const auto& b3 = basis3();
    const auto& b4 = basis4();

    FlowSolution sol;
    sol.m = m;
    sol.states.push_back(initial);

    Form<double> omega0 = omega_from_sigma(initial.sigma, initial.omega_guess);
    sol.omegas.push_back(omega0);

    auto initial_hit = hitchin_j(initial.rho, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
    double ratio0 = volume_ratio(initial.rho, apply_linear(initial_hit.J, initial.rho), omega0);
    sol.monitors.worst_lambda = initial_hit.lambda;

    FlowState state = initial;
    state.omega_guess = omega0;

    auto pack_state = [&](const FlowState& s) {
        Eigen::VectorXd y(35);
        y.head(20) = pack(s.rho, b3);
        y.tail(15) = pack(s.sigma, b4);
        return y;
    };
    auto unpack_state = [&](const Eigen::VectorXd& y, double t, const Form<double>& guess) {
        FlowState s;
        s.t = t;
        s.rho = unpack(y.head(20), b3, 6, 3);
        s.sigma = unpack(y.tail(15), b4, 6, 4);
        s.omega_guess = guess;
        return s;
    };

    const double h = h_step;
    while (state.t < t_end - 1e-12) {
        double step = std::min(h, t_end - state.t);
        if (m > 0 && 1.0 - m * (state.t + step) <= 1e-3) {
            sol.stop = FlowStop::SingularTime;
            return sol;
        }
        Eigen::VectorXd y = pack_state(state);
        Form<double> guess = state.omega_guess;
        try {
            auto eval = [&](const Eigen::VectorXd& yy) {
                FlowState s = unpack_state(yy, state.t, guess);
                FlowRhs rhs = flow_rhs(s, algebra);
                guess = rhs.omega;
                Eigen::VectorXd dy(35);
                dy.head(20) = pack(rhs.drho_dt, b3);
                dy.tail(15) = pack(rhs.dsigma_dt, b4);
                return dy;
            };
            Eigen::VectorXd k1 = eval(y);
            Eigen::VectorXd k2 = eval(y + 0.5 * step * k1);
            Eigen::VectorXd k3 = eval(y + 0.5 * step * k2);
            Eigen::VectorXd k4 = eval(y + step * k3);
            Eigen::VectorXd ynext = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

            if (ynext.lpNorm<Eigen::Infinity>() > 1e12) {
                sol.stop = FlowStop::BlowUp;
                return sol;
            }
            state = unpack_state(ynext, state.t + step, guess);
        } catch (const UnstableForm&) {
            sol.stop = FlowStop::UnstableForm;
            return sol;
        } catch (const NewtonDiverged&) {
            sol.stop = FlowStop::NewtonFailed;
            return sol;
        }

        // monitors on the accepted state
        try {
            Form<double> omega = omega_from_sigma(state.sigma, state.omega_guess);
            state.omega_guess = omega;
            auto hit = hitchin_j(state.rho, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
            sol.monitors.worst_lambda = std::max(sol.monitors.worst_lambda, hit.lambda);
            double ratio = volume_ratio(state.rho, apply_linear(hit.J, state.rho), omega);
            sol.monitors.max_ratio_drift =
                std::max(sol.monitors.max_ratio_drift, std::abs(ratio - ratio0));
            sol.monitors.max_drho = std::max(sol.monitors.max_drho, ce_d(algebra, state.rho).norm());
            sol.monitors.max_dsigma =
                std::max(sol.monitors.max_dsigma, ce_d(algebra, state.sigma).norm());
            double res = (0.5 * pack(wedge(omega, omega), b4) - pack(state.sigma, b4)).norm();
            sol.monitors.max_newton_residual = std::max(sol.monitors.max_newton_residual, res);
            sol.states.push_back(state);
            sol.omegas.push_back(omega);
        } catch (const UnstableForm&) {
            sol.stop = FlowStop::UnstableForm;
            return sol;
        } catch (const NewtonDiverged&) {
            sol.stop = FlowStop::NewtonFailed;
            return sol;
        }
    }
    sol.stop = FlowStop::Completed;
    return sol;
}

std::vector<SampledMetric> induced_g2_metric(const FlowSolution& solution, const LieAlgebra&) {
    std::vector<SampledMetric> out;
    out.reserve(solution.states.size());
    for (std::size_t i = 0; i < solution.states.size(); ++i) {
        const auto& s = solution.states[i];
        const auto& omega = solution.omegas[i];
        auto hit = hitchin_j(s.rho, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
        FrameMetric<double> h = metric_from(omega, hit.J);
        SampledMetric sm;
        sm.t = s.t;
        sm.h.resize(6, 6);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) sm.h(a, b) = h.at(a, b);
        sm.g7 = Eigen::MatrixXd::Identity(7, 7);
        sm.g7.topLeftCorner(6, 6) = sm.h;
        out.push_back(std::move(sm));
    }
    return out;
}

double tracked_value(const TrackedCoefficient& what, const FlowState& state,
                     const Form<double>& omega, const LieAlgebra&) {
    switch (what.source) {
        case TrackedCoefficient::Source::Rho: return state.rho.coeff(what.mask);
        case TrackedCoefficient::Source::Sigma: return state.sigma.coeff(what.mask);
        case TrackedCoefficient::Source::Omega: return omega.coeff(what.mask);
        case TrackedCoefficient::Source::Metric: {
            auto hit = hitchin_j(state.rho, Form<double>::monomial(6, {1, 2, 3, 4, 5, 6}));
            FrameMetric<double> h = metric_from(omega, hit.J);
            return h.at(what.row - 1, what.col - 1);
        }
    }
    return 0.0;
}

ComparisonResult compare_closed_form(const FlowSolution& solution, const LieAlgebra& algebra,
                                     const std::vector<TrackedCoefficient>& tracked) {
    ComparisonResult out;
    for (const auto& tc : tracked)
        if (tc.has_expected) out.max_deviation[tc.name] = 0.0;
    for (std::size_t i = 0; i < solution.states.size(); ++i) {
        const auto& s = solution.states[i];
        for (const auto& tc : tracked) {
            if (!tc.has_expected) continue;
            double v = tracked_value(tc, s, solution.omegas[i], algebra);
            double dev = std::abs(v - tc.expected.eval(s.t));
            auto& slot = out.max_deviation[tc.name];
            slot = std::max(slot, dev);
            out.overall = std::max(out.overall, dev);
        }
    }
    return out;
}

double exactness_drift(const FlowSolution& solution, const LieAlgebra& algebra) {
    const auto& b2 = basis2();
    const auto& b3 = basis3();
    const auto& b4 = basis4();

    // d: Lambda^2 -> Lambda^3 and Lambda^3 -> Lambda^4 as matrices
    Eigen::MatrixXd d2(20, 15), d3(15, 20);
    for (std::size_t j = 0; j < b2.size(); ++j) {
        Form<double> b(6, 2);
        b.add(b2[j], 1.0);
        d2.col(static_cast<int>(j)) = pack(ce_d(algebra, b), b3);
    }
    for (std::size_t j = 0; j < b3.size(); ++j) {
        Form<double> b(6, 3);
        b.add(b3[j], 1.0);
        d3.col(static_cast<int>(j)) = pack(ce_d(algebra, b), b4);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr2(d2), qr3(d3);

    double worst = 0.0;
    const auto& first = solution.states.front();
    for (const auto& s : solution.states) {
        Eigen::VectorXd diff_rho = pack(s.rho - first.rho, b3);
        Eigen::VectorXd diff_sigma = pack(s.sigma - first.sigma, b4);
        if (diff_rho.norm() > 0) {
            Eigen::VectorXd alpha = qr2.solve(diff_rho);
            worst = std::max(worst, (d2 * alpha - diff_rho).norm() / std::max(1.0, diff_rho.norm()));
        }
        if (diff_sigma.norm() > 0) {
            Eigen::VectorXd beta = qr3.solve(diff_sigma);
            worst = std::max(worst, (d3 * beta - diff_sigma).norm() / std::max(1.0, diff_sigma.norm()));
        }
    }
    return worst;
}

} // namespace g2forge
