#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "g2forge/su3_structure.hpp"

namespace g2forge {

/// State of the evolution in Hitchin's variables: rho = psi+(t) and
/// sigma = 1/2 omega(t)^2, both closed invariant forms on the 6-dimensional
/// algebra; omega_guess seeds the Newton inversion of omega -> 1/2 omega^2.
struct FlowState {
    double t = 0;
    Form<double> rho;          // 3-form
    Form<double> sigma;        // 4-form
    Form<double> omega_guess;  // 2-form
};

/// Newton iteration for the 2-form omega with 1/2 omega^2 = sigma, starting
/// from guess; residual below 1e-12 (typically at machine precision).
/// Throws NewtonDiverged after 50 iterations.
Form<double> omega_from_sigma(const Form<double>& sigma, const Form<double>& guess);

struct FlowRhs {
    Form<double> drho_dt;    // = d omega
    Form<double> dsigma_dt;  // = -d (J rho)
    Form<double> omega;      // recovered omega (next Newton seed)
};

/// Evolution equations d omega = d/dt psi+ and d(J psi+) = -d/dt (1/2 omega^2).
FlowRhs flow_rhs(const FlowState& state, const LieAlgebra& algebra);

enum class FlowStop { Completed, SingularTime, BlowUp, UnstableForm, NewtonFailed };

std::string to_string(FlowStop s);

struct FlowMonitors {
    double max_drho = 0;          // closedness drift |d rho|
    double max_dsigma = 0;        // |d sigma|
    double max_ratio_drift = 0;   // volume-ratio drift |r(t) - r(0)|
    double worst_lambda = 0;      // most positive Hitchin lambda seen (should stay < 0)
    double max_newton_residual = 0;
};

struct FlowSolution {
    std::vector<FlowState> states;      // includes the initial state
    std::vector<Form<double>> omegas;   // omega(t) per state
    FlowStop stop = FlowStop::Completed;
    FlowMonitors monitors;
    double m = 0;                       // scale parameter used for the singular-time guard

    const FlowState& back() const { return states.back(); }
};

/// Fixed-step RK4.  Stops early (with the reason recorded) at coefficient
/// blow-up (> 1e12), loss of stability, Newton failure, or when the next
/// step would cross 1 - m t <= 1e-3.
FlowSolution integrate(const FlowState& initial, const LieAlgebra& algebra, double t_end,
                       double h_step, double m = -1.0);

/// Induced metric h(t) of (omega(t), J(t)) per stored state, plus the
/// 7 x 7 block dt^2 + h(t).
struct SampledMetric {
    double t = 0;
    Eigen::MatrixXd h;   // 6 x 6
    Eigen::MatrixXd g7;  // 7 x 7
};
std::vector<SampledMetric> induced_g2_metric(const FlowSolution& solution, const LieAlgebra& algebra);

/// What to read off a state for tracking / comparison against closed forms.
struct TrackedCoefficient {
    enum class Source { Rho, Sigma, Omega, Metric } source = Source::Rho;
    std::string name;
    IndexMask mask = 0;  // for the form sources
    int row = 0, col = 0;  // for Metric
    ScalarExpr expected;   // closed-form target (may be empty when untracked)
    bool has_expected = false;
};

double tracked_value(const TrackedCoefficient& what, const FlowState& state,
                     const Form<double>& omega, const LieAlgebra& algebra);

struct ComparisonResult {
    std::map<std::string, double> max_deviation;  // per tracked name
    double overall = 0;
};

ComparisonResult compare_closed_form(const FlowSolution& solution, const LieAlgebra& algebra,
                                     const std::vector<TrackedCoefficient>& tracked);

/// Checks that rho(t) - rho(0) and sigma(t) - sigma(0) are exact in the
/// invariant complex (least-squares solve of d alpha = difference); returns
/// the worst relative residual over the trajectory.
double exactness_drift(const FlowSolution& solution, const LieAlgebra& algebra);

} // namespace g2forge
