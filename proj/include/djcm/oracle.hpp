#pragma once

#include <functional>
#include <vector>

#include "djcm/djcm_evolution.hpp"
#include "djcm/jcm_propagator.hpp"
#include "djcm/linalg.hpp"

// Brute-force references for the closed-form propagators: direct
// Runge-Kutta integration of the dressed-basis master equation, and
// quadrature of the reservoir correlation function for the decay rates.

namespace djcm::oracle {

struct IntegratorConfig {
    double step = 1e-3;
    double t_end = 1.0;
    int record_every = 1;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    JcmParams params_a;
    JcmParams params_b;
};

/// Largest step that resolves the fastest of 1/lambda, 1/Omega, 1/gamma0.
double max_step(const JcmParams& p);

/// Throws PreconditionError if the config is malformed or the step is too
/// coarse for any of `params`.
void check_config(const IntegratorConfig& cfg, std::initializer_list<JcmParams> params);

/// Right-hand side of the single-partition master equation at time t.
ComplexMatrix single_generator(const JcmParams& p, double t, const ComplexMatrix& r);

/// Right-hand side for two uncoupled partitions, L_A (x) id + id (x) L_B.
ComplexMatrix pair_generator(const JcmParams& pA, const JcmParams& pB, double t,
                             const ComplexMatrix& r);

/// Classic fixed-step RK4. The step actually used is t_end / n for the
/// smallest n with t_end / n <= cfg.step. Throws ConsistencyError if the
/// trace drifts by more than 1e-8.
Trajectory integrate_single(const DressedState3& r0, const JcmParams& p, const IntegratorConfig& cfg);
Trajectory integrate_pair(const DjcmState& r0, const JcmParams& pA, const JcmParams& pB,
                          const IntegratorConfig& cfg);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// The interval is pre-split into `panels` equal pieces.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int panels = 1);

/// Second-order decay rate at transition frequency `omega`, from the
/// Lorentzian spectral density centred on omega0 - Omega:
///   gamma(omega, t) = 2 Re int_0^t e^{i (omega - omega1) tau} (gamma0 lambda / 2) e^{-lambda tau} dtau
double rate_from_spectral_density(const JcmParams& p, double omega, double t);

/// Lorentzian spectral density J(omega) centred on omega1.
double spectral_density(const JcmParams& p, double omega1, double omega);

}  // namespace djcm::oracle
