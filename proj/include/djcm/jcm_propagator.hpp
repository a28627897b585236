#pragma once

#include "djcm/linalg.hpp"

namespace djcm {

/// One atom-cavity-reservoir partition. Rates and frequencies share a unit;
/// the CLI works in units of gamma0.
struct JcmParams {
    double omega0 = 0.0;  // atomic Bohr frequency
    double Omega = 1.0;   // atom-cavity coupling
    double gamma0 = 1.0;  // reservoir coupling strength, 1/tau_S
    double lambda = 5.0;  // reservoir spectral width, 1/tau_R

    /// Throws PreconditionError unless gamma0 > 0, lambda > 0, Omega >= 0, omega0 >= 0.
    void validate() const;

    /// lambda < 2 gamma0: reservoir memory outlasts the relaxation time.
    bool is_non_markovian() const noexcept { return lambda < 2.0 * gamma0; }

    bool operator==(const JcmParams&) const = default;
};

/// Propagator coefficients A_ij^mn of one partition at time t, in the dressed
/// basis {|E1+>, |E1->, |E0>} (indices 1, 2, 3).
struct PropagatorCoeffs {
    double t = 0.0;
    Complex a11 = 1.0;     // population of |E1+>
    Complex a12 = 1.0;     // |E1+><E1-| coherence
    Complex a13 = 1.0;     // |E1+><E0| coherence
    Complex a22 = 1.0;     // population of |E1->
    Complex a23 = 1.0;     // |E1-><E0| coherence
    Complex a33_11 = 0.0;  // feeding |E1+> -> |E0>
    Complex a33_22 = 0.0;  // feeding |E1-> -> |E0>
    Complex a33_33 = 1.0;

    Complex a21() const { return std::conj(a12); }
    Complex a31() const { return std::conj(a13); }
    Complex a32() const { return std::conj(a23); }

    /// Coherence/population factor for element (i, j), 0-based in {0,1,2}.
    /// For (2,2) this is a33_33; the feeding terms are separate.
    Complex factor(int i, int j) const;
};

/// gamma(omega0 - Omega, t) = gamma0 (1 - e^{-lambda t}).
double decay_rate_minus(const JcmParams& p, double t);

/// gamma(omega0 + Omega, t). Transiently negative values are returned as-is.
double decay_rate_plus(const JcmParams& p, double t);

/// Integral of decay_rate_minus over [0, t].
double accumulated_I_minus(const JcmParams& p, double t);

/// Integral of decay_rate_plus over [0, t].
double accumulated_I_plus(const JcmParams& p, double t);

PropagatorCoeffs coefficients(const JcmParams& p, double t);

/// 3x3 density matrix of one partition in the dressed basis.
class DressedState3 {
public:
    /// Checks dimension 3, Hermiticity and unit trace to 1e-10.
    explicit DressedState3(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }

    static DressedState3 projector(int index);

private:
    ComplexMatrix m_;
};

DressedState3 propagate_single(const DressedState3& r0, const JcmParams& p, double t);

/// Smallest I_+ over a uniform grid of `samples` points on [0, t_max]. I_+ is
/// not guaranteed monotone when decay_rate_plus dips below zero.
double min_I_plus(const JcmParams& p, double t_max, int samples);

}  // namespace djcm
