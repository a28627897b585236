#include "djcm/jcm_propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace djcm {

namespace {

void require_time(double t, const char* who) {
    if (!(t >= 0.0)) {
        std::ostringstream msg;
        msg << who << ": time must be >= 0, got " << t;
        throw PreconditionError(msg.str());
    }
}

}  // namespace

void JcmParams::validate() const {
    std::ostringstream msg;
    if (!(gamma0 > 0.0)) msg << "gamma0 must be > 0 (got " << gamma0 << "); ";
    if (!(lambda > 0.0)) msg << "lambda must be > 0 (got " << lambda << "); ";
    if (!(Omega >= 0.0)) msg << "Omega must be >= 0 (got " << Omega << "); ";
    if (!(omega0 >= 0.0)) msg << "omega0 must be >= 0 (got " << omega0 << "); ";
    const auto text = msg.str();
    if (!text.empty()) throw PreconditionError("JcmParams: " + text.substr(0, text.size() - 2));
}

Complex PropagatorCoeffs::factor(int i, int j) const {
    static constexpr int kCount = 3;
    if (i < 0 || j < 0 || i >= kCount || j >= kCount) {
        throw PreconditionError("PropagatorCoeffs::factor: index out of range");
    }
    switch (i * kCount + j) {
        case 0: return a11;
        case 1: return a12;
        case 2: return a13;
        case 3: return a21();
        case 4: return a22;
        case 5: return a23;
        case 6: return a31();
        case 7: return a32();
        default: return a33_33;
    }
}

double decay_rate_minus(const JcmParams& p, double t) {
    require_time(t, "decay_rate_minus");
    return p.gamma0 * (1.0 - std::exp(-p.lambda * t));
}

double decay_rate_plus(const JcmParams& p, double t) {
    require_time(t, "decay_rate_plus");
    const double lam = p.lambda, w = p.Omega;
    const double prefactor = p.gamma0 * lam * lam / (4.0 * w * w + lam * lam);
    const double bracket = (2.0 * w / lam) * std::sin(2.0 * w * t) - std::cos(2.0 * w * t);
    return prefactor * (1.0 + bracket * std::exp(-lam * t));
}

double accumulated_I_minus(const JcmParams& p, double t) {
    require_time(t, "accumulated_I_minus");
    // expm1 keeps I_-(t) ~ gamma0 lambda t^2 / 2 accurate at small lambda t.
    return p.gamma0 * t + (p.gamma0 / p.lambda) * std::expm1(-p.lambda * t);
}

double accumulated_I_plus(const JcmParams& p, double t) {
    require_time(t, "accumulated_I_plus");
    const double lam = p.lambda, w = p.Omega;
    const double denom = 4.0 * w * w + lam * lam;
    const double decay = std::exp(-lam * t);
    const double c2 = std::cos(2.0 * w * t), s2 = std::sin(2.0 * w * t);
    const double bracket = t - 4.0 * w * decay * s2 / denom +
                           (lam * lam - 4.0 * w * w) * (decay * c2 - 1.0) / (lam * denom);
    return p.gamma0 * lam * lam / denom * bracket;
}

PropagatorCoeffs coefficients(const JcmParams& p, double t) {
    require_time(t, "coefficients");
    const double i_plus = accumulated_I_plus(p, t);
    const double i_minus = accumulated_I_minus(p, t);
    const auto rotation = [t](double frequency) { return std::polar(1.0, -frequency * t); };

    PropagatorCoeffs c;
    c.t = t;
    const double pop_plus = std::exp(-0.5 * i_plus);
    const double pop_minus = std::exp(-0.5 * i_minus);
    c.a11 = pop_plus;
    c.a22 = pop_minus;
    c.a12 = rotation(2.0 * p.Omega) * std::exp(-0.25 * (i_plus + i_minus));
    c.a13 = rotation(p.omega0 + p.Omega) * std::exp(-0.25 * i_plus);
    c.a23 = rotation(p.omega0 - p.Omega) * std::exp(-0.25 * i_minus);
    c.a33_11 = 1.0 - pop_plus;
    c.a33_22 = 1.0 - pop_minus;
    c.a33_33 = 1.0;
    return c;
}

DressedState3::DressedState3(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 3) throw PreconditionError("DressedState3: expected a 3x3 matrix");
    if (const double d = hermiticity_defect(m_); d > 1e-10) {
        throw PreconditionError("DressedState3: not Hermitian (defect " + std::to_string(d) + ")");
    }
    if (std::abs(m_.trace() - 1.0) > 1e-10) {
        throw PreconditionError("DressedState3: trace differs from 1");
    }
}

DressedState3 DressedState3::projector(int index) {
    if (index < 0 || index > 2) throw PreconditionError("DressedState3::projector: index out of range");
    ComplexMatrix m(3);
    m(static_cast<std::size_t>(index), static_cast<std::size_t>(index)) = 1.0;
    return DressedState3(std::move(m));
}

DressedState3 propagate_single(const DressedState3& r0, const JcmParams& p, double t) {
    p.validate();
    const auto c = coefficients(p, t);
    const auto& in = r0.matrix();
    ComplexMatrix out(3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            out(ui, uj) = c.factor(i, j) * in(ui, uj);
        }
    out(2, 2) = c.a33_11 * in(0, 0) + c.a33_22 * in(1, 1) + c.a33_33 * in(2, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        out(i, i) = out(i, i).real();
        for (std::size_t j = i + 1; j < 3; ++j) out(j, i) = std::conj(out(i, j));
    }
    if (hermiticity_defect(out) > 1e-10) {
        throw ConsistencyError("propagate_single: result is not Hermitian");
    }
    return DressedState3(std::move(out));
}

double min_I_plus(const JcmParams& p, double t_max, int samples) {
    if (samples < 2) throw PreconditionError("min_I_plus: need at least 2 samples");
    double lowest = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = t_max * k / (samples - 1);
        lowest = std::min(lowest, accumulated_I_plus(p, t));
    }
    return lowest;
}

}  // namespace djcm
