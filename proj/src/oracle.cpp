#include "djcm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "djcm/basis.hpp"

namespace djcm::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix ket_bra(std::size_t dim, std::size_t row, std::size_t col) {
    ComplexMatrix m(dim);
    m(row, col) = 1.0;
    return m;
}

// One decay channel: L = |E0><E1x|, rate gamma(t).
struct Channel {
    ComplexMatrix jump;
    ComplexMatrix jump_dag;
    ComplexMatrix number;  // L^dagger L
    double (*rate)(const JcmParams&, double);
    JcmParams params;
};

// Master-equation terms for one or more partitions, built once per run.
class Liouvillian {
public:
    Liouvillian(ComplexMatrix hamiltonian, std::vector<Channel> channels)
        : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)) {}

    ComplexMatrix operator()(double t, const ComplexMatrix& r) const {
        ComplexMatrix out = (-kI) * (hamiltonian_ * r - r * hamiltonian_);
        for (const auto& ch : channels_) {
            const double g = ch.rate(ch.params, t);
            if (g == 0.0) continue;
            out += (0.5 * g) * (ch.jump * r * ch.jump_dag);
            out -= (0.25 * g) * (ch.number * r + r * ch.number);
        }
        return out;
    }

private:
    ComplexMatrix hamiltonian_;
    std::vector<Channel> channels_;
};

ComplexMatrix single_hamiltonian(const JcmParams& p) {
    return ComplexMatrix::diagonal(
        {0.5 * p.omega0 + p.Omega, 0.5 * p.omega0 - p.Omega, -0.5 * p.omega0});
}

std::vector<Channel> single_channels(const JcmParams& p, const ComplexMatrix& left,
                                     const ComplexMatrix& right) {
    std::vector<Channel> out;
    const auto add = [&](std::size_t level, double (*rate)(const JcmParams&, double)) {
        const auto jump = kron(left, kron(ket_bra(3, basis::kEGround, level), right));
        const auto number = kron(left, kron(ket_bra(3, level, level), right));
        out.push_back({jump, jump.adjoint(), number, rate, p});
    };
    add(basis::kEPlus, &decay_rate_plus);
    add(basis::kEMinus, &decay_rate_minus);
    return out;
}

Liouvillian single_liouvillian(const JcmParams& p) {
    const auto one = ComplexMatrix::identity(1);
    return Liouvillian(single_hamiltonian(p), single_channels(p, one, one));
}

Liouvillian pair_liouvillian(const JcmParams& pA, const JcmParams& pB) {
    const auto id3 = ComplexMatrix::identity(3);
    const auto one = ComplexMatrix::identity(1);
    auto channels = single_channels(pA, one, id3);
    auto channels_b = single_channels(pB, id3, one);
    channels.insert(channels.end(), channels_b.begin(), channels_b.end());
    const auto h = kron(single_hamiltonian(pA), id3) + kron(id3, single_hamiltonian(pB));
    return Liouvillian(h, std::move(channels));
}

Trajectory run_rk4(const Liouvillian& generator, ComplexMatrix state, const IntegratorConfig& cfg) {
    const auto steps = static_cast<long>(std::ceil(cfg.t_end / cfg.step * (1.0 - 1e-12)));
    const long n = std::max<long>(steps, 1);
    const double h = cfg.t_end / static_cast<double>(n);
    const Complex trace0 = state.trace();

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(state);
    for (long k = 0; k < n; ++k) {
        const double t = h * static_cast<double>(k);
        const auto k1 = generator(t, state);
        const auto k2 = generator(t + 0.5 * h, state + (0.5 * h) * k1);
        const auto k3 = generator(t + 0.5 * h, state + (0.5 * h) * k2);
        const auto k4 = generator(t + h, state + h * k3);
        state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (std::abs(state.trace() - trace0) > 1e-8) {
            std::ostringstream msg;
            msg << "RK4: trace drift above 1e-8 at t = " << t + h;
            throw ConsistencyError(msg.str());
        }
        if ((k + 1) % cfg.record_every == 0 || k + 1 == n) {
            traj.times.push_back(h * static_cast<double>(k + 1));
            traj.states.push_back(state);
        }
    }
    return traj;
}

}  // namespace

double max_step(const JcmParams& p) {
    double fastest = std::max(p.lambda, p.gamma0);
    if (p.Omega > 0.0) fastest = std::max(fastest, p.Omega);
    return 1.0 / (50.0 * fastest);
}

void check_config(const IntegratorConfig& cfg, std::initializer_list<JcmParams> params) {
    if (!(cfg.step > 0.0)) throw PreconditionError("IntegratorConfig: step must be > 0");
    if (!(cfg.t_end > 0.0)) throw PreconditionError("IntegratorConfig: t_end must be > 0");
    if (cfg.record_every < 1) throw PreconditionError("IntegratorConfig: record_every must be >= 1");
    for (const auto& p : params) {
        p.validate();
        const double bound = max_step(p);
        if (cfg.step > bound * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "IntegratorConfig: step " << cfg.step << " exceeds the resolution bound " << bound;
            throw PreconditionError(msg.str());
        }
    }
}

ComplexMatrix single_generator(const JcmParams& p, double t, const ComplexMatrix& r) {
    return single_liouvillian(p)(t, r);
}

ComplexMatrix pair_generator(const JcmParams& pA, const JcmParams& pB, double t,
                             const ComplexMatrix& r) {
    return pair_liouvillian(pA, pB)(t, r);
}

Trajectory integrate_single(const DressedState3& r0, const JcmParams& p, const IntegratorConfig& cfg) {
    check_config(cfg, {p});
    auto traj = run_rk4(single_liouvillian(p), r0.matrix(), cfg);
    traj.params_a = p;
    traj.params_b = p;
    return traj;
}

Trajectory integrate_pair(const DjcmState& r0, const JcmParams& pA, const JcmParams& pB,
                          const IntegratorConfig& cfg) {
    check_config(cfg, {pA, pB});
    auto traj = run_rk4(pair_liouvillian(pA, pB), r0.matrix(), cfg);
    traj.params_a = pA;
    traj.params_b = pB;
    return traj;
}

namespace {

constexpr int kMaxDepth = 48;

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMaxDepth || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int panels) {
    if (b == a) return 0.0;
    if (panels < 1) throw PreconditionError("adaptive_simpson: panels must be >= 1");
    const double width = (b - a) / panels;
    const double panel_tol = tol / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * width;
        const double hi = (k + 1 == panels) ? b : lo + width;
        const double flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson_step(f, lo, hi, flo, fmid, fhi, whole, panel_tol, 0);
    }
    return total;
}

double spectral_density(const JcmParams& p, double omega1, double omega) {
    const double d = omega1 - omega;
    return p.gamma0 * p.lambda * p.lambda / (2.0 * std::numbers::pi * (d * d + p.lambda * p.lambda));
}

double rate_from_spectral_density(const JcmParams& p, double omega, double t) {
    if (!(t >= 0.0)) throw PreconditionError("rate_from_spectral_density: time must be >= 0");
    if (t == 0.0) return 0.0;
    // Fourier transform of the Lorentzian over the full frequency line gives
    // the correlation function (gamma0 lambda / 2) e^{-lambda tau} e^{-i omega1 tau}.
    const double detuning = omega - (p.omega0 - p.Omega);
    const auto integrand = [&](double tau) {
        return p.gamma0 * p.lambda * std::exp(-p.lambda * tau) * std::cos(detuning * tau);
    };
    const double cycles = t * (std::abs(detuning) + p.lambda) / (2.0 * std::numbers::pi);
    const int panels = 4 + static_cast<int>(std::ceil(4.0 * cycles));
    return adaptive_simpson(integrand, 0.0, t, 1e-10, panels);
}

}  // namespace djcm::oracle
