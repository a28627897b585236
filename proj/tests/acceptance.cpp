// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "djcm/entanglement.hpp"
#include "djcm/oracle.hpp"
#include "djcm/scenario.hpp"

using namespace djcm;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

JcmParams params(double Omega, double lambda, double omega0 = 0.0) { return JcmParams{omega0, Omega, 1.0, lambda}; }

double series_max(const ConcurrenceTrajectory& traj, ReductionTarget t) {
    const auto s = traj.series(t);
    return *std::max_element(s.begin(), s.end());
}

double first_time_below(const ConcurrenceTrajectory& traj, ReductionTarget t, double level) {
    for (const auto& rec : traj.records)
        if (rec.values.at(t) < level) return rec.t;
    return INFINITY;
}

ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
    auto rho = g * g.adjoint();
    return (1.0 / rho.trace().real()) * rho;
}

ComplexMatrix random_unitary2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const double theta = u(rng) / 4.0, a = u(rng), b = u(rng), c = u(rng);
    ComplexMatrix m(2);
    m(0, 0) = std::polar(std::cos(theta), a);
    m(0, 1) = std::polar(std::sin(theta), b);
    m(1, 0) = -std::polar(std::sin(theta), c - b);
    m(1, 1) = std::polar(std::cos(theta), c - a);
    return m;
}

// Steady reference for one reduction target.
PairState steady_reference(ReductionTarget t, double r) {
    if (t == ReductionTarget::Aa || t == ReductionTarget::Bb) return steady_pair_local(t);
    return steady_pair_nonlocal(r, t);
}

// Largest concurrence and matrix deviation from the steady references at time t.
struct PlateauCheck {
    double min_c = 1.0, max_c = 0.0, max_c_dev = 0.0, max_matrix_dev = 0.0;
    std::string values;
};

PlateauCheck plateau(const JcmParams& p, double r, double t) {
    const auto state = propagate_pair(initial_state(r), p, p, t);
    PlateauCheck out;
    for (auto target : kAllTargets) {
        const auto reduced = reduce(state, target);
        const double c = concurrence(reduced);
        out.min_c = std::min(out.min_c, c);
        out.max_c = std::max(out.max_c, c);
        out.max_c_dev = std::max(out.max_c_dev, std::abs(c - 0.25));
        out.max_matrix_dev =
            std::max(out.max_matrix_dev, max_abs_diff(reduced.matrix(), steady_reference(target, r).matrix()));
        out.values += fmt("%s%s=%.6f", out.values.empty() ? "" : " ", std::string(target_name(target)).c_str(), c);
    }
    return out;
}

void criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string per_preset;
    bool ok = true;
    for (const char* name : {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c"}) {
        ValidationThresholds thresholds;
        thresholds.propagator = 1e-5;
        const auto report_ = validate_scenario(find_preset(name).config, thresholds);
        const double dev = std::max(report_.max_dev_pair, report_.max_dev_single);
        worst = std::max(worst, dev);
        ok = ok && dev <= 1e-5;
        per_preset += fmt(" %s=%.2e", name, dev);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok = ok && seconds < 120.0;
    report(1, "oracle equivalence", ok, fmt("max deviation %.3e <= 1e-5 in %.1f s;", worst, seconds) + per_preset);
}

void criterion_rates() {
    double worst = 0.0;
    for (const auto& p : {params(1.0, 5.0), params(1.0, 0.05), params(50.0, 5.0)}) {
        for (int k = 0; k <= 200; ++k) {
            const double t = 0.05 * k;
            worst = std::max(worst, std::abs(oracle::rate_from_spectral_density(p, p.omega0 - p.Omega, t) -
                                             decay_rate_minus(p, t)));
            worst = std::max(worst, std::abs(oracle::rate_from_spectral_density(p, p.omega0 + p.Omega, t) -
                                             decay_rate_plus(p, t)));
        }
    }
    report(2, "rate reconstruction", worst <= 1e-8, fmt("max |quadrature - closed form| = %.3e <= 1e-8", worst));
}

void criterion_derivatives() {
    const double h = 1e-5;
    double worst = 0.0;
    for (const auto& p : {params(1.0, 5.0), params(1.0, 0.05), params(50.0, 5.0)}) {
        for (int k = 0; k <= 200; ++k) {
            const double t = std::max(h, 0.05 * k);
            const double dm = (accumulated_I_minus(p, t + h) - accumulated_I_minus(p, t - h)) / (2 * h);
            const double dp = (accumulated_I_plus(p, t + h) - accumulated_I_plus(p, t - h)) / (2 * h);
            worst = std::max({worst, std::abs(dm - decay_rate_minus(p, t)), std::abs(dp - decay_rate_plus(p, t))});
        }
    }
    report(3, "derivative identities", worst <= 1e-6, fmt("max |dI/dt - gamma| = %.3e <= 1e-6", worst));
}

void criterion_fig2a_peaks() {
    const auto traj = evolve(find_preset("fig2a").config);
    const double c_ab0 = traj.records.front().values.at(ReductionTarget::ab);
    const double peak_AB = series_max(traj, ReductionTarget::AB);
    const double peak_Aa = series_max(traj, ReductionTarget::Aa);
    const bool ok_ab0 = c_ab0 == 1.0;
    const bool ok_AB = std::abs(peak_AB - 0.55) <= 0.03;
    const bool ok_Aa = std::abs(peak_Aa - 0.49) <= 0.03;
    report(4, "fig2a peaks", ok_ab0 && ok_AB && ok_Aa,
           fmt("C_ab(0) = %.17g (exact 1: %s); max C_AB = %.4f (0.55 +- 0.03: %s); max C_Aa = %.4f (0.49 +- 0.03: %s)",
               c_ab0, ok_ab0 ? "ok" : "no", peak_AB, ok_AB ? "ok" : "no", peak_Aa, ok_Aa ? "ok" : "no"));
}

void criterion_four_way_equality() {
    double worst = 0.0;
    for (const char* name : {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c"}) {
        for (const auto& rec : evolve(find_preset(name).config).records) {
            const double ref = rec.values.at(ReductionTarget::Aa);
            for (auto t : {ReductionTarget::Bb, ReductionTarget::Ab, ReductionTarget::aB})
                worst = std::max(worst, std::abs(rec.values.at(t) - ref));
        }
    }
    report(5, "four-way atom-cavity equality at r = 1", worst <= 1e-8,
           fmt("max spread of C_Aa, C_Bb, C_Ab, C_aB over six presets = %.3e <= 1e-8", worst));
}

void criterion_strong_coupling_plateau() {
    const auto p50 = plateau(params(50.0, 5.0), 1.0, 30.0);
    const auto p500 = plateau(params(500.0, 5.0), 1.0, 30.0);
    const bool ok50 = p50.max_c_dev <= 0.02 && p50.max_matrix_dev <= 0.02;
    const bool ok500 = p500.max_c_dev <= 0.005 && p500.max_matrix_dev <= 0.005;
    report(6, "strong-coupling plateau", ok50 && ok500,
           fmt("Omega=50: |C-0.25| <= %.4f, matrix dev %.4f (<= 0.02) [%s]; Omega=500: |C-0.25| <= %.5f, matrix dev "
               "%.5f (<= 0.005)",
               p50.max_c_dev, p50.max_matrix_dev, p50.values.c_str(), p500.max_c_dev, p500.max_matrix_dev));
}

void criterion_non_markovian_plateau() {
    const auto pl = plateau(params(1.0, 0.05), 1.0, 400.0);
    const double leak = accumulated_I_plus(params(1.0, 0.05), 400.0);
    report(7, "strongly non-Markovian plateau", pl.max_c_dev <= 0.03 && pl.max_matrix_dev <= 0.03,
           fmt("|C-0.25| <= %.4f (<= 0.03), matrix dev %.4f (<= 0.03) [%s]; I_+(400) = %.4f, e^{-I_+/2} = %.4f",
               pl.max_c_dev, pl.max_matrix_dev, pl.values.c_str(), leak, std::exp(-leak / 2)));
}

void criterion_purity_structure() {
    const auto p = params(50.0, 5.0);
    std::vector<PairState> aa, bb, AB;
    double worst_eq16 = 0.0;
    for (double r : {0.0, 0.5, 1.0}) {
        const auto s = propagate_pair(initial_state(r), p, p, 30.0);
        aa.push_back(reduce(s, ReductionTarget::Aa));
        bb.push_back(reduce(s, ReductionTarget::Bb));
        AB.push_back(reduce(s, ReductionTarget::AB));
        worst_eq16 = std::max(worst_eq16, max_abs_diff(AB.back().matrix(), steady_pair_nonlocal(r).matrix()));
    }
    double local_spread = 0.0;
    for (std::size_t k = 1; k < 3; ++k) {
        local_spread = std::max(local_spread, max_abs_diff(aa[k].matrix(), aa[0].matrix()));
        local_spread = std::max(local_spread, max_abs_diff(bb[k].matrix(), bb[0].matrix()));
    }
    const double AB_variation = max_abs_diff(AB[2].matrix(), AB[0].matrix());
    const bool ok = local_spread <= 1e-3 && AB_variation > 1e-3 && worst_eq16 <= 0.02;
    report(8, "purity structure of the plateau", ok,
           fmt("rho_Aa/rho_Bb spread over r = %.3e (<= 1e-3); rho_AB r=0 vs r=1 differs by %.4f; rho_AB vs steady "
               "form %.4f (<= 0.02)",
               local_spread, AB_variation, worst_eq16));
}

void criterion_threshold() {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (steady_concurrence_nonlocal(mid) > 0.0 ? hi : lo) = mid;
    }
    const bool ok = std::abs(hi - 0.57026) <= 1e-4 && std::abs(hi - kSteadyThreshold) <= 1e-12;

    // Transient threshold: smallest r on a 0.01 grid whose AB concurrence
    // ever becomes positive on the fig4 grid. Reported only.
    auto cfg = find_preset("fig4").config;
    cfg.targets = {ReductionTarget::AB};
    double transient = NAN;
    for (int k = 0; k <= 100; ++k) {
        cfg.r = 0.01 * k;
        if (series_max(evolve(cfg), ReductionTarget::AB) > 1e-10) {
            transient = cfg.r;
            break;
        }
    }
    report(9, "steady nonlocal threshold", ok,
           fmt("bisection r* = %.8f (0.57026 +- 1e-4); transient C_AB onset on the fig4 grid at r = %.2f (reported)",
               hi, transient));
}

void criterion_decay_to_zero() {
    const auto fig2a = evolve(find_preset("fig2a").config);
    const auto fig3a = evolve(find_preset("fig3a").config);
    double end2a = 0.0, end3a = 0.0;
    for (auto t : kAllTargets) {
        end2a = std::max(end2a, fig2a.records.back().values.at(t));
        end3a = std::max(end3a, fig3a.records.back().values.at(t));
    }
    const double t2a = first_time_below(fig2a, ReductionTarget::ab, 0.05);
    const double t3a = first_time_below(fig3a, ReductionTarget::ab, 0.05);
    const bool ok = end2a < 0.01 && end3a < 0.01 && t3a > t2a;
    report(10, "decay to zero", ok,
           fmt("max C at end: fig2a %.2e (t=%g), fig3a %.2e (t=%g); C_ab < 0.05 first at %.2f (fig2a) vs %.2f (fig3a)",
               end2a, fig2a.records.back().t, end3a, fig3a.records.back().t, t2a, t3a));
}

void criterion_properties() {
    std::vector<std::string> failed;
    std::string detail;

    // RK4 order.
    {
        const auto p = params(1.0, 5.0);
        const DressedState3 r0(ComplexMatrix::diagonal({0.5, 0.5, 0.0}));
        const auto exact = propagate_single(r0, p, 2.0).matrix();
        const double h = oracle::max_step(p);
        const double e1 = max_abs_diff(oracle::integrate_single(r0, p, {h, 2.0, 1 << 30}).states.back(), exact);
        const double e2 = max_abs_diff(oracle::integrate_single(r0, p, {h / 2, 2.0, 1 << 30}).states.back(), exact);
        const double ratio = e1 / e2;
        if (!(ratio >= 12.0 && ratio <= 20.0)) failed.push_back("rk4-order");
        detail += fmt("RK4 ratio %.2f", ratio);
    }
    std::mt19937_64 rng(2024);
    // Trace and Hermiticity of the pair propagator.
    {
        double trace_dev = 0.0, herm = 0.0;
        const DjcmState r0(random_density(rng, 9));
        for (int k = 0; k <= 500; ++k) {
            const auto m = propagate_pair(r0, params(1.0, 0.05), params(50.0, 5.0), 0.1 * k).matrix();
            trace_dev = std::max(trace_dev, std::abs(m.trace() - 1.0));
            herm = std::max(herm, hermiticity_defect(m));
        }
        if (!(trace_dev <= 1e-14 && herm <= 1e-10)) failed.push_back("trace/hermiticity");
        detail += fmt("; trace dev %.1e, Hermiticity dev %.1e", trace_dev, herm);
    }
    // Local-unitary invariance.
    {
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const auto rho = random_density(rng, 4);
            const auto u = kron(random_unitary2(rng), random_unitary2(rng));
            worst = std::max(worst, std::abs(concurrence(rho) - concurrence(u * rho * u.adjoint())));
        }
        if (!(worst <= 1e-10)) failed.push_back("local-unitary");
        detail += fmt("; LU invariance %.1e", worst);
    }
    // X-state equivalence on reductions of evolved states and on random X states.
    {
        double worst = 0.0;
        for (double r : {0.0, 0.3, 0.7, 1.0})
            for (double t : {0.5, 2.0, 10.0}) {
                const auto s = propagate_pair(initial_state(r), params(1.0, 0.5), params(1.0, 0.5), t);
                for (auto target : kAllTargets) {
                    const auto pair = reduce(s, target);
                    if (!is_x_state(pair.matrix())) continue;
                    worst = std::max(worst, std::abs(wootters_concurrence(pair.matrix()) - concurrence_x_state(pair)));
                }
            }
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 200; ++k) {
            std::array<double, 4> p{};
            double total = 0.0;
            for (auto& x : p) total += (x = u(rng));
            auto m = ComplexMatrix::diagonal({p[0] / total, p[1] / total, p[2] / total, p[3] / total});
            const Complex z = std::polar(u(rng) * std::sqrt(m(1, 1).real() * m(2, 2).real()), 6.0 * u(rng));
            const Complex w = std::polar(u(rng) * std::sqrt(m(0, 0).real() * m(3, 3).real()), 6.0 * u(rng));
            m(1, 2) = z;
            m(2, 1) = std::conj(z);
            m(0, 3) = w;
            m(3, 0) = std::conj(w);
            worst = std::max(worst, std::abs(wootters_concurrence(m) - concurrence_x_state(m)));
        }
        if (!(worst <= 1e-10)) failed.push_back("x-state");
        detail += fmt("; X-state dev %.1e", worst);
    }
    // omega0 independence of every reduction.
    {
        double worst = 0.0;
        for (double r : {0.2, 1.0})
            for (double t : {0.7, 5.0, 14.0}) {
                const auto low = propagate_pair(initial_state(r), params(1.0, 5.0, 0.0), params(1.0, 5.0, 0.0), t);
                const auto high = propagate_pair(initial_state(r), params(1.0, 5.0, 10.0), params(1.0, 5.0, 10.0), t);
                for (auto target : kAllTargets)
                    worst = std::max(worst, max_abs_diff(reduce(low, target).matrix(), reduce(high, target).matrix()));
            }
        if (!(worst <= 1e-12)) failed.push_back("omega0");
        detail += fmt("; omega0 dev %.1e", worst);
    }
    std::string names;
    for (const auto& f : failed) names += " " + f;
    report(11, "property suites", failed.empty(), detail + (failed.empty() ? "" : "; failed:" + names));
}

}  // namespace

int main() {
    criterion_oracle_equivalence();
    criterion_rates();
    criterion_derivatives();
    criterion_fig2a_peaks();
    criterion_four_way_equality();
    criterion_strong_coupling_plateau();
    criterion_non_markovian_plateau();
    criterion_purity_structure();
    criterion_threshold();
    criterion_decay_to_zero();
    criterion_properties();
    std::printf("%d of 11 criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
