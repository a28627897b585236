#include "djcm/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "djcm/basis.hpp"

namespace djcm {

std::string_view target_name(ReductionTarget target) {
    switch (target) {
        case ReductionTarget::AB: return "AB";
        case ReductionTarget::ab: return "ab";
        case ReductionTarget::Aa: return "Aa";
        case ReductionTarget::Bb: return "Bb";
        case ReductionTarget::Ab: return "Ab";
        case ReductionTarget::aB: return "aB";
    }
    return "?";
}

ReductionTarget parse_target(std::string_view name) {
    for (auto target : kAllTargets)
        if (target_name(target) == name) return target;
    throw PreconditionError("unknown subsystem pair '" + std::string(name) +
                            "' (expected one of AB, ab, Aa, Bb, Ab, aB)");
}

PairState::PairState(ComplexMatrix m, ReductionTarget labels) : m_(std::move(m)), labels_(labels) {
    if (m_.dim() != 4) throw PreconditionError("PairState: expected a 4x4 matrix");
    if (const double d = hermiticity_defect(m_); d > 1e-10) {
        throw PreconditionError("PairState: not Hermitian (defect " + std::to_string(d) + ")");
    }
    if (std::abs(m_.trace() - 1.0) > 1e-10) throw PreconditionError("PairState: trace differs from 1");
}

ComplexMatrix single_transform() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{h, h, 0.0}, {h, -h, 0.0}, {0.0, 0.0, 1.0}};
}

ComplexMatrix pair_transform() {
    const auto u = single_transform();
    return kron(u, u);
}

namespace {

// pair_transform() = diag(w) * S, where S = s (x) s has entries 0 and +-1 and
// w_k = 2^{-n_k / 2} with n_k the number of E1+- factors in index k. Applying
// the weights as products w_i w_j, which are exact powers of two whenever
// n_i + n_j is even, keeps dyadic inputs such as the Werner state exact.
const ComplexMatrix& sign_pattern() {
    static const ComplexMatrix s = [] {
        const ComplexMatrix one{{1.0, 1.0, 0.0}, {1.0, -1.0, 0.0}, {0.0, 0.0, 1.0}};
        return kron(one, one);
    }();
    return s;
}

int one_excitation_factors(std::size_t k) {
    return static_cast<int>(k / 3 != basis::kEGround) + static_cast<int>(k % 3 != basis::kEGround);
}

void apply_weights(ComplexMatrix& m) {
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) {
            const int n = one_excitation_factors(i) + one_excitation_factors(j);
            const double w = std::ldexp(1.0, -(n / 2));
            m(i, j) *= (n % 2 != 0) ? w * std::sqrt(0.5) : w;
        }
}

void require_pair_dim9(const ComplexMatrix& m, const char* who) {
    if (m.dim() != basis::kPairDim) throw PreconditionError(std::string(who) + ": expected a 9x9 matrix");
}

}  // namespace

ComplexMatrix standard_to_dressed(const ComplexMatrix& standard9) {
    require_pair_dim9(standard9, "standard_to_dressed");
    const auto& s = sign_pattern();
    auto m = s * standard9 * s.adjoint();
    apply_weights(m);
    return m;
}

ComplexMatrix dressed_to_standard(const ComplexMatrix& dressed9) {
    require_pair_dim9(dressed9, "dressed_to_standard");
    const auto& s = sign_pattern();
    auto m = dressed9;
    apply_weights(m);
    return s.adjoint() * m * s;
}

ComplexMatrix dressed_to_standard(const DjcmState& s) { return dressed_to_standard(s.matrix()); }

ComplexMatrix werner_cavities(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        std::ostringstream msg;
        msg << "purity r must lie in [0, 1], got " << r;
        throw PreconditionError(msg.str());
    }
    // r |phi+><phi+| + (1 - r) / 4 I with |phi+> = (|10> + |01>) / sqrt2,
    // written out so that dyadic r gives exact entries.
    const double mixed = (1.0 - r) / 4.0;
    auto m = ComplexMatrix::diagonal({mixed, mixed + r / 2.0, mixed + r / 2.0, mixed});
    m(1, 2) = r / 2.0;
    m(2, 1) = r / 2.0;
    return m;
}

namespace {

std::size_t bit(std::size_t index, int qubit) { return (index >> (basis::kQubits - 1 - qubit)) & 1U; }

std::size_t partition_block(std::size_t m16_index, int which) {
    return which == 0 ? m16_index / 4 : m16_index % 4;
}

}  // namespace

ComplexMatrix embed_four_qubit(const ComplexMatrix& standard9) {
    if (standard9.dim() != basis::kPairDim) throw PreconditionError("embed_four_qubit: expected 9x9");
    ComplexMatrix out(16);
    const auto& map = basis::kStandardToQubitPair;
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            out(4 * map[i / 3] + map[i % 3], 4 * map[j / 3] + map[j % 3]) = standard9(i, j);
    return out;
}

double two_excitation_weight(const ComplexMatrix& m16) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const bool touches = partition_block(i, 0) == basis::kTwoExcitationLevel ||
                                 partition_block(i, 1) == basis::kTwoExcitationLevel ||
                                 partition_block(j, 0) == basis::kTwoExcitationLevel ||
                                 partition_block(j, 1) == basis::kTwoExcitationLevel;
            if (touches) worst = std::max(worst, std::abs(m16(i, j)));
        }
    return worst;
}

ComplexMatrix compress_four_qubit(const ComplexMatrix& m16) {
    if (m16.dim() != 16) throw PreconditionError("compress_four_qubit: expected 16x16");
    if (two_excitation_weight(m16) > 1e-12) {
        throw ConsistencyError("compress_four_qubit: state leaves the one-excitation-per-partition sector");
    }
    ComplexMatrix out(9);
    const auto& map = basis::kStandardToQubitPair;
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            out(i, j) = m16(4 * map[i / 3] + map[i % 3], 4 * map[j / 3] + map[j % 3]);
    return out;
}

DjcmState initial_state(double r) {
    const auto cavities = werner_cavities(r);
    // Atoms in |gg>: bit value 1 on both atom qubits.
    const auto atoms = ComplexMatrix::diagonal({0.0, 0.0, 0.0, 1.0});
    // Factor order (a, b, A, B) -> library order (a, A, b, B).
    const auto product = kron(cavities, atoms);
    ComplexMatrix m16(16);
    const auto source_index = [](std::size_t k) {
        return (bit(k, basis::kCavityA) << 3) | (bit(k, basis::kCavityB) << 2) |
               (bit(k, basis::kAtomA) << 1) | bit(k, basis::kAtomB);
    };
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) m16(i, j) = product(source_index(i), source_index(j));

    return DjcmState(standard_to_dressed(compress_four_qubit(m16)));
}

PairState reduce(const DjcmState& s, ReductionTarget target) {
    const auto m16 = embed_four_qubit(dressed_to_standard(s));
    std::array<int, 2> keep{};
    switch (target) {
        case ReductionTarget::AB: keep = {basis::kAtomA, basis::kAtomB}; break;
        case ReductionTarget::ab: keep = {basis::kCavityA, basis::kCavityB}; break;
        case ReductionTarget::Aa: keep = {basis::kAtomA, basis::kCavityA}; break;
        case ReductionTarget::Bb: keep = {basis::kAtomB, basis::kCavityB}; break;
        case ReductionTarget::Ab: keep = {basis::kAtomA, basis::kCavityB}; break;
        case ReductionTarget::aB: keep = {basis::kCavityA, basis::kAtomB}; break;
    }
    auto reduced = partial_trace_qubits(m16, basis::kQubits, keep);
    for (std::size_t i = 0; i < 4; ++i) {
        reduced(i, i) = reduced(i, i).real();
        for (std::size_t j = i + 1; j < 4; ++j) {
            const Complex avg = 0.5 * (reduced(i, j) + std::conj(reduced(j, i)));
            reduced(i, j) = avg;
            reduced(j, i) = std::conj(avg);
        }
    }
    return PairState(std::move(reduced), target);
}

}  // namespace djcm
