#include "djcm/djcm_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace djcm {

DjcmState::DjcmState(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 9) throw PreconditionError("DjcmState: expected a 9x9 matrix");
    if (const double d = hermiticity_defect(m_); d > 1e-10) {
        throw PreconditionError("DjcmState: not Hermitian (defect " + std::to_string(d) + ")");
    }
    if (std::abs(m_.trace() - 1.0) > 1e-10) {
        throw PreconditionError("DjcmState: trace differs from 1");
    }
}

DjcmState DjcmState::basis_projector(int index) {
    if (index < 0 || index > 8) throw PreconditionError("DjcmState::basis_projector: index out of range");
    ComplexMatrix m(9);
    m(static_cast<std::size_t>(index), static_cast<std::size_t>(index)) = 1.0;
    return DjcmState(std::move(m));
}

Complex coeff_value(const PropagatorCoeffs& c, Coeff which) {
    switch (which) {
        case Coeff::k11: return c.a11;
        case Coeff::k12: return c.a12;
        case Coeff::k13: return c.a13;
        case Coeff::k21: return c.a21();
        case Coeff::k22: return c.a22;
        case Coeff::k23: return c.a23;
        case Coeff::k31: return c.a31();
        case Coeff::k32: return c.a32();
        case Coeff::k33_11: return c.a33_11;
        case Coeff::k33_22: return c.a33_22;
        case Coeff::k33_33: return c.a33_33;
    }
    return 0.0;
}

namespace {

using enum Coeff;

constexpr ElementRule one(int row, int col, Coeff a, Coeff b) {
    return {row, col, {{{a, b, row, col}}}, 1};
}

// Partition B relaxes into |E0> while A keeps coefficient `a`; the three
// sources share A's indices and run over B's (1,1), (2,2), (3,3) blocks.
constexpr ElementRule fed_by_b(int row, int col, Coeff a, int s11r, int s11c, int s22r,
                               int s22c) {
    return {row, col,
            {{{a, k33_11, s11r, s11c}, {a, k33_22, s22r, s22c}, {a, k33_33, row, col}}}, 3};
}

constexpr ElementRule fed_by_a(int row, int col, Coeff b, int s11r, int s11c, int s22r,
                               int s22c) {
    return {row, col,
            {{{k33_11, b, s11r, s11c}, {k33_22, b, s22r, s22c}, {k33_33, b, row, col}}}, 3};
}

// Diagonal and upper-triangular evolution rules of the two-partition
// dressed-basis density matrix, one line per element.
constexpr std::array<ElementRule, 45> kRules = {{
    one(1, 1, k11, k11),
    one(1, 2, k11, k12),
    one(1, 3, k11, k13),
    one(1, 4, k12, k11),
    one(1, 5, k12, k12),
    one(1, 6, k12, k13),
    one(1, 7, k13, k11),
    one(1, 8, k13, k12),
    one(1, 9, k13, k13),

    one(2, 2, k11, k22),
    one(2, 3, k11, k23),
    one(2, 4, k12, k21),
    one(2, 5, k12, k22),
    one(2, 6, k12, k23),
    one(2, 7, k13, k21),
    one(2, 8, k13, k22),
    one(2, 9, k13, k23),

    fed_by_b(3, 3, k11, 1, 1, 2, 2),
    one(3, 4, k12, k31),
    one(3, 5, k12, k32),
    fed_by_b(3, 6, k12, 1, 4, 2, 5),
    one(3, 7, k13, k31),
    one(3, 8, k13, k32),
    fed_by_b(3, 9, k13, 1, 7, 2, 8),

    one(4, 4, k22, k11),
    one(4, 5, k22, k12),
    one(4, 6, k22, k13),
    one(4, 7, k23, k11),
    one(4, 8, k23, k12),
    one(4, 9, k23, k13),

    one(5, 5, k22, k22),
    one(5, 6, k22, k23),
    one(5, 7, k23, k21),
    one(5, 8, k23, k22),
    one(5, 9, k23, k23),

    fed_by_b(6, 6, k22, 4, 4, 5, 5),
    one(6, 7, k23, k31),
    one(6, 8, k23, k32),
    fed_by_b(6, 9, k23, 4, 7, 5, 8),

    fed_by_a(7, 7, k11, 1, 1, 4, 4),
    fed_by_a(7, 8, k12, 1, 2, 4, 5),
    fed_by_a(7, 9, k13, 1, 3, 4, 6),

    fed_by_a(8, 8, k22, 2, 2, 5, 5),
    fed_by_a(8, 9, k23, 2, 3, 5, 6),

    {9, 9,
     {{{k33_11, k33_11, 1, 1}, {k33_11, k33_22, 2, 2}, {k33_11, k33_33, 3, 3},
       {k33_22, k33_11, 4, 4}, {k33_22, k33_22, 5, 5}, {k33_22, k33_33, 6, 6},
       {k33_33, k33_11, 7, 7}, {k33_33, k33_22, 8, 8}, {k33_33, k33_33, 9, 9}}},
     9},
}};

}  // namespace

std::span<const ElementRule> element_rules() { return kRules; }

DjcmState propagate_pair(const DjcmState& r0, const JcmParams& pA, const JcmParams& pB, double t) {
    pA.validate();
    pB.validate();
    const auto ca = coefficients(pA, t);
    const auto cb = coefficients(pB, t);
    const auto& in = r0.matrix();

    ComplexMatrix out(9);
    for (const auto& rule : kRules) {
        Complex value = 0.0;
        for (const auto& term : rule.active()) {
            value += coeff_value(ca, term.a) * coeff_value(cb, term.b) *
                     in(static_cast<std::size_t>(term.src_row - 1),
                        static_cast<std::size_t>(term.src_col - 1));
        }
        out(static_cast<std::size_t>(rule.row - 1), static_cast<std::size_t>(rule.col - 1)) = value;
    }
    for (std::size_t i = 0; i < 9; ++i) {
        out(i, i) = out(i, i).real();
        for (std::size_t j = i + 1; j < 9; ++j) out(j, i) = std::conj(out(i, j));
    }

    if (std::abs(out.trace() - in.trace()) > 1e-12) {
        throw ConsistencyError("propagate_pair: trace drift above 1e-12");
    }
    if (hermiticity_defect(out) > 1e-10) {
        throw ConsistencyError("propagate_pair: result is not Hermitian");
    }
    return DjcmState(std::move(out));
}

bool identical_partition_check(const JcmParams& pA, const JcmParams& pB) {
    const auto close = [](double x, double y) {
        return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
    };
    return close(pA.omega0, pB.omega0) && close(pA.Omega, pB.Omega) &&
           close(pA.gamma0, pB.gamma0) && close(pA.lambda, pB.lambda);
}

ComplexMatrix swap_partitions(const ComplexMatrix& m9) {
    if (m9.dim() != 9) throw PreconditionError("swap_partitions: expected a 9x9 matrix");
    const auto swapped = [](std::size_t k) { return 3 * (k % 3) + k / 3; };
    ComplexMatrix out(9);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j) out(swapped(i), swapped(j)) = m9(i, j);
    return out;
}

PositivityReport positivity(const ComplexMatrix& m) {
    const auto eig = hermitian_eig(m);
    PositivityReport report;
    report.min_eigenvalue = eig.values.back();
    report.warning = report.min_eigenvalue < -1e-8;
    return report;
}

}  // namespace djcm
