#pragma once

#include <array>
#include <span>

#include "djcm/jcm_propagator.hpp"
#include "djcm/linalg.hpp"

namespace djcm {

/// 9x9 two-partition density matrix in the dressed product basis
///   |1> = |E1+ E1+>, |2> = |E1+ E1->, |3> = |E1+ E0>,
///   |4> = |E1- E1+>, |5> = |E1- E1->, |6> = |E1- E0>,
///   |7> = |E0 E1+>,  |8> = |E0 E1->,  |9> = |E0 E0>,
/// partition A on the left. Index k (0-based) = 3 * a + b.
class DjcmState {
public:
    /// Checks dimension 9, Hermiticity and unit trace to 1e-10.
    explicit DjcmState(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }

    static DjcmState basis_projector(int index);

private:
    ComplexMatrix m_;
};

/// Named single-partition coefficients used by the element table.
enum class Coeff : unsigned char {
    k11, k12, k13, k21, k22, k23, k31, k32, k33_11, k33_22, k33_33,
};

Complex coeff_value(const PropagatorCoeffs& c, Coeff which);

/// One product term A_coeff * B_coeff * R(source) contributing to an element.
struct ElementTerm {
    Coeff a;
    Coeff b;
    int src_row;  // 1-based, as in the basis list above
    int src_col;
};

/// Evolution rule for one upper-triangular element (1-based indices).
struct ElementRule {
    int row;
    int col;
    std::array<ElementTerm, 9> terms;
    int term_count;

    std::span<const ElementTerm> active() const {
        return {terms.data(), static_cast<std::size_t>(term_count)};
    }
};

/// The 9 diagonal and 36 upper off-diagonal rules, in row-major order.
std::span<const ElementRule> element_rules();

/// Element-wise closed-form propagation. The lower triangle is filled by
/// Hermitian conjugation.
DjcmState propagate_pair(const DjcmState& r0, const JcmParams& pA, const JcmParams& pB, double t);

/// True iff every parameter of the two partitions agrees to relative 1e-12.
bool identical_partition_check(const JcmParams& pA, const JcmParams& pB);

/// Permutes basis indices under A <-> B exchange: (a, b) -> (b, a).
ComplexMatrix swap_partitions(const ComplexMatrix& m9);

struct PositivityReport {
    double min_eigenvalue = 0.0;
    /// Second-order TCL is not guaranteed completely positive; small negative
    /// eigenvalues are reported rather than rejected.
    bool warning = false;
};

PositivityReport positivity(const ComplexMatrix& m);

}  // namespace djcm
