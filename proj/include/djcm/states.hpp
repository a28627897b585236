#pragma once

#include <array>
#include <string_view>

#include "djcm/djcm_evolution.hpp"
#include "djcm/linalg.hpp"

namespace djcm {

enum class ReductionTarget { AB, ab, Aa, Bb, Ab, aB };

inline constexpr std::array<ReductionTarget, 6> kAllTargets = {
    ReductionTarget::AB, ReductionTarget::ab, ReductionTarget::Aa,
    ReductionTarget::Bb, ReductionTarget::Ab, ReductionTarget::aB,
};

std::string_view target_name(ReductionTarget target);
/// Throws PreconditionError for anything but the six names (case-sensitive).
ReductionTarget parse_target(std::string_view name);

/// 4x4 reduced state of two of the four subsystems.
class PairState {
public:
    /// Checks dimension 4, Hermiticity and unit trace to 1e-10.
    PairState(ComplexMatrix m, ReductionTarget labels);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    ReductionTarget labels() const noexcept { return labels_; }

private:
    ComplexMatrix m_;
    ReductionTarget labels_;
};

/// Rows are dressed states expanded in the standard basis; real orthogonal.
ComplexMatrix single_transform();
/// single_transform() (x) single_transform().
ComplexMatrix pair_transform();

ComplexMatrix standard_to_dressed(const ComplexMatrix& standard9);
ComplexMatrix dressed_to_standard(const DjcmState& s);
ComplexMatrix dressed_to_standard(const ComplexMatrix& dressed9);

/// Werner-like cavity state r |phi+><phi+| + (1-r)/4 I on ab, both atoms in g.
/// Throws PreconditionError unless 0 <= r <= 1.
DjcmState initial_state(double r);

/// Cavity-pair Werner-like state in the pair basis {|11>,|10>,|01>,|00>}.
ComplexMatrix werner_cavities(double r);

/// 9-dim standard-basis state -> 16-dim four-qubit state (zero on |1e>).
ComplexMatrix embed_four_qubit(const ComplexMatrix& standard9);

/// Inverse of embed_four_qubit. Throws ConsistencyError if any |1e> row or
/// column carries weight above 1e-12.
ComplexMatrix compress_four_qubit(const ComplexMatrix& m16);

/// Largest modulus over entries that touch a |1e> level of either partition.
double two_excitation_weight(const ComplexMatrix& m16);

PairState reduce(const DjcmState& s, ReductionTarget target);

}  // namespace djcm
