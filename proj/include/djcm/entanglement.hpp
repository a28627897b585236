#pragma once

#include <map>

#include "djcm/states.hpp"

namespace djcm {

/// Concurrence of a two-qubit state. Inputs whose off-X entries are exactly
/// zero use concurrence_x_state; everything else goes through
/// wootters_concurrence. Throws PreconditionError if rho has an eigenvalue
/// below -1e-8.
double concurrence(const PairState& p);
double concurrence(const ComplexMatrix& rho4);

/// General Wootters formula for any 4x4 state. The square roots of the
/// eigenvalues of rho rho~ are taken as the singular values of
/// sqrt(rho) (Y (x) Y) sqrt(rho)^*.
double wootters_concurrence(const ComplexMatrix& rho4);

/// Closed form for states supported on the diagonal and anti-diagonal only.
/// Throws PreconditionError if any other entry exceeds 1e-10.
double concurrence_x_state(const PairState& p);
double concurrence_x_state(const ComplexMatrix& rho4);

bool is_x_state(const ComplexMatrix& rho4, double tolerance = 1e-10);

/// Quasi-steady state of AB, ab, Ab and aB for purity r.
PairState steady_pair_nonlocal(double r, ReductionTarget labels = ReductionTarget::AB);

/// Quasi-steady state of Aa and Bb; independent of r.
PairState steady_pair_local(ReductionTarget labels = ReductionTarget::Aa);

/// Concurrence of steady_pair_nonlocal(r) in closed form.
double steady_concurrence_nonlocal(double r);

/// Positive root of 63 r^2 + 50 r - 49, where the steady nonlocal
/// concurrence becomes positive.
inline constexpr double kSteadyThreshold = 0.57025690233192486;

struct ConcurrenceRecord {
    double t = 0.0;
    std::map<ReductionTarget, double> values;
};

ConcurrenceRecord concurrences(const DjcmState& s, double t);

}  // namespace djcm
