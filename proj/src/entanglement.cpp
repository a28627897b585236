#include "djcm/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace djcm {

namespace {

void require_pair_dim(const ComplexMatrix& m, const char* who) {
    if (m.dim() != 4) throw PreconditionError(std::string(who) + ": expected a 4x4 matrix");
}

ComplexMatrix spin_flip() {
    static const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    return yy;
}

void require_physical(const ComplexMatrix& rho, const char* who) {
    require_pair_dim(rho, who);
    const auto rho_eig = hermitian_eig(rho);
    if (rho_eig.values.back() < -1e-8) {
        std::ostringstream msg;
        msg << who << ": state has eigenvalue " << rho_eig.values.back() << " below -1e-8";
        throw PreconditionError(msg.str());
    }
}

}  // namespace

double concurrence(const ComplexMatrix& rho) {
    require_physical(rho, "concurrence");
    // Exactly X-shaped inputs (every reduction of the Werner-like family) take
    // the closed form, which is exact on exact data.
    if (is_x_state(rho, 0.0)) return concurrence_x_state(rho);
    return wootters_concurrence(rho);
}

double wootters_concurrence(const ComplexMatrix& rho) {
    require_physical(rho, "wootters_concurrence");
    // sqrt(rho) rho~ sqrt(rho) = M M^dagger with M = sqrt(rho) Y sqrt(rho)^*, so
    // the square roots we need are the singular values of M. They are read off
    // the Hermitian dilation [[0, M], [M^dagger, 0]] (eigenvalues +-sigma),
    // which keeps near-zero values accurate to rounding instead of sqrt(rounding).
    const auto root = principal_sqrt(rho, 1e-8);
    const auto yy = spin_flip();
    const auto m = root * yy * root.conj();
    ComplexMatrix dilation(8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            dilation(i, 4 + j) = m(i, j);
            dilation(4 + j, i) = std::conj(m(i, j));
        }
    const auto eig = hermitian_eig(dilation);

    std::array<double, 4> sigma{};
    for (std::size_t k = 0; k < 4; ++k) sigma[k] = std::max(eig.values[k], 0.0);
    return std::max(0.0, sigma[0] - sigma[1] - sigma[2] - sigma[3]);
}

double concurrence(const PairState& p) { return concurrence(p.matrix()); }

bool is_x_state(const ComplexMatrix& rho, double tolerance) {
    require_pair_dim(rho, "is_x_state");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && i + j != 3 && std::abs(rho(i, j)) > tolerance) return false;
    return true;
}

double concurrence_x_state(const ComplexMatrix& rho) {
    if (!is_x_state(rho)) {
        throw PreconditionError(
            "concurrence_x_state: matrix is not X-shaped; use concurrence() for general states");
    }
    const double p11 = rho(0, 0).real(), p22 = rho(1, 1).real();
    const double p33 = rho(2, 2).real(), p44 = rho(3, 3).real();
    const double a = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, p11 * p44));
    const double b = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, p22 * p33));
    return 2.0 * std::max({0.0, a, b});
}

double concurrence_x_state(const PairState& p) { return concurrence_x_state(p.matrix()); }

PairState steady_pair_nonlocal(double r, ReductionTarget labels) {
    if (!(r >= 0.0 && r <= 1.0)) {
        std::ostringstream msg;
        msg << "steady_pair_nonlocal: purity r must lie in [0, 1], got " << r;
        throw PreconditionError(msg.str());
    }
    auto m = ComplexMatrix::diagonal({(1.0 - r) / 64.0, (7.0 + r) / 64.0, (7.0 + r) / 64.0,
                                      (49.0 - r) / 64.0});
    m(1, 2) = r / 8.0;
    m(2, 1) = r / 8.0;
    return PairState(std::move(m), labels);
}

PairState steady_pair_local(ReductionTarget labels) {
    auto m = ComplexMatrix::diagonal({0.0, 1.0 / 8.0, 1.0 / 8.0, 6.0 / 8.0});
    m(1, 2) = 1.0 / 8.0;
    m(2, 1) = 1.0 / 8.0;
    return PairState(std::move(m), labels);
}

double steady_concurrence_nonlocal(double r) {
    return 2.0 * std::max(0.0, r / 8.0 - std::sqrt((1.0 - r) * (49.0 - r)) / 64.0);
}

ConcurrenceRecord concurrences(const DjcmState& s, double t) {
    ConcurrenceRecord record;
    record.t = t;
    for (auto target : kAllTargets) record.values[target] = concurrence(reduce(s, target));
    return record;
}

}  // namespace djcm
