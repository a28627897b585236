#include "djcm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace djcm {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw PreconditionError("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                                " does not match dim^2 = " + std::to_string(dim_ * dim_));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw PreconditionError("ComplexMatrix: ragged initializer");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out(*this);
    for (auto& z : out.entries_) z = std::conj(z);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
    return sum;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw PreconditionError("ComplexMatrix: dimension mismatch in +");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw PreconditionError("ComplexMatrix: dimension mismatch in -");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw PreconditionError("ComplexMatrix: dimension mismatch in *");
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw PreconditionError("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return out;
}

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kJacobiThreshold = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

void require_hermitian(const ComplexMatrix& m, const char* who) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i; j < m.dim(); ++j) {
            const double defect = std::abs(m(i, j) - std::conj(m(j, i)));
            if (defect > kHermitianTolerance) {
                std::ostringstream msg;
                msg << who << ": matrix is not Hermitian at entry (" << i << ", " << j
                    << "), |m - m^dagger| = " << defect;
                throw PreconditionError(msg.str());
            }
        }
    }
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
    require_hermitian(m, "hermitian_eig");
    const std::size_t n = m.dim();

    // Work on the exactly Hermitian part so rounding in the input cannot
    // accumulate through the sweeps.
    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (const auto& z : a.entries()) scale += std::norm(z);
    scale = std::max(1.0, std::sqrt(scale));

    bool converged = n < 2;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        if (off_diagonal_norm(a) <= kJacobiThreshold * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex c = a(p, q);
                const double mag = std::abs(c);
                if (mag == 0.0) continue;
                const Complex phase = c / mag;
                const double theta =
                    0.5 * std::atan2(2.0 * mag, a(p, p).real() - a(q, q).real());
                const double cs = std::cos(theta), sn = std::sin(theta);
                // G = diag(1, conj(phase)) * [[cs, -sn], [sn, cs]] on the (p, q) plane.
                const Complex gpp = cs, gpq = -sn;
                const Complex gqp = std::conj(phase) * sn, gqq = std::conj(phase) * cs;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > kJacobiThreshold * scale) {
        throw ConsistencyError("hermitian_eig: Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() > a(y, y).real();
    });

    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix principal_sqrt(const ComplexMatrix& m, double negative_tolerance) {
    const auto eig = hermitian_eig(m);
    const std::size_t n = m.dim();
    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = eig.values[k];
        if (lam < -negative_tolerance) {
            std::ostringstream msg;
            msg << "principal_sqrt: eigenvalue " << lam << " below -" << negative_tolerance;
            throw std::domain_error(msg.str());
        }
        roots[k] = std::sqrt(std::max(lam, 0.0));
    }
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += eig.vectors(i, k) * roots[k] * std::conj(eig.vectors(j, k));
            out(i, j) = sum;
        }
    return out;
}

ComplexMatrix partial_trace_qubits(const ComplexMatrix& m, int total_qubits,
                                   std::span<const int> keep) {
    if (total_qubits < 0 || total_qubits > 30 || m.dim() != (std::size_t{1} << total_qubits)) {
        throw PreconditionError("partial_trace_qubits: matrix dimension " +
                                std::to_string(m.dim()) + " is not 2^" +
                                std::to_string(total_qubits));
    }
    std::vector<bool> kept(static_cast<std::size_t>(total_qubits), false);
    for (int q : keep) {
        if (q < 0 || q >= total_qubits) {
            throw PreconditionError("partial_trace_qubits: qubit index " + std::to_string(q) +
                                    " out of range");
        }
        if (kept[static_cast<std::size_t>(q)]) {
            throw PreconditionError("partial_trace_qubits: duplicate qubit index " +
                                    std::to_string(q));
        }
        kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < total_qubits; ++q)
        if (!kept[static_cast<std::size_t>(q)]) traced.push_back(q);

    const auto bit_of = [&](int q) { return std::size_t{1} << (total_qubits - 1 - q); };
    // Scatter a packed value over a list of qubit positions (first listed = MSB).
    const auto scatter = [&](std::size_t packed, std::span<const int> qubits) {
        std::size_t full = 0;
        const std::size_t width = qubits.size();
        for (std::size_t k = 0; k < width; ++k)
            if (packed & (std::size_t{1} << (width - 1 - k))) full |= bit_of(qubits[k]);
        return full;
    };

    const std::size_t kept_dim = std::size_t{1} << keep.size();
    const std::size_t traced_dim = std::size_t{1} << traced.size();
    ComplexMatrix out(kept_dim);
    for (std::size_t i = 0; i < kept_dim; ++i) {
        const std::size_t fi = scatter(i, keep);
        for (std::size_t j = 0; j < kept_dim; ++j) {
            const std::size_t fj = scatter(j, keep);
            Complex sum = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t) {
                const std::size_t ft = scatter(t, traced);
                sum += m(fi | ft, fj | ft);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

ComplexMatrix partial_trace_qubits(const ComplexMatrix& m, int total_qubits,
                                   std::initializer_list<int> keep) {
    return partial_trace_qubits(m, total_qubits, std::span<const int>(keep.begin(), keep.size()));
}

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace djcm
