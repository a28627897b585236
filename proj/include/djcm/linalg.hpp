#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace djcm {

using Complex = std::complex<double>;

/// Raised when a caller violates a documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check on a computed result fails.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense square complex matrix, row-major. Sized for density matrices of a
/// few qubits; nothing here is tuned for large dimensions.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conj() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entry-wise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry-wise modulus of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigen {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // columns are eigenvectors
};

/// Cyclic complex Jacobi eigensolver. Input must be Hermitian to 1e-10.
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-negative_tolerance, 0) are clipped to zero; anything lower throws
/// std::domain_error.
ComplexMatrix principal_sqrt(const ComplexMatrix& m, double negative_tolerance = 1e-10);

/// Partial trace of a multi-qubit operator. Qubit 0 is the most significant
/// Kronecker factor. The kept qubits appear in the result in `keep` order.
ComplexMatrix partial_trace_qubits(const ComplexMatrix& m, int total_qubits,
                                   std::span<const int> keep);
ComplexMatrix partial_trace_qubits(const ComplexMatrix& m, int total_qubits,
                                   std::initializer_list<int> keep);

/// Pauli matrices in the computational ordering {|0>, |1>}.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace djcm
