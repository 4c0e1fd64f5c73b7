#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Dense complex matrix arithmetic, induced operator norms, and an
// eigenvalue-based spectral-radius oracle for desk-scale validation.

namespace jsr {

using Complex = std::complex<double>;

/// Dense d x d complex matrix, row-major storage.
/// Construction rejects non-finite entries (NaN/Inf) and d < 1.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim);  // zero matrix
    ComplexMatrix(int dim, std::vector<Complex> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    int dim() const { return dim_; }

    Complex& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * dim_ + j];
    }

    std::span<const Complex> entries() const { return entries_; }

    bool operator==(const ComplexMatrix& other) const = default;

private:
    int dim_;
    std::vector<Complex> entries_;
};

/// Matrix norm selector. MaxEntry (max entry modulus) is not
/// submultiplicative and is rejected by all certification operations.
enum class NormKind { InducedOne, InducedInf, InducedTwo, MaxEntry };

constexpr bool is_induced(NormKind kind) { return kind != NormKind::MaxEntry; }

std::string_view norm_name(NormKind kind);
NormKind parse_norm_kind(std::string_view name);  // "one" | "inf" | "two" | "maxentry"

/// Exact floating-point product AB with a fixed accumulation order
/// (row-major, k ascending), so results are bit-identical across runs.
/// Throws std::invalid_argument on dimension mismatch.
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

/// InducedOne  : max column sum of entry moduli
/// InducedInf  : max row sum of entry moduli
/// InducedTwo  : largest singular value, deterministic (see linalg.cpp)
/// MaxEntry    : max entry modulus
double matrix_norm(const ComplexMatrix& a, NormKind kind);

/// Spectral radius of a single matrix: max eigenvalue modulus.
/// Independent of the bound machinery: characteristic polynomial by the
/// Faddeev-LeVerrier recursion, roots by Aberth simultaneous iteration
/// (residual tolerance 1e-10). Desk-scale oracle, requires dim <= 16.
/// Throws std::runtime_error if the root finder fails to converge.
double eigen_spectral_radius(const ComplexMatrix& a);

}  // namespace jsr
