#include "jsrbounds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsr {

namespace {

void require_finite(const std::vector<Complex>& entries) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!std::isfinite(entries[i].real()) || !std::isfinite(entries[i].imag())) {
            throw std::invalid_argument("ComplexMatrix: entry " + std::to_string(i) +
                                        " is not finite");
        }
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    if (entries.size() != static_cast<std::size_t>(dim) * dim) {
        throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) +
                                    " entries, got " + std::to_string(entries.size()));
    }
    require_finite(entries);
    entries_ = std::move(entries);
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(static_cast<int>(diag.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
    return m;
}

std::string_view norm_name(NormKind kind) {
    switch (kind) {
        case NormKind::InducedOne: return "one";
        case NormKind::InducedInf: return "inf";
        case NormKind::InducedTwo: return "two";
        case NormKind::MaxEntry: return "maxentry";
    }
    return "?";
}

NormKind parse_norm_kind(std::string_view name) {
    if (name == "one" || name == "1") return NormKind::InducedOne;
    if (name == "inf") return NormKind::InducedInf;
    if (name == "two" || name == "2") return NormKind::InducedTwo;
    if (name == "maxentry") return NormKind::MaxEntry;
    throw std::invalid_argument("unknown norm kind: " + std::string(name));
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("mat_mul: dimension mismatch (" + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()) + ")");
    }
    const int d = a.dim();
    ComplexMatrix c(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex acc{0.0, 0.0};
            for (int k = 0; k < d; ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

namespace {

double max_entry_modulus(const ComplexMatrix& a) {
    double best = 0.0;
    for (const Complex& z : a.entries()) best = std::max(best, std::abs(z));
    return best;
}

// Largest singular value of A, deterministically.
//
// Works on the Hermitian PSD matrix M = A^H A and evaluates
// lambda_max(M) = lim_s (tr M^s)^(1/s) by repeated squaring: after J
// squarings, lambda_max <= (tr M^(2^J))^(1/2^J) <= lambda_max * d^(1/2^J),
// so J = 44 pins the systematic error below ~1e-13 regardless of the
// spectral gap. Each squaring rescales by an exact power of two; the
// accumulated exponent is integer arithmetic. No start vector, no
// convergence loop, bit-identical results across runs.
double induced_two_norm(const ComplexMatrix& a) {
    const int d = a.dim();
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex acc{0.0, 0.0};
            for (int k = 0; k < d; ++k) acc += std::conj(a(k, i)) * a(k, j);
            m(i, j) = acc;
        }
    }
    if (max_entry_modulus(m) == 0.0) return 0.0;

    constexpr int kSquarings = 44;
    std::int64_t scale_log2 = 0;  // true M^(2^j) = iterate * 2^scale_log2
    for (int j = 0; j < kSquarings; ++j) {
        int e = 0;
        std::frexp(max_entry_modulus(m), &e);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) {
                Complex& z = m(i, k);
                z = Complex{std::ldexp(z.real(), -e), std::ldexp(z.imag(), -e)};
            }
        }
        scale_log2 = 2 * (scale_log2 + e);
        m = mat_mul(m, m);
    }
    double tr = 0.0;
    for (int i = 0; i < d; ++i) tr += m(i, i).real();
    // PSD diagonal is exactly nonnegative; tr > 0 because the dominant
    // eigenvalue of the normalized iterate stays near 1.
    const double log2_lambda =
        (std::log2(tr) + static_cast<double>(scale_log2)) * std::ldexp(1.0, -kSquarings);
    return std::exp2(0.5 * log2_lambda);
}

Complex trace(const ComplexMatrix& a) {
    Complex t{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

// Simultaneous root refinement (Aberth-Ehrlich, Gauss-Seidel updates) for a
// monic polynomial x^m + c[0] x^(m-1) + ... + c[m-1]. Deterministic start
// points on a circle; converged when every normalized residual is <= tol.
std::vector<Complex> aberth_roots(const std::vector<Complex>& c, double tol) {
    const int m = static_cast<int>(c.size());
    std::vector<Complex> z(static_cast<std::size_t>(m));

    double radius = 0.0;
    for (int k = 0; k < m; ++k) {
        radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(k)]),
                                           1.0 / static_cast<double>(k + 1)));
    }
    radius = 2.0 * radius + 1.0;
    const Complex center = -c[0] / static_cast<double>(m);
    constexpr double kTau = 6.283185307179586476925286766559;
    for (int i = 0; i < m; ++i) {
        const double theta = kTau * static_cast<double>(i) / static_cast<double>(m) + 0.35;
        z[static_cast<std::size_t>(i)] = center + radius * Complex{std::cos(theta), std::sin(theta)};
    }

    constexpr int kMaxSweeps = 1000;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool all_resid_ok = true;
        for (int i = 0; i < m; ++i) {
            Complex zi = z[static_cast<std::size_t>(i)];
            Complex p{1.0, 0.0};
            Complex dp{0.0, 0.0};
            double mag = 1.0;
            const double az = std::abs(zi);
            for (int k = 0; k < m; ++k) {
                dp = dp * zi + p;
                p = p * zi + c[static_cast<std::size_t>(k)];
                mag = mag * az + std::abs(c[static_cast<std::size_t>(k)]);
            }
            const bool resid_ok = std::abs(p) <= tol * std::max(mag, 1e-300);
            all_resid_ok = all_resid_ok && resid_ok;
            if (resid_ok) continue;

            if (dp == Complex{0.0, 0.0}) {
                z[static_cast<std::size_t>(i)] = zi + Complex{1e-6 * (1.0 + az), 1e-6};
                continue;
            }
            const Complex newton = p / dp;
            Complex sum_inv{0.0, 0.0};
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const Complex diff = zi - z[static_cast<std::size_t>(j)];
                if (diff == Complex{0.0, 0.0}) continue;
                sum_inv += 1.0 / diff;
            }
            const Complex denom = 1.0 - newton * sum_inv;
            const Complex step = (denom == Complex{0.0, 0.0}) ? newton : newton / denom;
            z[static_cast<std::size_t>(i)] = zi - step;
        }
        if (all_resid_ok) return z;
    }
    throw std::runtime_error("eigen_spectral_radius: root finder did not converge");
}

}  // namespace

double matrix_norm(const ComplexMatrix& a, NormKind kind) {
    const int d = a.dim();
    switch (kind) {
        case NormKind::InducedOne: {
            double best = 0.0;
            for (int j = 0; j < d; ++j) {
                double col = 0.0;
                for (int i = 0; i < d; ++i) col += std::abs(a(i, j));
                best = std::max(best, col);
            }
            return best;
        }
        case NormKind::InducedInf: {
            double best = 0.0;
            for (int i = 0; i < d; ++i) {
                double row = 0.0;
                for (int j = 0; j < d; ++j) row += std::abs(a(i, j));
                best = std::max(best, row);
            }
            return best;
        }
        case NormKind::InducedTwo:
            return induced_two_norm(a);
        case NormKind::MaxEntry:
            return max_entry_modulus(a);
    }
    throw std::invalid_argument("matrix_norm: bad kind");
}

double eigen_spectral_radius(const ComplexMatrix& a) {
    const int d = a.dim();
    if (d > 16) {
        throw std::invalid_argument("eigen_spectral_radius: oracle limited to dim <= 16");
    }

    // Characteristic polynomial x^d + c[0] x^(d-1) + ... + c[d-1] by the
    // Faddeev-LeVerrier recursion.
    std::vector<Complex> c(static_cast<std::size_t>(d));
    ComplexMatrix b = a;
    c[0] = -trace(b);
    for (int k = 2; k <= d; ++k) {
        ComplexMatrix shifted = b;
        for (int i = 0; i < d; ++i) shifted(i, i) += c[static_cast<std::size_t>(k - 2)];
        b = mat_mul(a, shifted);
        c[static_cast<std::size_t>(k - 1)] = -trace(b) / static_cast<double>(k);
    }

    // Exact trailing zeros are zero eigenvalues (nilpotent/singular part).
    int m = d;
    while (m > 0 && c[static_cast<std::size_t>(m - 1)] == Complex{0.0, 0.0}) --m;
    if (m == 0) return 0.0;
    c.resize(static_cast<std::size_t>(m));

    const std::vector<Complex> roots = aberth_roots(c, 1e-10);
    double rho = 0.0;
    for (const Complex& r : roots) rho = std::max(rho, std::abs(r));
    return rho;
}

}  // namespace jsr
