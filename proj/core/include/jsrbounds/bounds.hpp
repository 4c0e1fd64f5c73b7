#pragma once

#include <cstdint>
#include <vector>

#include "jsrbounds/semigroup.hpp"

// Certified two-sided enclosures of the (joint) spectral radius from the
// explicit convergence-rate bound
//
//   C_d^(-sigma_d(n)/n) * (||S||^d / ||S^d||)^(-nu_d(n)/n) * ||S^n||^(1/n)
//     <= rho(S) <= ||S^n||^(1/n)
//
// where C_d = 2^d - 1 for a singleton set and d^(3d/2) otherwise, and
// sigma_d(n), nu_d(n) are weighted base-d digit sums of n (exact mode) or
// their closed-form upper estimates (closed mode).

namespace jsr {

/// Base-d positional decomposition n = sum_j digits[j] * d^j, digits stored
/// least significant first; the leading digit is in [1, d-1], the rest in
/// [0, d-1]. Built by exact integer division.
struct DigitDecomposition {
    std::uint64_t n = 0;
    int base = 0;
    std::vector<std::uint32_t> digits;

    std::uint64_t reconstruct() const;
};

enum class BoundMode { ExactDigits, ClosedForm };

std::string_view mode_name(BoundMode mode);
BoundMode parse_bound_mode(std::string_view name);  // "exact" | "closed"

/// 2^d - 1 for r = 1, d^(3d/2) for r > 1. Requires d >= 2.
double bochi_constant(int d, int r);
double log2_bochi_constant(int d, int r);

DigitDecomposition base_d_digits(std::uint64_t n, int d);  // n >= 1, d >= 2

struct SigmaNuExact {
    std::uint64_t sigma = 0;
    std::uint64_t nu = 0;
};

/// Exact weighted digit sums:
///   sigma = sum_j digits[j] * sum_{i<=j} (d-1)^i
///   nu    = sum_j digits[j] * (d-1)^j
/// Throws std::overflow_error when the integer sums exceed 64 bits
/// (the message suggests ClosedForm).
SigmaNuExact sigma_nu_exact(std::uint64_t n, int d);

struct SigmaNuClosed {
    double sigma = 0.0;
    double nu = 0.0;
};

/// Closed-form upper estimates of the digit sums:
///   d = 2: sigma = (L+1)(L+2)/2, nu = L+1 with L = ln n / ln 2
///   d > 2: sigma = (d-1)^3/(d-2)^2 * n^a, nu = (d-1)^2/(d-2) * n^a
///          with a = ln(d-1)/ln d
SigmaNuClosed sigma_nu_closed(std::uint64_t n, int d);

/// The constants entering one certified bound, for reporting.
struct BoundParams {
    int d = 0;
    int r = 0;
    std::uint64_t n = 0;
    double c_d = 0.0;
    double sigma = 0.0;
    double nu = 0.0;
    BoundMode mode = BoundMode::ExactDigits;
    bool forced_multi = false;  // r > 1 constant forced on a singleton
};

/// Two-sided enclosure of rho(S) at one product length n.
/// lower <= rho(S) <= upper whenever the corresponding side is valid;
/// a side is invalid only when its enumeration ran out of budget.
/// exact_zero marks the nilpotent case, where lower = upper = 0 exactly.
struct CertifiedInterval {
    std::uint64_t n = 0;
    double lower = 0.0;
    double upper = 0.0;
    NormKind norm = NormKind::InducedInf;
    BoundMode mode = BoundMode::ExactDigits;
    bool exact_zero = false;
    bool lower_valid = false;
    bool upper_valid = false;

    BoundParams params;
    double set_norm_value = 0.0;  // ||S||
    PowerNormResult d_power;      // ||S^d||
    PowerNormResult n_power;      // ||S^n||
};

struct CertifyOptions {
    EnumBudget budget{};
    bool force_multi_constant = false;
};

/// One certified interval at product length n. Requires an induced norm.
/// Nilpotent sets (all d-products vanish exactly) yield the exact-zero
/// interval; d = 1 yields the degenerate exact interval [max|a|, max|a|].
CertifiedInterval certify(const MatrixSet& s, std::uint64_t n, NormKind kind, BoundMode mode,
                          const CertifyOptions& opts = {});

/// Per-n intervals for n = 1..n_max plus the running best enclosure:
/// best_lower = max of valid lowers, best_upper = min of valid uppers.
struct BoundSequence {
    std::vector<CertifiedInterval> intervals;
    double best_lower = 0.0;
    double best_upper = std::numeric_limits<double>::infinity();
    bool all_sides_valid = true;
};

BoundSequence sweep(const MatrixSet& s, std::uint64_t n_max, NormKind kind, BoundMode mode,
                    const CertifyOptions& opts = {});

/// Check of ||S^d|| <= C_d * rho_ref * ||S||^(d-1) against a caller-supplied
/// reference spectral radius, with 1e-9 relative slack. The decision is made
/// in log space; lhs/rhs are the materialized sides for reporting.
struct BochiReport {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double c_d = 0.0;
    double rho_ref = 0.0;
    double set_norm_value = 0.0;
    int d = 0;
    int r = 0;
};

BochiReport bochi_check(const MatrixSet& s, double rho_ref, NormKind kind,
                        const CertifyOptions& opts = {});

/// One step of the omega recursion check,
///   ||S^(d^k)|| / rho_ref^(d^k)  <=  C_d^(sum_{i<=k} (d-1)^i)
///                                    * (||S||^d / ||S^d||)^((d-1)^k),
/// evaluated in log2 space. Requires rho_ref > 0.
struct OmegaStep {
    int k = 0;
    std::uint64_t n = 0;  // d^k
    double lhs_log2 = 0.0;
    double rhs_log2 = 0.0;
    bool holds = false;
};

std::vector<OmegaStep> omega_recursion_check(const MatrixSet& s, double rho_ref, int k_max,
                                             NormKind kind, const CertifyOptions& opts = {});

}  // namespace jsr
