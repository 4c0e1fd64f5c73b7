#include "jsrbounds/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* who) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error(std::string(who) +
                                  ": integer digit sums overflow 64 bits; use ClosedForm mode");
    }
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* who) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error(std::string(who) +
                                  ": integer digit sums overflow 64 bits; use ClosedForm mode");
    }
    return out;
}

}  // namespace

std::uint64_t DigitDecomposition::reconstruct() const {
    std::uint64_t value = 0;
    std::uint64_t place = 1;
    for (std::size_t j = 0; j < digits.size(); ++j) {
        value = checked_add(value, checked_mul(digits[j], place, "reconstruct"), "reconstruct");
        if (j + 1 < digits.size()) {
            place = checked_mul(place, static_cast<std::uint64_t>(base), "reconstruct");
        }
    }
    return value;
}

std::string_view mode_name(BoundMode mode) {
    return mode == BoundMode::ExactDigits ? "exact" : "closed";
}

BoundMode parse_bound_mode(std::string_view name) {
    if (name == "exact") return BoundMode::ExactDigits;
    if (name == "closed") return BoundMode::ClosedForm;
    throw std::invalid_argument("unknown bound mode: " + std::string(name));
}

double bochi_constant(int d, int r) {
    if (d < 2) throw std::invalid_argument("bochi_constant: requires d >= 2");
    if (r < 1) throw std::invalid_argument("bochi_constant: requires r >= 1");
    if (r == 1) return std::exp2(static_cast<double>(d)) - 1.0;
    return std::pow(static_cast<double>(d), 1.5 * static_cast<double>(d));
}

double log2_bochi_constant(int d, int r) {
    if (d < 2) throw std::invalid_argument("log2_bochi_constant: requires d >= 2");
    if (r < 1) throw std::invalid_argument("log2_bochi_constant: requires r >= 1");
    if (r == 1) {
        // log2(2^d - 1); the correction is below double resolution for d >= 54
        if (d >= 54) return static_cast<double>(d);
        return std::log2(std::exp2(static_cast<double>(d)) - 1.0);
    }
    return 1.5 * static_cast<double>(d) * std::log2(static_cast<double>(d));
}

DigitDecomposition base_d_digits(std::uint64_t n, int d) {
    if (n < 1) throw std::invalid_argument("base_d_digits: n must be >= 1");
    if (d < 2) throw std::invalid_argument("base_d_digits: base must be >= 2");
    DigitDecomposition out;
    out.n = n;
    out.base = d;
    const std::uint64_t base = static_cast<std::uint64_t>(d);
    while (n > 0) {
        out.digits.push_back(static_cast<std::uint32_t>(n % base));
        n /= base;
    }
    return out;
}

SigmaNuExact sigma_nu_exact(std::uint64_t n, int d) {
    const DigitDecomposition dec = base_d_digits(n, d);
    const std::uint64_t q = static_cast<std::uint64_t>(d) - 1;
    SigmaNuExact out;
    std::uint64_t q_pow = 1;       // (d-1)^j
    std::uint64_t q_pow_sum = 0;   // sum_{i<=j} (d-1)^i
    for (std::size_t j = 0; j < dec.digits.size(); ++j) {
        if (j > 0) q_pow = checked_mul(q_pow, q, "sigma_nu_exact");
        q_pow_sum = checked_add(q_pow_sum, q_pow, "sigma_nu_exact");
        const std::uint64_t digit = dec.digits[j];
        out.sigma = checked_add(out.sigma, checked_mul(digit, q_pow_sum, "sigma_nu_exact"),
                                "sigma_nu_exact");
        out.nu = checked_add(out.nu, checked_mul(digit, q_pow, "sigma_nu_exact"),
                             "sigma_nu_exact");
    }
    return out;
}

SigmaNuClosed sigma_nu_closed(std::uint64_t n, int d) {
    if (n < 1) throw std::invalid_argument("sigma_nu_closed: n must be >= 1");
    if (d < 2) throw std::invalid_argument("sigma_nu_closed: requires d >= 2");
    SigmaNuClosed out;
    if (d == 2) {
        const double level = std::log(static_cast<double>(n)) / std::log(2.0);
        out.sigma = 0.5 * (level + 1.0) * (level + 2.0);
        out.nu = level + 1.0;
    } else {
        const double dm1 = static_cast<double>(d - 1);
        const double dm2 = static_cast<double>(d - 2);
        const double growth = std::pow(static_cast<double>(n), std::log(dm1) / std::log(d));
        out.sigma = dm1 * dm1 * dm1 / (dm2 * dm2) * growth;
        out.nu = dm1 * dm1 / dm2 * growth;
    }
    return out;
}

namespace {

BoundParams make_params(int d, int r, std::uint64_t n, BoundMode mode, bool force_multi) {
    BoundParams p;
    p.d = d;
    p.r = r;
    p.n = n;
    p.mode = mode;
    p.forced_multi = force_multi && r == 1;
    const int effective_r = p.forced_multi ? 2 : r;
    p.c_d = bochi_constant(d, effective_r);
    if (mode == BoundMode::ExactDigits) {
        const SigmaNuExact sn = sigma_nu_exact(n, d);
        p.sigma = static_cast<double>(sn.sigma);
        p.nu = static_cast<double>(sn.nu);
    } else {
        const SigmaNuClosed sn = sigma_nu_closed(n, d);
        p.sigma = sn.sigma;
        p.nu = sn.nu;
    }
    return p;
}

double effective_log2_cd(const BoundParams& p) {
    return log2_bochi_constant(p.d, p.forced_multi ? 2 : p.r);
}

}  // namespace

CertifiedInterval certify(const MatrixSet& s, std::uint64_t n, NormKind kind, BoundMode mode,
                          const CertifyOptions& opts) {
    if (n < 1) throw std::invalid_argument("certify: n must be >= 1");
    if (!is_induced(kind)) {
        throw std::invalid_argument("certify: MaxEntry norm rejected, induced norm required");
    }
    const int d = s.dim();
    const int r = s.size();

    CertifiedInterval out;
    out.n = n;
    out.norm = kind;
    out.mode = mode;

    if (d == 1) {
        // Outside the theorem ("given d >= 2"): rho of a 1x1 set is exactly
        // the max entry modulus, returned as a degenerate interval.
        double rho = 0.0;
        for (const ComplexMatrix& m : s.members()) rho = std::max(rho, std::abs(m(0, 0)));
        out.lower = out.upper = rho;
        out.lower_valid = out.upper_valid = true;
        out.exact_zero = (rho == 0.0);
        out.set_norm_value = rho;
        out.params = BoundParams{.d = 1, .r = r, .n = n, .c_d = 1.0, .sigma = 0.0, .nu = 0.0,
                                 .mode = mode, .forced_multi = false};
        out.d_power = power_set_norm(s, 1, kind, opts.budget);
        out.n_power = power_set_norm(s, n, kind, opts.budget);
        return out;
    }

    out.params = make_params(d, r, n, mode, opts.force_multi_constant);
    out.set_norm_value = set_norm(s, kind);
    out.d_power = power_set_norm(s, static_cast<std::uint64_t>(d), kind, opts.budget);
    out.n_power = power_set_norm(s, n, kind, opts.budget);

    // Exact-zero shortcut: all d-products vanish iff rho = 0.
    if (out.d_power.exact && out.d_power.mantissa == 0.0) {
        out.exact_zero = true;
        out.lower = out.upper = 0.0;
        out.lower_valid = out.upper_valid = true;
        return out;
    }

    if (out.n_power.exact) {
        out.upper = std::exp2(out.n_power.log2_norm() / static_cast<double>(n));
        out.upper_valid = true;
    }
    if (out.n_power.exact && out.d_power.exact) {
        const double ratio_log2 = static_cast<double>(d) * std::log2(out.set_norm_value) -
                                  out.d_power.log2_norm();
        const double exponent = (out.n_power.log2_norm() - out.params.sigma * effective_log2_cd(out.params) -
                                 out.params.nu * ratio_log2) /
                                static_cast<double>(n);
        out.lower = std::max(0.0, std::exp2(exponent));
        out.lower_valid = true;
    }
    return out;
}

BoundSequence sweep(const MatrixSet& s, std::uint64_t n_max, NormKind kind, BoundMode mode,
                    const CertifyOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("sweep: n_max must be >= 1");
    BoundSequence seq;
    seq.intervals.reserve(static_cast<std::size_t>(n_max));
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        CertifiedInterval iv;
        try {
            iv = certify(s, n, kind, mode, opts);
        } catch (const std::overflow_error&) {
            // Digit sums overflowed at this n; record an empty interval and
            // keep sweeping (ClosedForm remains available to the caller).
            iv.n = n;
            iv.norm = kind;
            iv.mode = mode;
        }
        if (iv.lower_valid) seq.best_lower = std::max(seq.best_lower, iv.lower);
        if (iv.upper_valid) seq.best_upper = std::min(seq.best_upper, iv.upper);
        seq.all_sides_valid = seq.all_sides_valid && iv.lower_valid && iv.upper_valid;
        seq.intervals.push_back(std::move(iv));
    }
    return seq;
}

BochiReport bochi_check(const MatrixSet& s, double rho_ref, NormKind kind,
                        const CertifyOptions& opts) {
    if (rho_ref < 0.0 || !std::isfinite(rho_ref)) {
        throw std::invalid_argument("bochi_check: rho_ref must be finite and >= 0");
    }
    const int d = s.dim();
    if (d < 2) throw std::invalid_argument("bochi_check: requires d >= 2");
    const int r = s.size();

    BochiReport rep;
    rep.d = d;
    rep.r = r;
    rep.rho_ref = rho_ref;
    const bool forced = opts.force_multi_constant && r == 1;
    rep.c_d = bochi_constant(d, forced ? 2 : r);
    rep.set_norm_value = set_norm(s, kind);

    const PowerNormResult d_power = power_set_norm(s, static_cast<std::uint64_t>(d), kind,
                                                   opts.budget);
    if (!d_power.exact) throw BudgetExhausted("bochi_check: ||S^d|| enumeration exhausted");

    const double lhs_log2 = d_power.log2_norm();
    const double rhs_log2 = log2_bochi_constant(d, forced ? 2 : r) + std::log2(rho_ref) +
                            static_cast<double>(d - 1) * std::log2(rep.set_norm_value);
    rep.lhs = d_power.value();
    rep.rhs = rep.c_d * rho_ref * std::pow(rep.set_norm_value, static_cast<double>(d - 1));
    rep.holds = lhs_log2 <= rhs_log2 + std::log2(1.0 + 1e-9) || lhs_log2 == -kInf;
    return rep;
}

std::vector<OmegaStep> omega_recursion_check(const MatrixSet& s, double rho_ref, int k_max,
                                             NormKind kind, const CertifyOptions& opts) {
    if (!(rho_ref > 0.0) || !std::isfinite(rho_ref)) {
        throw std::invalid_argument("omega_recursion_check: rho_ref must be finite and > 0");
    }
    if (k_max < 0) throw std::invalid_argument("omega_recursion_check: k_max must be >= 0");
    const int d = s.dim();
    if (d < 2) throw std::invalid_argument("omega_recursion_check: requires d >= 2");

    const double sn = set_norm(s, kind);
    const PowerNormResult d_power = power_set_norm(s, static_cast<std::uint64_t>(d), kind,
                                                   opts.budget);
    if (!d_power.exact) {
        throw BudgetExhausted("omega_recursion_check: ||S^d|| enumeration exhausted");
    }
    const double ratio_log2 = static_cast<double>(d) * std::log2(sn) - d_power.log2_norm();
    const double log2_cd = log2_bochi_constant(d, opts.force_multi_constant && s.size() == 1
                                                      ? 2
                                                      : s.size());
    const double log2_rho = std::log2(rho_ref);

    std::vector<OmegaStep> steps;
    steps.reserve(static_cast<std::size_t>(k_max) + 1);
    std::uint64_t nk = 1;          // d^k
    std::uint64_t coef_sum = 0;    // sum_{i<=k} (d-1)^i
    std::uint64_t q_pow = 1;       // (d-1)^k
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            nk = checked_mul(nk, static_cast<std::uint64_t>(d), "omega_recursion_check");
            q_pow = checked_mul(q_pow, static_cast<std::uint64_t>(d) - 1, "omega_recursion_check");
        }
        coef_sum = checked_add(coef_sum, q_pow, "omega_recursion_check");

        const PowerNormResult nk_power = power_set_norm(s, nk, kind, opts.budget);
        if (!nk_power.exact) {
            throw BudgetExhausted("omega_recursion_check: ||S^(d^k)|| enumeration exhausted at k=" +
                                  std::to_string(k));
        }
        OmegaStep step;
        step.k = k;
        step.n = nk;
        step.lhs_log2 = nk_power.log2_norm() - static_cast<double>(nk) * log2_rho;
        step.rhs_log2 = static_cast<double>(coef_sum) * log2_cd +
                        static_cast<double>(q_pow) * ratio_log2;
        step.holds = step.lhs_log2 <= step.rhs_log2 + 1e-9 * std::max(1.0, std::abs(step.rhs_log2));
        steps.push_back(step);
    }
    return steps;
}

}  // namespace jsr
