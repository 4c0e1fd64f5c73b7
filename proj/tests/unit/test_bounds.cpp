#include <doctest.h>

#include <cmath>

#include "jsrbounds/bounds.hpp"
#include "jsrbounds/ensemble.hpp"
#include "support/oracles.hpp"

using jsr::BoundMode;
using jsr::Complex;
using jsr::ComplexMatrix;
using jsr::MatrixSet;
using jsr::NormKind;
using jsr::testing::rel_close;

namespace {

ComplexMatrix m2(double a, double b, double c, double d) {
    return ComplexMatrix(2, {Complex{a, 0}, Complex{b, 0}, Complex{c, 0}, Complex{d, 0}});
}

ComplexMatrix diag2(double a, double b) {
    const Complex d[] = {Complex{a, 0}, Complex{b, 0}};
    return ComplexMatrix::diagonal(d);
}

MatrixSet scale_set(const MatrixSet& s, double c) {
    std::vector<ComplexMatrix> members;
    for (const ComplexMatrix& m : s.members()) {
        ComplexMatrix cm(m.dim());
        for (int i = 0; i < m.dim(); ++i) {
            for (int j = 0; j < m.dim(); ++j) cm(i, j) = c * m(i, j);
        }
        members.push_back(std::move(cm));
    }
    return MatrixSet(std::move(members));
}

const MatrixSet kDiag21({diag2(2, 1)});
const MatrixSet kNilpotentPair({m2(0, 1, 0, 0), m2(0, 2, 0, 0)});

}  // namespace

TEST_CASE("bochi_constant") {
    CHECK(jsr::bochi_constant(2, 1) == 3.0);
    CHECK(jsr::bochi_constant(2, 2) == 8.0);
    CHECK(rel_close(jsr::bochi_constant(3, 5), 140.29611541307906, 1e-13));
    CHECK_THROWS_AS(jsr::bochi_constant(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(jsr::bochi_constant(2, 0), std::invalid_argument);

    for (int d = 2; d <= 12; ++d) {
        for (int r : {1, 2, 7}) {
            CHECK(rel_close(std::exp2(jsr::log2_bochi_constant(d, r)), jsr::bochi_constant(d, r),
                            1e-12));
        }
    }
}

TEST_CASE("base_d_digits hand values") {
    const jsr::DigitDecomposition d42 = jsr::base_d_digits(4, 2);
    CHECK(d42.digits == std::vector<std::uint32_t>{0, 0, 1});
    const jsr::DigitDecomposition d53 = jsr::base_d_digits(5, 3);
    CHECK(d53.digits == std::vector<std::uint32_t>{2, 1});
    const jsr::DigitDecomposition d17 = jsr::base_d_digits(1, 7);
    CHECK(d17.digits == std::vector<std::uint32_t>{1});
    CHECK_THROWS_AS(jsr::base_d_digits(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(jsr::base_d_digits(4, 1), std::invalid_argument);
}

TEST_CASE("digit decomposition round-trips") {
    jsr::DiscEnsemble ens(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint64_t n = 1 + static_cast<std::uint64_t>(ens.uniform01() * 1e9);
        const int d = 2 + static_cast<int>(ens.uniform01() * 63.0);
        const jsr::DigitDecomposition dec = jsr::base_d_digits(n, d);
        CHECK(dec.reconstruct() == n);
        CHECK(dec.digits.back() >= 1);
        CHECK(dec.digits.back() <= static_cast<std::uint32_t>(d - 1));
        for (std::uint32_t digit : dec.digits) CHECK(digit <= static_cast<std::uint32_t>(d - 1));
    }
    CHECK(jsr::base_d_digits(1000000000ull, 64).reconstruct() == 1000000000ull);
    CHECK(jsr::base_d_digits(1ull << 40, 2).reconstruct() == 1ull << 40);
}

TEST_CASE("sigma_nu_exact hand values") {
    const jsr::SigmaNuExact s42 = jsr::sigma_nu_exact(4, 2);
    CHECK(s42.sigma == 3);
    CHECK(s42.nu == 1);
    const jsr::SigmaNuExact s53 = jsr::sigma_nu_exact(5, 3);
    CHECK(s53.sigma == 5);
    CHECK(s53.nu == 4);
    const jsr::SigmaNuExact s12 = jsr::sigma_nu_exact(1, 2);
    CHECK(s12.sigma == 1);
    CHECK(s12.nu == 1);
    // powers of two in base 2: sigma(2^k) = k+1, nu = 1
    for (int k = 0; k <= 20; ++k) {
        const jsr::SigmaNuExact s = jsr::sigma_nu_exact(1ull << k, 2);
        CHECK(s.sigma == static_cast<std::uint64_t>(k + 1));
        CHECK(s.nu == 1);
    }
}

TEST_CASE("sigma_nu_closed hand values") {
    const jsr::SigmaNuClosed c12 = jsr::sigma_nu_closed(1, 2);
    CHECK(c12.sigma == 1.0);
    CHECK(c12.nu == 1.0);
    const jsr::SigmaNuClosed c42 = jsr::sigma_nu_closed(4, 2);
    CHECK(rel_close(c42.sigma, 6.0, 1e-12));
    CHECK(rel_close(c42.nu, 3.0, 1e-12));
    const jsr::SigmaNuClosed c53 = jsr::sigma_nu_closed(5, 3);
    CHECK(rel_close(c53.sigma, 22.084672307673642, 1e-12));
    CHECK(rel_close(c53.nu, 11.042336153836821, 1e-12));
}

TEST_CASE("mode dominance sampled: exact digit sums below closed forms") {
    jsr::DiscEnsemble ens(11);
    for (int d = 2; d <= 10; ++d) {
        for (int trial = 0; trial < 300; ++trial) {
            const std::uint64_t n = 1 + static_cast<std::uint64_t>(ens.uniform01() * 1e4);
            const jsr::SigmaNuExact ex = jsr::sigma_nu_exact(n, d);
            const jsr::SigmaNuClosed cl = jsr::sigma_nu_closed(n, d);
            CHECK(static_cast<double>(ex.sigma) <= cl.sigma);
            CHECK(static_cast<double>(ex.nu) <= cl.nu);
        }
    }
}

TEST_CASE("certify: diag(2,1) at n = 4") {
    const jsr::CertifiedInterval exact =
        jsr::certify(kDiag21, 4, NormKind::InducedInf, BoundMode::ExactDigits);
    CHECK(exact.upper == 2.0);  // ||A^4||^(1/4) exactly
    CHECK(exact.lower_valid);
    CHECK(exact.upper_valid);
    CHECK(!exact.exact_zero);
    CHECK(exact.params.c_d == 3.0);
    CHECK(exact.params.sigma == 3.0);
    CHECK(exact.params.nu == 1.0);
    CHECK(rel_close(exact.lower, 0.8773826753016616, 1e-12));  // 2 * 3^(-3/4)
    CHECK(exact.set_norm_value == 2.0);
    CHECK(exact.d_power.value() == 4.0);
    CHECK(exact.n_power.value() == 16.0);

    const jsr::CertifiedInterval closed =
        jsr::certify(kDiag21, 4, NormKind::InducedInf, BoundMode::ClosedForm);
    CHECK(closed.upper == 2.0);
    CHECK(rel_close(closed.lower, 0.3849001794597505, 1e-12));  // 2 * 3^(-3/2)

    // tighter exact-digit lower dominates the closed-form lower
    CHECK(exact.lower >= closed.lower);
}

TEST_CASE("certify: nilpotent pair is exact zero") {
    for (std::uint64_t n : {1ull, 2ull, 5ull}) {
        const jsr::CertifiedInterval iv =
            jsr::certify(kNilpotentPair, n, NormKind::InducedInf, BoundMode::ExactDigits);
        CHECK(iv.exact_zero);
        CHECK(iv.lower == 0.0);
        CHECK(iv.upper == 0.0);
        CHECK(iv.lower_valid);
        CHECK(iv.upper_valid);
    }
}

TEST_CASE("certify: identity singleton at n = 1") {
    const MatrixSet id({ComplexMatrix::identity(2)});
    const jsr::CertifiedInterval iv =
        jsr::certify(id, 1, NormKind::InducedInf, BoundMode::ExactDigits);
    CHECK(iv.upper == 1.0);
    CHECK(rel_close(iv.lower, 1.0 / 3.0, 1e-12));  // sigma = nu = 1, ratio = 1
}

TEST_CASE("certify: d = 1 degenerate interval") {
    const MatrixSet s({ComplexMatrix(1, {Complex{3, -4}})});
    const jsr::CertifiedInterval iv =
        jsr::certify(s, 7, NormKind::InducedInf, BoundMode::ExactDigits);
    CHECK(iv.lower == 5.0);
    CHECK(iv.upper == 5.0);
    CHECK(!iv.exact_zero);

    const jsr::CertifiedInterval zero =
        jsr::certify(MatrixSet({ComplexMatrix(1)}), 3, NormKind::InducedOne,
                     BoundMode::ClosedForm);
    CHECK(zero.exact_zero);
    CHECK(zero.upper == 0.0);
}

TEST_CASE("certify input validation") {
    CHECK_THROWS_AS(jsr::certify(kDiag21, 0, NormKind::InducedInf, BoundMode::ExactDigits),
                    std::invalid_argument);
    CHECK_THROWS_AS(jsr::certify(kDiag21, 2, NormKind::MaxEntry, BoundMode::ExactDigits),
                    std::invalid_argument);
}

TEST_CASE("certify: forced multi constant weakens the singleton bound") {
    jsr::CertifyOptions opts;
    opts.force_multi_constant = true;
    const jsr::CertifiedInterval forced =
        jsr::certify(kDiag21, 4, NormKind::InducedInf, BoundMode::ExactDigits, opts);
    CHECK(forced.params.c_d == 8.0);  // 2^(3*2/2)
    CHECK(forced.params.forced_multi);
    const jsr::CertifiedInterval plain =
        jsr::certify(kDiag21, 4, NormKind::InducedInf, BoundMode::ExactDigits);
    CHECK(forced.lower < plain.lower);
    CHECK(forced.upper == plain.upper);
}

TEST_CASE("certify: budget exhaustion invalidates sides without throwing") {
    jsr::DiscEnsemble ens(3);
    const MatrixSet s = ens.set(2, 2);
    jsr::CertifyOptions opts;
    opts.budget.max_nodes = 6;  // not enough for n = 12 words
    const jsr::CertifiedInterval iv =
        jsr::certify(s, 12, NormKind::InducedInf, BoundMode::ExactDigits, opts);
    CHECK(!iv.upper_valid);
    CHECK(!iv.lower_valid);
    CHECK(!iv.exact_zero);
}

TEST_CASE("sweep: diag(2,1) uppers pin at 2") {
    const jsr::BoundSequence seq =
        jsr::sweep(kDiag21, 8, NormKind::InducedInf, BoundMode::ExactDigits);
    REQUIRE(seq.intervals.size() == 8);
    for (const auto& iv : seq.intervals) {
        CHECK(iv.upper == 2.0);
        CHECK(iv.lower_valid);
    }
    CHECK(seq.best_upper == 2.0);
    CHECK(seq.best_lower <= seq.best_upper);
    // best_upper is non-increasing in n_max
    const jsr::BoundSequence shorter =
        jsr::sweep(kDiag21, 3, NormKind::InducedInf, BoundMode::ExactDigits);
    CHECK(seq.best_upper <= shorter.best_upper);
}

TEST_CASE("sweep: lower bound along n = 2^k is strictly increasing") {
    // sigma_2(2^k) = k+1, so lower(2^k) = 2 * 3^(-(k+1)/2^k) with ratio 1
    double prev = 0.0;
    for (int k = 2; k <= 10; ++k) {
        const jsr::CertifiedInterval iv = jsr::certify(kDiag21, 1ull << k, NormKind::InducedInf,
                                                       BoundMode::ExactDigits);
        const double expect = 2.0 * std::pow(3.0, -static_cast<double>(k + 1) /
                                                      static_cast<double>(1ull << k));
        CHECK(rel_close(iv.lower, expect, 1e-12));
        CHECK(iv.lower > prev);
        prev = iv.lower;
    }
    CHECK(prev > 1.97);  // n = 1024
}

TEST_CASE("sweep: zero set is exact zero at every n") {
    const jsr::BoundSequence seq = jsr::sweep(MatrixSet({ComplexMatrix(2)}), 4,
                                              NormKind::InducedOne, BoundMode::ExactDigits);
    for (const auto& iv : seq.intervals) {
        CHECK(iv.exact_zero);
        CHECK(iv.lower == 0.0);
        CHECK(iv.upper == 0.0);
    }
    CHECK(seq.best_upper == 0.0);
}

TEST_CASE("bochi_check hand instances") {
    const jsr::BochiReport r1 = jsr::bochi_check(kDiag21, 2.0, NormKind::InducedInf);
    CHECK(r1.holds);  // 4 <= 3 * 2 * 2
    CHECK(r1.lhs == 4.0);
    CHECK(r1.rhs == 12.0);

    const jsr::BochiReport r2 =
        jsr::bochi_check(MatrixSet({ComplexMatrix::identity(2)}), 1.0, NormKind::InducedInf);
    CHECK(r2.holds);  // 1 <= 3

    const jsr::BochiReport r3 =
        jsr::bochi_check(MatrixSet({m2(0, 1, 0, 0)}), 0.0, NormKind::InducedInf);
    CHECK(r3.holds);  // degenerate 0 <= 0
    CHECK(r3.lhs == 0.0);
    CHECK(r3.rhs == 0.0);
}

TEST_CASE("omega recursion hand instances") {
    const auto steps = jsr::omega_recursion_check(kDiag21, 2.0, 2, NormKind::InducedInf);
    REQUIRE(steps.size() == 3);
    // k = 0: omega_1 = 1 <= C_2 * (4/4) = 3
    CHECK(steps[0].holds);
    CHECK(steps[0].lhs_log2 == 0.0);
    CHECK(rel_close(steps[0].rhs_log2, std::log2(3.0), 1e-12));
    for (const auto& st : steps) CHECK(st.holds);

    const MatrixSet id({ComplexMatrix::identity(2)});
    for (const auto& st : jsr::omega_recursion_check(id, 1.0, 2, NormKind::InducedTwo)) {
        CHECK(st.holds);
    }
    // cI with rho_ref = c behaves like the identity by scaling
    const MatrixSet cid({diag2(2.5, 2.5)});
    for (const auto& st : jsr::omega_recursion_check(cid, 2.5, 2, NormKind::InducedInf)) {
        CHECK(st.holds);
    }

    CHECK_THROWS_AS(jsr::omega_recursion_check(kDiag21, 0.0, 1, NormKind::InducedInf),
                    std::invalid_argument);
}

TEST_CASE("ratio term sanity: ||S||^d / ||S^d|| >= 1") {
    jsr::DiscEnsemble ens(23);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(ens.uniform01() * 2.0);
        const int r = 1 + static_cast<int>(ens.uniform01() * 2.0);
        const MatrixSet s = ens.set(d, r);
        const double sn = jsr::set_norm(s, NormKind::InducedOne);
        const double dp = jsr::power_set_norm(s, static_cast<std::uint64_t>(d),
                                              NormKind::InducedOne)
                              .value();
        if (dp == 0.0) continue;
        CHECK(std::pow(sn, d) / dp >= 1.0 - 1e-9);
    }
}

TEST_CASE("scaling equivariance of certified intervals") {
    jsr::DiscEnsemble ens(29);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(ens.uniform01() * 2.0);
        const int r = 1 + static_cast<int>(ens.uniform01() * 2.0);
        const MatrixSet s = ens.non_nilpotent_set(d, r);
        const std::uint64_t n = 1 + static_cast<std::uint64_t>(ens.uniform01() * 6.0);
        const jsr::CertifiedInterval base =
            jsr::certify(s, n, NormKind::InducedInf, BoundMode::ExactDigits);
        for (double c : {0.5, 3.0, 10.0}) {
            const jsr::CertifiedInterval scaled =
                jsr::certify(scale_set(s, c), n, NormKind::InducedInf, BoundMode::ExactDigits);
            CHECK(rel_close(scaled.lower, c * base.lower, 1e-9));
            CHECK(rel_close(scaled.upper, c * base.upper, 1e-9));
        }
    }
}

TEST_CASE("enclosure against the eigen oracle (singletons)") {
    jsr::DiscEnsemble ens(101);
    int done = 0;
    while (done < 50) {
        const int d = 2 + static_cast<int>(ens.uniform01() * 3.0);
        const MatrixSet s = ens.non_nilpotent_set(d, 1);
        const double rho = jsr::eigen_spectral_radius(s.member(0));
        if (rho <= 0.0) continue;
        ++done;
        for (NormKind k : {NormKind::InducedOne, NormKind::InducedInf, NormKind::InducedTwo}) {
            for (BoundMode mode : {BoundMode::ExactDigits, BoundMode::ClosedForm}) {
                for (std::uint64_t n = 1; n <= 6; ++n) {
                    const jsr::CertifiedInterval iv = jsr::certify(s, n, k, mode);
                    REQUIRE(iv.lower_valid);
                    REQUIRE(iv.upper_valid);
                    CHECK(iv.lower <= rho * (1.0 + 1e-8));
                    CHECK(rho <= iv.upper * (1.0 + 1e-8));
                }
            }
        }
    }
}

TEST_CASE("cross-oracle consistency for pairs") {
    jsr::DiscEnsemble ens(131);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(ens.uniform01() * 2.0);
        const MatrixSet s = ens.non_nilpotent_set(d, 2);
        const jsr::BoundSequence seq =
            jsr::sweep(s, 6, NormKind::InducedInf, BoundMode::ExactDigits);
        const double gsr = jsr::gsr_lower_estimate(s, 6);
        CHECK(std::max(seq.best_lower, gsr) <= seq.best_upper * (1.0 + 1e-9));
    }
}

TEST_CASE("bound mode names round-trip") {
    CHECK(jsr::parse_bound_mode(jsr::mode_name(BoundMode::ExactDigits)) == BoundMode::ExactDigits);
    CHECK(jsr::parse_bound_mode(jsr::mode_name(BoundMode::ClosedForm)) == BoundMode::ClosedForm);
    CHECK_THROWS_AS(jsr::parse_bound_mode("loose"), std::invalid_argument);
}
