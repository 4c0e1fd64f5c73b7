#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "jsrbounds/linalg.hpp"

// Exact evaluation of the semigroup power norm ||S^n|| = max over all
// n-fold products, nilpotency detection, and a spectral-radius-based lower
// estimate used as a cross-check oracle.

namespace jsr {

/// Nonempty finite set of same-dimension matrices. S^0 = I by convention.
class MatrixSet {
public:
    explicit MatrixSet(std::vector<ComplexMatrix> members);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(members_.size()); }  // the set cardinality r
    const ComplexMatrix& member(int i) const { return members_[static_cast<std::size_t>(i)]; }
    const std::vector<ComplexMatrix>& members() const { return members_; }

    /// Entry-wise scaling by the exact power of two 2^e.
    MatrixSet scaled_pow2(int e) const;

private:
    int dim_;
    std::vector<ComplexMatrix> members_;
};

/// A word over member indices with its realized product and norm. The
/// product composes right to left: indices (i_1,...,i_n) realize
/// A_{i_n} ... A_{i_2} A_{i_1}.
struct ProductWord {
    std::vector<int> indices;
    ComplexMatrix value;
    double norm = 0.0;
};

ProductWord realize_word(const MatrixSet& s, std::span<const int> indices, NormKind kind);

/// Enumeration resource limit, counted in word extensions (one matrix
/// product + one norm evaluation each).
struct EnumBudget {
    std::uint64_t max_nodes = 10'000'000;
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Result of a power-norm evaluation, carried as an exact pair
/// (mantissa, exp2_shift) with norm = mantissa * 2^exp2_shift: the mantissa
/// is the max norm over the pre-scaled products and the shift restores the
/// scaling, so long products neither overflow nor underflow and value() is
/// exact whenever the norm is representable.
struct PowerNormResult {
    double mantissa = 0.0;        // 0 when no full-length word completed
    std::int64_t exp2_shift = 0;
    bool exact = true;            // enumeration completed within budget
    std::uint64_t nodes = 0;      // extensions consumed
    std::vector<int> best_word;   // a maximizing word; empty if none completed

    double log2_norm() const {
        if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log2(mantissa) + static_cast<double>(exp2_shift);
    }
    double value() const {
        if (mantissa == 0.0) return 0.0;
        const std::int64_t s = exp2_shift < -5000 ? -5000 : (exp2_shift > 5000 ? 5000 : exp2_shift);
        return std::ldexp(mantissa, static_cast<int>(s));
    }
};

/// max over members of matrix_norm. Rejects MaxEntry.
double set_norm(const MatrixSet& s, NormKind kind);

/// Exact max of ||P|| over all r^n products P of length n.
///
/// Depth-first extension of product words in member-index order, with
/// branch-and-bound pruning: a prefix P with m factors remaining cannot
/// beat the running best once ||P|| * set_norm(S)^m falls below it
/// (submultiplicativity across the split). A subtree is only discarded
/// when its bound is strictly below an already attained full-length word,
/// with a small relative margin absorbing floating-point drift, so the
/// result equals the unpruned enumeration exactly.
///
/// Members are pre-scaled by an exact power of two near 1/set_norm(S) to
/// keep intermediate norms near 1; the exponent is restored in log2_norm.
///
/// On budget exhaustion the result is flagged non-exact and log2_norm holds
/// the best completed word so far: a certified lower estimate of ||S^n||.
PowerNormResult power_set_norm(const MatrixSet& s, std::uint64_t n, NormKind kind,
                               const EnumBudget& budget = {});

/// True iff every entry of every product of length dim has modulus <= tol.
/// With tol = 0 this is the exact criterion: the set is nilpotent iff all
/// dim-fold products vanish iff the joint spectral radius is zero.
/// Throws BudgetExhausted if r^dim exceeds the node budget undecided.
bool nilpotency_check(const MatrixSet& s, double tol = 0.0, const EnumBudget& budget = {});

/// max over product lengths 1..n_max and all words P of that length of
/// eigen_spectral_radius(P)^(1/len). Always a lower bound on the joint
/// spectral radius; used for consistency testing only. Requires dim <= 16.
double gsr_lower_estimate(const MatrixSet& s, int n_max, const EnumBudget& budget = {});

}  // namespace jsr
