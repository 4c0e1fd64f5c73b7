#include "jsrbounds/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jsr {

namespace {

// Relative inflation applied to prune bounds. The split inequality
// ||PQ|| <= ||P|| ||Q|| holds for exact values; computed norms of deeper
// products can exceed the computed bound by a few ulps per factor, so the
// bound is widened before comparing against the attained best. This only
// weakens pruning and keeps the pruned result identical to brute force.
constexpr double kPruneMargin = 1e-9;

ComplexMatrix scale_matrix_pow2(const ComplexMatrix& a, int e) {
    const int d = a.dim();
    ComplexMatrix out(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Complex& z = a(i, j);
            out(i, j) = Complex{std::ldexp(z.real(), e), std::ldexp(z.imag(), e)};
        }
    }
    return out;
}

void require_induced(NormKind kind, const char* who) {
    if (!is_induced(kind)) {
        throw std::invalid_argument(std::string(who) +
                                    ": MaxEntry is not submultiplicative, induced norm required");
    }
}

struct EnumState {
    EnumState(const MatrixSet& set_in, NormKind kind_in, std::uint64_t n_in,
              std::uint64_t max_nodes_in)
        : set(set_in), kind(kind_in), n(n_in), max_nodes(max_nodes_in) {}

    const MatrixSet& set;
    NormKind kind;
    std::uint64_t n;
    std::uint64_t max_nodes;
    std::vector<double> suffix_bound;  // set_norm(scaled)^m for m remaining factors

    std::uint64_t nodes = 0;
    bool exhausted = false;
    bool attained = false;
    double best = 0.0;
    std::vector<int> word;
    std::vector<int> best_word;

    void extend(const ComplexMatrix& prefix, std::uint64_t len) {
        const int r = set.size();
        for (int c = 0; c < r && !exhausted; ++c) {
            if (nodes == max_nodes) {
                exhausted = true;
                return;
            }
            ++nodes;
            const ComplexMatrix next =
                (len == 0) ? set.member(c) : mat_mul(set.member(c), prefix);
            const double norm = matrix_norm(next, kind);
            word.push_back(c);
            if (len + 1 == n) {
                if (!attained || norm > best) {
                    best = norm;
                    attained = true;
                    best_word = word;
                }
            } else {
                const double bound = norm * suffix_bound[static_cast<std::size_t>(n - len - 1)];
                const bool prunable = attained && bound * (1.0 + kPruneMargin) < best;
                if (!prunable) extend(next, len + 1);
            }
            word.pop_back();
        }
    }
};

}  // namespace

MatrixSet::MatrixSet(std::vector<ComplexMatrix> members) {
    if (members.empty()) throw std::invalid_argument("MatrixSet: at least one member required");
    dim_ = members.front().dim();
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].dim() != dim_) {
            throw std::invalid_argument("MatrixSet: member " + std::to_string(i) +
                                        " has dim " + std::to_string(members[i].dim()) +
                                        ", expected " + std::to_string(dim_));
        }
    }
    members_ = std::move(members);
}

MatrixSet MatrixSet::scaled_pow2(int e) const {
    std::vector<ComplexMatrix> scaled;
    scaled.reserve(members_.size());
    for (const ComplexMatrix& m : members_) scaled.push_back(scale_matrix_pow2(m, e));
    return MatrixSet(std::move(scaled));
}

ProductWord realize_word(const MatrixSet& s, std::span<const int> indices, NormKind kind) {
    if (indices.empty()) throw std::invalid_argument("realize_word: empty word");
    for (int i : indices) {
        if (i < 0 || i >= s.size()) throw std::invalid_argument("realize_word: index out of range");
    }
    ComplexMatrix value = s.member(indices[0]);
    for (std::size_t k = 1; k < indices.size(); ++k) value = mat_mul(s.member(indices[k]), value);
    return ProductWord{std::vector<int>(indices.begin(), indices.end()), value,
                       matrix_norm(value, kind)};
}

double set_norm(const MatrixSet& s, NormKind kind) {
    require_induced(kind, "set_norm");
    double best = 0.0;
    for (const ComplexMatrix& m : s.members()) best = std::max(best, matrix_norm(m, kind));
    return best;
}

PowerNormResult power_set_norm(const MatrixSet& s, std::uint64_t n, NormKind kind,
                               const EnumBudget& budget) {
    require_induced(kind, "power_set_norm");
    PowerNormResult result;

    if (n == 0) {  // S^0 = I, induced norm 1
        result.mantissa = 1.0;
        return result;
    }
    const double sn = set_norm(s, kind);
    if (sn == 0.0) return result;  // zero set: every product is zero
    if (n > budget.max_nodes) {
        result.exact = false;
        return result;
    }

    // Rescale by the power of two that puts the scaled set norm in [0.5, 1).
    int e = 0;
    std::frexp(sn, &e);
    const MatrixSet scaled = s.scaled_pow2(-e);
    const double scaled_sn = std::ldexp(sn, -e);

    EnumState state(scaled, kind, n, budget.max_nodes);

    if (s.size() == 1) {
        // Single path: the chain of left-multiplications, no pruning needed.
        // Same accumulation order as the general enumeration.
        ComplexMatrix p = scaled.member(0);
        state.nodes = 1;
        for (std::uint64_t m = 1; m < n; ++m) {
            p = mat_mul(scaled.member(0), p);
            ++state.nodes;
        }
        state.best = matrix_norm(p, kind);
        state.attained = true;
        state.best_word.assign(n, 0);
    } else {
        state.suffix_bound.resize(static_cast<std::size_t>(n), 1.0);
        for (std::size_t m = 1; m < state.suffix_bound.size(); ++m) {
            state.suffix_bound[m] = state.suffix_bound[m - 1] * scaled_sn;
        }
        state.word.reserve(static_cast<std::size_t>(n));
        state.extend(scaled.member(0), 0);  // prefix argument unused at len 0
    }

    result.nodes = state.nodes;
    result.exact = !state.exhausted;
    if (state.attained) {
        result.mantissa = state.best;
        result.exp2_shift = static_cast<std::int64_t>(e) * static_cast<std::int64_t>(n);
        result.best_word = std::move(state.best_word);
    }
    return result;
}

bool nilpotency_check(const MatrixSet& s, double tol, const EnumBudget& budget) {
    if (tol < 0.0) throw std::invalid_argument("nilpotency_check: tol must be >= 0");
    const int d = s.dim();
    std::uint64_t nodes = 0;

    // All d-fold products must vanish entrywise (up to tol). Depth-first
    // over raw, unscaled products; early exit on the first fat entry.
    struct Walker {
        const MatrixSet& set;
        int depth_goal;
        double tol;
        std::uint64_t max_nodes;
        std::uint64_t& nodes;

        bool all_small(const ComplexMatrix& m) const {
            for (const Complex& z : m.entries()) {
                if (std::abs(z) > tol) return false;
            }
            return true;
        }
        // Returns false as soon as some full-length product has an entry > tol.
        bool walk(const ComplexMatrix& prefix, int len) {
            for (int c = 0; c < set.size(); ++c) {
                if (nodes == max_nodes) {
                    throw BudgetExhausted("nilpotency_check: r^d exceeds the node budget");
                }
                ++nodes;
                const ComplexMatrix next =
                    (len == 0) ? set.member(c) : mat_mul(set.member(c), prefix);
                if (len + 1 == depth_goal) {
                    if (!all_small(next)) return false;
                } else {
                    if (!walk(next, len + 1)) return false;
                }
            }
            return true;
        }
    };

    Walker w{s, d, tol, budget.max_nodes, nodes};
    return w.walk(s.member(0), 0);
}

double gsr_lower_estimate(const MatrixSet& s, int n_max, const EnumBudget& budget) {
    if (n_max < 1) throw std::invalid_argument("gsr_lower_estimate: n_max must be >= 1");
    if (s.dim() > 16) {
        throw std::invalid_argument("gsr_lower_estimate: eigen oracle limited to dim <= 16");
    }
    std::uint64_t nodes = 0;
    double best = 0.0;

    struct Walker {
        const MatrixSet& set;
        int n_max;
        std::uint64_t max_nodes;
        std::uint64_t& nodes;
        double& best;

        void walk(const ComplexMatrix& prefix, int len) {
            for (int c = 0; c < set.size(); ++c) {
                if (nodes == max_nodes) {
                    throw BudgetExhausted("gsr_lower_estimate: node budget exhausted");
                }
                ++nodes;
                const ComplexMatrix next =
                    (len == 0) ? set.member(c) : mat_mul(set.member(c), prefix);
                const double rho = eigen_spectral_radius(next);
                best = std::max(best, std::pow(rho, 1.0 / static_cast<double>(len + 1)));
                if (len + 1 < n_max) walk(next, len + 1);
            }
        }
    };

    Walker w{s, n_max, budget.max_nodes, nodes, best};
    w.walk(s.member(0), 0);
    return best;
}

}  // namespace jsr
