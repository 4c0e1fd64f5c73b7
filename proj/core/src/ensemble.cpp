#include "jsrbounds/ensemble.hpp"

namespace jsr {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t DiscEnsemble::block_seed(std::uint64_t seed, int d, int r) {
    std::uint64_t x = splitmix64(seed);
    x = splitmix64(x ^ static_cast<std::uint64_t>(d));
    x = splitmix64(x ^ static_cast<std::uint64_t>(r));
    return x;
}

double DiscEnsemble::uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double DiscEnsemble::uniform_sym() { return 2.0 * uniform01() - 1.0; }

Complex DiscEnsemble::unit_disc() {
    for (;;) {
        const double re = uniform_sym();
        const double im = uniform_sym();
        if (re * re + im * im <= 1.0) return Complex{re, im};
    }
}

ComplexMatrix DiscEnsemble::matrix(int d) {
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = unit_disc();
    }
    return m;
}

MatrixSet DiscEnsemble::set(int d, int r) {
    std::vector<ComplexMatrix> members;
    members.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) members.push_back(matrix(d));
    return MatrixSet(std::move(members));
}

MatrixSet DiscEnsemble::non_nilpotent_set(int d, int r) {
    for (;;) {
        MatrixSet s = set(d, r);
        if (!nilpotency_check(s)) return s;
    }
}

}  // namespace jsr
