#pragma once

// Brute-force reference computations for small instances. These enumerate
// instead of eliminating, so they share no code path with the library.

#include "stmod/reps.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using stmod::Matrix;
using stmod::Module;
using stmod::PrimeField;
using stmod::Vec;

/// Calls f on every vector of F_p^n.
inline void each_vector(PrimeField k, std::size_t n, const std::function<void(const Vec&)>& f)
{
    Vec v(n, 0);
    for (;;) {
        f(v);
        std::size_t i = 0;
        while (i < n && ++v[i] == k.p())
            v[i++] = 0;
        if (i == n)
            return;
    }
}

inline Matrix from_flat(PrimeField k, std::size_t rows, std::size_t cols, const Vec& v)
{
    Matrix m(k, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = v[r * cols + c];
    return m;
}

/// Size of the row space, by enumerating all combinations of rows.
inline std::size_t row_space_size(const Matrix& a)
{
    std::set<Vec> seen;
    each_vector(a.field(), a.rows(), [&](const Vec& coeff) {
        Vec s(a.cols(), 0);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                s[c] = (s[c] + coeff[r] * a(r, c)) % a.field().p();
        seen.insert(s);
    });
    return seen.size();
}

inline std::size_t log_p(std::size_t size, unsigned p)
{
    std::size_t d = 0;
    while (size > 1) {
        size /= p;
        ++d;
    }
    return d;
}

inline std::size_t brute_rank(const Matrix& a)
{
    return log_p(row_space_size(a), a.field().p());
}

inline bool intertwines(const Module& m, const Module& n, const Matrix& f)
{
    for (std::size_t g = 0; g < m.group().order(); ++g)
        if (!(f * m.act(g) == n.act(g) * f))
            return false;
    return true;
}

/// Every kG-map m -> n, by testing all dim(n) x dim(m) matrices.
inline std::vector<Matrix> all_homs(const Module& m, const Module& n)
{
    std::vector<Matrix> out;
    const PrimeField k = m.field();
    each_vector(k, m.dim() * n.dim(), [&](const Vec& v) {
        Matrix f = from_flat(k, n.dim(), m.dim(), v);
        if (intertwines(m, n, f))
            out.push_back(std::move(f));
    });
    return out;
}

/// Additive closure of a set of matrices of one shape.
inline std::set<Vec> span_closure(PrimeField k, std::size_t size, const std::vector<Matrix>& gens)
{
    std::set<Vec> span{Vec(size, 0)};
    std::vector<Vec> frontier{Vec(size, 0)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (const auto& g : gens) {
                Vec w = v;
                for (std::size_t i = 0; i < size; ++i)
                    w[i] = (w[i] + g.entries()[i]) % k.p();
                if (span.insert(w).second)
                    next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return span;
}

struct StableDims {
    std::size_t hom = 0;
    std::size_t phom = 0;
    std::size_t stable() const { return hom - phom; }
};

/// Hom(m, n) and the maps factoring through kG, all by enumeration. Sums of
/// maps through kG are exactly the maps through kG^t, so the span of the
/// composites b o a is PHom.
inline StableDims brute_stable_dims(const Module& m, const Module& n)
{
    const PrimeField k = m.field();
    const Module free = stmod::regular_module(m.group_ptr(), k);
    const auto homs = all_homs(m, n);
    const auto in = all_homs(m, free);
    const auto out = all_homs(free, n);
    std::vector<Matrix> composites;
    for (const auto& b : out)
        for (const auto& a : in)
            composites.push_back(b * a);
    StableDims d;
    d.hom = log_p(homs.size(), k.p());
    d.phom = log_p(span_closure(k, m.dim() * n.dim(), composites).size(), k.p());
    return d;
}

/// Powers of (s - 1) on a module over a cyclic group, for block counting.
inline std::vector<std::size_t> jordan_blocks(const Module& m, stmod::Element s)
{
    const PrimeField k = m.field();
    const Matrix x = m.act(s) - Matrix::identity(k, m.dim());
    std::vector<std::size_t> ranks{m.dim()};
    Matrix power = Matrix::identity(k, m.dim());
    while (ranks.back() > 0) {
        power = power * x;
        ranks.push_back(brute_rank(power));
    }
    // number of blocks of size >= j is ranks[j-1] - ranks[j]
    std::vector<std::size_t> blocks;
    for (std::size_t j = ranks.size() - 1; j >= 1; --j) {
        const std::size_t at_least_j = ranks[j - 1] - ranks[j];
        const std::size_t at_least_next = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
        for (std::size_t c = 0; c < at_least_j - at_least_next; ++c)
            blocks.push_back(j);
    }
    return blocks;
}

inline Matrix random_matrix(PrimeField k, std::size_t rows, std::size_t cols, std::mt19937_64& rng)
{
    Matrix m(k, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = static_cast<stmod::Scalar>(rng() % k.p());
    return m;
}

} // namespace oracle
