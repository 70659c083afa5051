#include "oracles.hpp"

#include "stmod/stable.hpp"

#include <doctest.h>

#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

using namespace stmod;

namespace {

const PrimeField F2(2), F3(3);

Module random_cyclic(const GroupPtr& g, PrimeField k, std::size_t max_dim, std::mt19937_64& rng)
{
    std::vector<std::size_t> blocks;
    std::size_t total = 0;
    do {
        const std::size_t b = 1 + rng() % std::min(g->order(), max_dim - total);
        blocks.push_back(b);
        total += b;
    } while (total < max_dim && rng() % 2);
    const Module base = jordan_module(g, k, blocks);
    Matrix s = oracle::random_matrix(k, base.dim(), base.dim(), rng);
    while (!inverse(s))
        s = oracle::random_matrix(k, base.dim(), base.dim(), rng);
    return conjugate(base, s);
}

bool stably_iso(const StableCategory& cat, const Module& a, const Module& b)
{
    const auto r = cat.is_stable_iso(a, b, 50, 1);
    if (!r.isomorphic())
        return false;
    // witnesses must check out
    return cat.stably_equal(compose(*r.backward, *r.forward), ModuleMap::identity(a)) &&
           cat.stably_equal(compose(*r.forward, *r.backward), ModuleMap::identity(b));
}

/// dim of Omega^n k for a group of order q, from a minimal resolution with Betti numbers b_i.
std::size_t syzygy_dim_from_betti(std::size_t q, int n, const std::function<std::size_t(int)>& betti)
{
    long long d = 1;
    for (int i = 0; i < n; ++i)
        d = static_cast<long long>(q * betti(i)) - d;
    return static_cast<std::size_t>(d);
}

} // namespace

TEST_CASE("stable hom examples")
{
    const auto c2 = cyclic(2), c4 = cyclic(4);
    const StableCategory cat2(c2, F2);
    const StableHomSpace kk = cat2.stable_hom(cat2.trivial(), cat2.trivial());
    CHECK(kk.hom_dim() == 1);
    CHECK(kk.phom_dim() == 0);
    CHECK(kk.stable_dim() == 1);
    const auto brute = oracle::brute_stable_dims(cat2.trivial(), cat2.trivial());
    CHECK(brute.stable() == 1);

    const StableCategory cat4(c4, F2);
    const Module r = regular_module(c4, F2);
    for (std::size_t len = 1; len <= 4; ++len)
        CHECK(cat4.stable_hom(r, cyclic_module(c4, F2, len)).stable_dim() == 0);
    const Module m = cyclic_module(c4, F2, 2);
    const auto mm = cat4.stable_hom(m, m);
    CHECK_FALSE(mm.is_trivial(Matrix::identity(F2, 2)));
    CHECK(mm.stable_dim() == oracle::brute_stable_dims(m, m).stable());
    CHECK_THROWS_AS(StableCategory(cyclic(1), F2), std::invalid_argument);
    CHECK_THROWS_AS(StableCategory(cyclic(6), F2), std::invalid_argument);
    CHECK_THROWS_AS(StableCategory(cyclic(4), F3), std::invalid_argument);
}

TEST_CASE("stable hom dimensions agree with brute-force enumeration")
{
    std::mt19937_64 rng(21);
    for (const auto& g : {cyclic(2), cyclic(4)}) {
        const StableCategory cat(g, F2);
        for (int t = 0; t < 25; ++t) {
            const Module m = random_cyclic(g, F2, 1 + rng() % 3, rng);
            const Module n = random_cyclic(g, F2, 1 + rng() % 3, rng);
            const auto lib = cat.stable_hom(m, n);
            const auto brute = oracle::brute_stable_dims(m, n);
            CHECK(lib.hom_dim() == brute.hom);
            CHECK(lib.phom_dim() == brute.phom);
        }
    }
    const auto v4 = direct_product(cyclic(2), cyclic(2));
    const StableCategory cat(v4, F2);
    const Element a[] = {2};
    const Module l = induce(Subgroup(v4, a), trivial_module(Subgroup(v4, a).as_group(), F2));
    for (const auto& [x, y] : {std::pair{cat.trivial(), l}, std::pair{l, l}, std::pair{l, cat.trivial()}}) {
        const auto brute = oracle::brute_stable_dims(x, y);
        CHECK(cat.stable_hom(x, y).stable_dim() == brute.stable());
    }
}

TEST_CASE("stable triviality")
{
    const auto c2 = cyclic(2);
    const StableCategory cat(c2, F2);
    const Module k = cat.trivial(), r = regular_module(c2, F2);
    CHECK(cat.is_stably_trivial(ModuleMap::zero(k, k)));
    CHECK_FALSE(cat.is_stably_trivial(ModuleMap::identity(k)));
    CHECK(cat.is_stably_trivial(central_minus_one(r, CentralElement(c2, 1))));
}

TEST_CASE("syzygies")
{
    for (std::size_t n : {2u, 3u, 4u, 5u, 8u, 9u}) {
        const auto g = cyclic(n);
        const PrimeField k(prime_of_order(*g));
        const StableCategory cat(g, k);
        CHECK(cat.omega(cat.trivial()).dim() == n - 1);
        CHECK(cat.omega(regular_module(g, k)).dim() == 0);
        CHECK(stably_iso(cat, cat.omega_k(2), cat.trivial()));
        CHECK(stably_iso(cat, cat.omega_inverse(cat.omega(cat.trivial())), cat.trivial()));
        CHECK(cat.omega_k(-1).dim() == n - 1);
    }
    const StableCategory c2(cyclic(2), F2);
    for (int i = -4; i <= 4; ++i)
        CHECK(c2.omega_k(i).dim() == 1);
    const StableCategory c4(cyclic(4), F2);
    CHECK(c4.omega_k(1).dim() == 3);
}

TEST_CASE("syzygies of k over C2 x C2 follow the minimal resolution")
{
    const StableCategory cat(direct_product(cyclic(2), cyclic(2)), F2);
    for (int n = 1; n <= 5; ++n) {
        const Module w = cat.omega_k(n);
        const std::size_t expected = syzygy_dim_from_betti(4, n, [](int i) { return static_cast<std::size_t>(i + 1); });
        CHECK(expected == static_cast<std::size_t>(2 * n + 1));
        CHECK(w.dim() == expected);
        CHECK(projective_cover(w).rank == static_cast<std::size_t>(n + 1));
        CHECK(projective_rank(w) == 0);
        CHECK(cat.omega_k(-n).dim() == expected);
    }
}

TEST_CASE("omega on maps")
{
    std::mt19937_64 rng(4);
    const auto c4 = cyclic(4);
    const StableCategory cat(c4, F2);
    const CentralElement s(c4, 1);
    for (int t = 0; t < 8; ++t) {
        const Module m = random_cyclic(c4, F2, 5, rng);
        const ModuleMap id = ModuleMap::identity(m);
        CHECK(cat.stably_equal(cat.omega_map(id), ModuleMap::identity(cat.omega(m))));
        CHECK(cat.is_stably_trivial(cat.omega_map(ModuleMap::zero(m, m))));
        CHECK(cat.stably_equal(cat.omega_map(central_minus_one(m, s)), central_minus_one(cat.omega(m), s)));
        CHECK(cat.stably_equal(cat.omega_inverse_map(central_minus_one(m, s)),
                               central_minus_one(cat.omega_inverse(m), s)));
        const Module n = random_cyclic(c4, F2, 4, rng);
        const HomSpace h = hom_space(m, n);
        const HomSpace h2 = hom_space(n, m);
        if (h.dim() > 0 && h2.dim() > 0) {
            const ModuleMap f = h.map(rng() % h.dim()), g = h2.map(rng() % h2.dim());
            CHECK(cat.stably_equal(cat.omega_map(compose(g, f)), compose(cat.omega_map(g), cat.omega_map(f))));
        }
    }
}

TEST_CASE("projective splitting")
{
    const auto c4 = cyclic(4);
    const StableCategory cat(c4, F2);
    CHECK(projective_rank(regular_module(c4, F2)) == 1);
    CHECK(projective_rank(cat.trivial()) == 0);
    const Module m = direct_sum(cat.trivial(), regular_module(c4, F2));
    CHECK(projective_rank(m) == 1);
    CHECK(projective_free_core(m) == cat.trivial());

    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        const Module x = random_cyclic(c4, F2, 9, rng);
        const ProjectiveSplitting sp = split_projective(x);
        CHECK(projective_rank(sp.core) == 0);
        CHECK(sp.core.dim() + 4 * sp.rank == x.dim());
        CHECK(compose(sp.project, sp.include).matrix().is_identity());
        std::size_t free_blocks = 0;
        for (auto b : jordan_type(x).blocks)
            free_blocks += b == 4 ? 1 : 0;
        CHECK(sp.rank == free_blocks);
        CHECK(stably_iso(cat, x, sp.core));
    }
}

TEST_CASE("tate cohomology")
{
    for (std::size_t n : {2u, 3u, 4u, 9u}) {
        const auto g = cyclic(n);
        const PrimeField k(prime_of_order(*g));
        const StableCategory cat(g, k);
        for (int i = -3; i <= 3; ++i) {
            CHECK(cat.tate_cohomology(cat.trivial(), i).dim() == 1);
            CHECK(cat.tate_cohomology(regular_module(g, k), i).dim() == 0);
            CHECK(cat.tate_cohomology(cat.trivial(), i).dim() ==
                  cat.stable_hom(cat.omega_k(i), cat.trivial()).stable_dim());
        }
    }
    const StableCategory v4(direct_product(cyclic(2), cyclic(2)), F2);
    const std::size_t expected[] = {3, 2, 1, 1, 2, 3, 4};
    for (int i = -3; i <= 3; ++i)
        CHECK(v4.tate_cohomology(v4.trivial(), i).dim() == expected[i + 3]);
}

TEST_CASE("graded composition")
{
    for (std::size_t n : {2u, 3u, 4u, 9u}) {
        const auto g = cyclic(n);
        const PrimeField k(prime_of_order(*g));
        const StableCategory cat(g, k);
        const TateClass one = cat.tate_cohomology(cat.trivial(), 0).basis.at(0);
        for (int i = -2; i <= 2; ++i)
            for (int j = -2; j <= 2; ++j) {
                const TateClass a = cat.tate_cohomology(cat.trivial(), i).basis.at(0);
                const TateClass b = cat.tate_cohomology(cat.trivial(), j).basis.at(0);
                const TateClass ab = cat.graded_compose(a, b);
                CHECK(ab.degree == i + j);
                const bool zero = cat.is_stably_trivial(ab.rep);
                // exterior in odd degrees except in characteristic 2 on C2
                CHECK(zero == (n != 2 && i % 2 != 0 && j % 2 != 0));
            }
        for (int j = -2; j <= 2; ++j) {
            const TateClass b = cat.tate_cohomology(cat.trivial(), j).basis.at(0);
            CHECK(cat.stably_equal(cat.graded_compose(one, b).rep, b.rep));
        }
    }
}

TEST_CASE("graded composition is associative")
{
    for (const auto& [g, k] : {std::pair{cyclic(2), F2}, std::pair{cyclic(3), F3},
                               std::pair{direct_product(cyclic(2), cyclic(2)), F2}}) {
        const StableCategory cat(g, k);
        const Module m = is_cyclic(*g) ? direct_sum(cat.trivial(), cat.omega_k(1)) : cat.trivial();
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (const auto& x : cat.tate_cohomology(cat.trivial(), a).basis)
                        for (const auto& y : cat.tate_cohomology(cat.trivial(), b).basis)
                            for (const auto& z : cat.tate_cohomology(m, c).basis) {
                                const TateClass left = cat.graded_compose(cat.graded_compose(x, y), z);
                                const TateClass right = cat.graded_compose(x, cat.graded_compose(y, z));
                                CHECK(cat.stably_equal(left.rep, right.rep));
                            }
    }
}

TEST_CASE("ghost verdicts")
{
    const auto c4 = cyclic(4);
    const StableCategory cat(c4, F2);
    const Module k = cat.trivial();
    GhostVerdict v = cat.is_ghost(ModuleMap::identity(k));
    CHECK(v.kind == GhostKind::NonGhost);
    CHECK(v.witness_degree == 0);
    REQUIRE(v.witness);
    CHECK_FALSE(cat.is_stably_trivial(*v.witness));

    const Module m = cyclic_module(c4, F2, 2);
    const ModuleMap h = central_minus_one(m, CentralElement(c4, 1));
    v = cat.is_ghost(h);
    CHECK(v.kind == GhostKind::GhostCertified);
    CHECK(v.certificate == "periodicity");
    CHECK(cat.is_ghost(ModuleMap::zero(m, m)).is_ghost());
    CHECK_THROWS_AS(cat.is_ghost(h, -1), std::invalid_argument);

    CHECK(cat.is_dual_ghost(ModuleMap::identity(k)).kind == GhostKind::NonGhost);
    CHECK(cat.is_dual_ghost(ModuleMap::zero(m, m)).is_ghost());
    CHECK(cat.is_dual_ghost(h).is_ghost());
    CHECK(cat.is_ghost(dual(h)).is_ghost());

    // non-cyclic: bounded unless a central element explains the map
    const auto v4 = direct_product(cyclic(2), cyclic(2));
    const StableCategory cv(v4, F2);
    const Element a[] = {2};
    const Subgroup ha(v4, a);
    const Module l = induce(ha, trivial_module(ha.as_group(), F2));
    const ModuleMap x1 = central_minus_one(l, CentralElement(v4, 1));
    v = cv.is_ghost(x1);
    CHECK(v.kind == GhostKind::GhostCertified);
    CHECK(v.certificate == "central-element");
    // a ghost that is not (x - 1) for any central x
    const ModuleMap mixed = direct_sum(x1, ModuleMap::zero(l, l));
    CHECK(cv.is_ghost(mixed).kind == GhostKind::GhostUpToBound);
    CHECK(cv.is_ghost(mixed, 4, GhostHints{Element{1}}).kind == GhostKind::GhostUpToBound);
}

TEST_CASE("duality agrees on random maps")
{
    std::mt19937_64 rng(31);
    const auto c4 = cyclic(4);
    const StableCategory cat(c4, F2);
    for (int t = 0; t < 15; ++t) {
        const Module m = random_cyclic(c4, F2, 4, rng), n = random_cyclic(c4, F2, 4, rng);
        const HomSpace h = hom_space(m, n);
        for (std::size_t i = 0; i < h.dim(); ++i) {
            const ModuleMap f = h.map(i);
            CHECK(cat.is_dual_ghost(f, 2).is_ghost() == cat.is_ghost(dual(f), 2).is_ghost());
        }
    }
}

TEST_CASE("ghosts form an ideal")
{
    std::mt19937_64 rng(12);
    const auto c4 = cyclic(4);
    const StableCategory cat(c4, F2);
    const Module m = cyclic_module(c4, F2, 2);
    const ModuleMap h = central_minus_one(m, CentralElement(c4, 1));
    for (int t = 0; t < 6; ++t) {
        const Module x = random_cyclic(c4, F2, 4, rng);
        const HomSpace out = hom_space(m, x), in = hom_space(x, m);
        for (std::size_t i = 0; i < out.dim(); ++i)
            CHECK(cat.is_ghost(compose(out.map(i), h)).is_ghost());
        for (std::size_t i = 0; i < in.dim(); ++i)
            CHECK(cat.is_ghost(compose(h, in.map(i))).is_ghost());
    }
}

TEST_CASE("stable isomorphism")
{
    std::mt19937_64 rng(2);
    const auto c4 = cyclic(4);
    const StableCategory cat(c4, F2);
    const Module m = random_cyclic(c4, F2, 5, rng);
    CHECK(stably_iso(cat, m, direct_sum(m, regular_module(c4, F2))));
    const auto r = cat.is_stable_iso(cat.omega_k(2), cat.trivial());
    CHECK(r.isomorphic());
    const auto no = cat.is_stable_iso(cyclic_module(c4, F2, 2), direct_sum(cat.trivial(), cat.trivial()));
    CHECK(no.outcome == StableIsoResult::Outcome::NotIsomorphic);
    CHECK(no.method == "jordan");
    for (int i = -4; i <= 4; ++i)
        CHECK(stably_iso(cat, cat.omega_k(i), cat.omega_k(((i % 2) + 2) % 2)));
}

TEST_CASE("biproducts and adjunction in the stable category")
{
    std::mt19937_64 rng(19);
    const auto c8 = cyclic(8);
    const StableCategory cat(c8, F2);
    const Element two[] = {2};
    const Subgroup h(c8, two);
    const StableCategory cath(h.as_group(), F2);
    for (int t = 0; t < 5; ++t) {
        const Module a = random_cyclic(c8, F2, 5, rng);
        const Module b = random_cyclic(c8, F2, 4, rng), c = random_cyclic(c8, F2, 4, rng);
        CHECK(cat.stable_hom(a, direct_sum(b, c)).stable_dim() ==
              cat.stable_hom(a, b).stable_dim() + cat.stable_hom(a, c).stable_dim());
        const Module l = random_cyclic(h.as_group(), F2, 4, rng);
        for (int i = -3; i <= 3; ++i)
            CHECK(cat.stable_hom(cat.omega_k(i), induce(h, l)).stable_dim() ==
                  cath.stable_hom(cath.omega_k(i), l).stable_dim());
    }
    for (int i = -3; i <= 3; ++i) {
        const Module down = projective_free_core(restrict(cat.omega_k(i), h));
        CHECK(stably_iso(cath, down, cath.omega_k(i)));
    }
}

TEST_CASE("caches are safe for concurrent readers")
{
    const StableCategory cat(direct_product(cyclic(2), cyclic(2)), F2);
    std::vector<std::size_t> dims(8);
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < 8; ++t)
            pool.emplace_back([&, t] { dims[t] = cat.omega_k(1 + t % 4).dim(); });
    }
    for (int t = 0; t < 8; ++t)
        CHECK(dims[t] == static_cast<std::size_t>(2 * (1 + t % 4) + 1));
}
