#include "stmod/groups.hpp"

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace stmod;

namespace {

std::set<Element> closure_by_table(const Group& g, const std::vector<Element>& gens)
{
    std::set<Element> out{0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (Element a : std::set<Element>(out))
            for (Element s : gens)
                grew = out.insert(g.mul(a, s)).second || grew;
    }
    return out;
}

} // namespace

TEST_CASE("cyclic groups")
{
    const auto c4 = cyclic(4);
    CHECK(c4->order() == 4);
    CHECK(c4->element_order(1) == 4);
    CHECK(cyclic(1)->order() == 1);
    CHECK(cyclic(3)->mul(1, 2) == 0);
    CHECK(cyclic_generator(*c4) == 1);
}

TEST_CASE("direct products")
{
    const auto c2 = cyclic(2), c3 = cyclic(3);
    const auto v4 = direct_product(c2, c2);
    CHECK(v4->order() == 4);
    for (Element g = 0; g < 4; ++g)
        CHECK(v4->element_order(g) != 4);
    const auto same = direct_product(c3, cyclic(1));
    CHECK(same->order() == 3);
    CHECK(same->same_as(*c3));
    const auto c3c3 = direct_product(c3, c3);
    CHECK(c3c3->order() == 9);
    CHECK(c3c3->exponent() == 3);
    // lexicographic indexing: (1, 2) * (2, 2) = (0, 1)
    CHECK(c3c3->mul(1 * 3 + 2, 2 * 3 + 2) == 0 * 3 + 1);
}

TEST_CASE("subgroups and cosets")
{
    const auto c4 = cyclic(4);
    const Element two[] = {2};
    const Subgroup h(c4, two);
    CHECK(h.order() == 2);
    CHECK(h.coset_reps() == std::vector<Element>{0, 1});
    CHECK(std::set<Element>(h.members().begin(), h.members().end()) == closure_by_table(*c4, {2}));

    const Subgroup trivial(c4, std::span<const Element>{});
    CHECK(trivial.is_trivial());
    CHECK(trivial.index() == 4);

    const auto v4 = direct_product(cyclic(2), cyclic(2));
    const Element a[] = {2};
    const Subgroup ha(v4, a);
    CHECK(ha.order() == 2);
    CHECK(ha.contains(2));
    CHECK(ha.is_normal());
    CHECK(ha.is_proper());

    const auto c8 = cyclic(8);
    for (Element gen : {Element{1}, Element{2}, Element{4}}) {
        const Element gens[] = {gen};
        const Subgroup s(c8, gens);
        CHECK(8 % s.order() == 0);
        std::set<Element> covered;
        for (Element r : s.coset_reps())
            for (Element m : s.members())
                CHECK(covered.insert(c8->mul(r, m)).second);
        CHECK(covered.size() == 8);
        for (Element g = 0; g < 8; ++g)
            CHECK(c8->mul(s.coset_reps()[s.coset_of(g)], s.global(s.coset_twist(g))) == g);
        CHECK(s.as_group()->order() == s.order());
    }
}

TEST_CASE("centers and p-group tests")
{
    CHECK(center(cyclic(5)).size() == 5);
    CHECK(center(direct_product(cyclic(2), cyclic(2))).size() == 4);
    CHECK(center(cyclic(1)).size() == 1);

    CHECK(is_p_group(*cyclic(8), 2));
    CHECK(is_cyclic(*cyclic(8)));
    const auto c3c3 = direct_product(cyclic(3), cyclic(3));
    CHECK(is_p_group(*c3c3, 3));
    CHECK_FALSE(is_cyclic(*c3c3));
    CHECK_FALSE(is_p_group(*cyclic(6), 2));
    CHECK(prime_of_order(*cyclic(9)) == 3);
    CHECK(prime_of_order(*cyclic(6)) == 0);
}

TEST_CASE("nonabelian group: center and central elements")
{
    // dihedral group of order 8: r^i at i, s r^i at 4 + i
    std::vector<std::vector<Element>> t(8, std::vector<Element>(8));
    for (Element a = 0; a < 8; ++a)
        for (Element b = 0; b < 8; ++b) {
            const bool fa = a >= 4, fb = b >= 4;
            const int ia = a % 4, ib = b % 4;
            const int i = fa ? (ia - ib + 4) % 4 : (ia + ib) % 4;
            t[a][b] = static_cast<Element>(((fa != fb) ? 4 : 0) + i);
        }
    const auto d8 = make_group("D8", t);
    CHECK_FALSE(d8->is_abelian());
    const auto z = center(d8);
    REQUIRE(z.size() == 2);
    CHECK(z[1].index() == 2);
    CHECK_THROWS_AS(CentralElement(d8, 1), std::invalid_argument);
    CHECK(is_p_group(*d8, 2));
}

TEST_CASE("invalid tables are rejected")
{
    CHECK_THROWS_AS(make_group("bad", {{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_group("bad", {{1, 0}, {0, 1}}), std::invalid_argument);
    // a Latin square with identity 0 that is not associative
    CHECK_THROWS_AS(make_group("bad", {{0, 1, 2, 3, 4},
                                       {1, 0, 3, 4, 2},
                                       {2, 4, 0, 1, 3},
                                       {3, 2, 4, 0, 1},
                                       {4, 3, 1, 2, 0}}),
                    std::invalid_argument);
}
