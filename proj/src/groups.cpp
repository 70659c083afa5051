#include "stmod/groups.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace stmod {

Group::Group(std::string name, std::vector<std::vector<Element>> table)
    : name_(std::move(name)), table_(std::move(table))
{
    const std::size_t n = table_.size();
    if (n == 0)
        throw std::invalid_argument("group table is empty");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw std::invalid_argument("group table is not square");
        std::vector<bool> seen(n, false);
        for (auto v : row) {
            if (v >= n || seen[v])
                throw std::invalid_argument("group table row is not a permutation");
            seen[v] = true;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<bool> seen(n, false);
        for (std::size_t r = 0; r < n; ++r) {
            if (seen[table_[r][c]])
                throw std::invalid_argument("group table column is not a permutation");
            seen[table_[r][c]] = true;
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw std::invalid_argument("element 0 is not a two-sided identity");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("group table is not associative");

    // Latin square with identity: each row contains 0 exactly once.
    inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a)
        inverse_[a] = static_cast<Element>(std::find(table_[a].begin(), table_[a].end(), 0) - table_[a].begin());

    std::vector<Element> span = {0};
    for (Element g = 1; g < n; ++g) {
        if (std::binary_search(span.begin(), span.end(), g))
            continue;
        generators_.push_back(g);
        span = closure(*this, generators_);
    }
}

std::size_t Group::element_order(Element a) const
{
    std::size_t k = 1;
    for (Element x = a; x != 0; x = mul(x, a))
        ++k;
    return k;
}

std::size_t Group::exponent() const
{
    std::size_t e = 1;
    for (Element a = 0; a < order(); ++a)
        e = std::lcm(e, element_order(a));
    return e;
}

bool Group::is_abelian() const
{
    for (Element a = 0; a < order(); ++a)
        for (Element b = a + 1; b < order(); ++b)
            if (!commutes(a, b))
                return false;
    return true;
}

GroupPtr make_group(std::string name, std::vector<std::vector<Element>> table)
{
    return std::make_shared<const Group>(std::move(name), std::move(table));
}

GroupPtr cyclic(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("cyclic group order must be positive");
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t[i][j] = (i + j) % n;
    return make_group("C" + std::to_string(n), std::move(t));
}

GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2)
{
    const std::size_t n1 = g1->order(), n2 = g2->order(), n = n1 * n2;
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = g1->mul(a / n2, b / n2) * n2 + g2->mul(a % n2, b % n2);
    return make_group(g1->name() + "x" + g2->name(), std::move(t));
}

std::vector<Element> closure(const Group& g, std::span<const Element> generators)
{
    std::vector<bool> in(g.order(), false);
    std::vector<Element> frontier = {0};
    in[0] = true;
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (auto x : frontier)
            for (auto s : generators) {
                if (s >= g.order())
                    throw std::out_of_range("generator index " + std::to_string(s) + " outside group");
                const Element y = g.mul(s, x);
                if (!in[y]) {
                    in[y] = true;
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    std::vector<Element> out;
    for (Element x = 0; x < g.order(); ++x)
        if (in[x])
            out.push_back(x);
    return out;
}

Subgroup::Subgroup(GroupPtr parent, std::span<const Element> generators) : parent_(std::move(parent))
{
    const Group& g = *parent_;
    members_ = closure(g, generators);
    local_.assign(g.order(), npos);
    for (std::size_t j = 0; j < members_.size(); ++j)
        local_[members_[j]] = j;

    coset_of_.assign(g.order(), npos);
    twist_.assign(g.order(), npos);
    for (Element r = 0; r < g.order(); ++r) {
        if (coset_of_[r] != npos)
            continue;
        const std::size_t c = coset_reps_.size();
        coset_reps_.push_back(r);
        for (std::size_t j = 0; j < members_.size(); ++j) {
            const Element x = g.mul(r, members_[j]);
            coset_of_[x] = c;
            twist_[x] = j;
        }
    }

    const std::size_t m = members_.size();
    std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            t[a][b] = local_[g.mul(members_[a], members_[b])];
    std::string label = g.name() + "<";
    for (std::size_t j = 0; j < generators.size(); ++j)
        label += (j ? "," : "") + std::to_string(generators[j]);
    as_group_ = make_group(label + ">", std::move(t));
}

std::size_t Subgroup::local(Element g) const
{
    if (g >= local_.size() || local_[g] == npos)
        throw std::invalid_argument("element " + std::to_string(g) + " is not in the subgroup");
    return local_[g];
}

bool Subgroup::is_normal() const
{
    const Group& g = *parent_;
    for (Element x = 0; x < g.order(); ++x)
        for (auto h : members_)
            if (!contains(g.mul(g.mul(x, h), g.inv(x))))
                return false;
    return true;
}

CentralElement::CentralElement(GroupPtr group, Element x) : group_(std::move(group)), x_(x)
{
    if (x_ >= group_->order())
        throw std::out_of_range("element index outside group");
    for (Element g = 0; g < group_->order(); ++g)
        if (!group_->commutes(x_, g))
            throw std::invalid_argument("element " + std::to_string(x_) + " is not central in " + group_->name());
}

std::vector<CentralElement> center(const GroupPtr& g)
{
    std::vector<CentralElement> out;
    for (Element x = 0; x < g->order(); ++x) {
        bool central = true;
        for (Element y = 0; y < g->order() && central; ++y)
            central = g->commutes(x, y);
        if (central)
            out.emplace_back(g, x);
    }
    return out;
}

bool is_p_group(const Group& g, unsigned p)
{
    std::size_t n = g.order();
    while (n % p == 0)
        n /= p;
    return n == 1;
}

unsigned prime_of_order(const Group& g)
{
    const std::size_t n = g.order();
    for (unsigned p = 2; p <= n; ++p)
        if (n % p == 0)
            return is_p_group(g, p) ? p : 0;
    return 0;
}

bool is_cyclic(const Group& g)
{
    for (Element a = 0; a < g.order(); ++a)
        if (g.element_order(a) == g.order())
            return true;
    return false;
}

Element cyclic_generator(const Group& g)
{
    if (g.order() == 1)
        return 0;
    for (Element a = 1; a < g.order(); ++a)
        if (g.element_order(a) == g.order())
            return a;
    throw std::invalid_argument(g.name() + " is not cyclic");
}

} // namespace stmod
