#pragma once

// Finite groups given by Cayley tables.
//
// Conventions: element 0 is the identity; cyclic(n) has its generator at
// index 1 with element i = sigma^i; direct products index pairs
// lexicographically as i1 * |G2| + i2.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace stmod {

class Group;
using GroupPtr = std::shared_ptr<const Group>;
using Element = std::size_t;

class Group {
public:
    /// Validates the table: Latin square, 0 a two-sided identity, associative.
    Group(std::string name, std::vector<std::vector<Element>> table);

    const std::string& name() const { return name_; }
    std::size_t order() const { return table_.size(); }
    Element mul(Element a, Element b) const { return table_[a][b]; }
    Element inv(Element a) const { return inverse_[a]; }
    const std::vector<std::vector<Element>>& table() const { return table_; }

    std::size_t element_order(Element a) const;
    std::size_t exponent() const;
    bool commutes(Element a, Element b) const { return mul(a, b) == mul(b, a); }
    bool is_abelian() const;

    /// Greedy generating set: scan indices upward, keep an element if it is
    /// not in the subgroup generated by those kept so far.
    const std::vector<Element>& generators() const { return generators_; }

    /// Same multiplication table (names are labels only).
    bool same_as(const Group& other) const { return this == &other || table_ == other.table_; }

private:
    std::string name_;
    std::vector<std::vector<Element>> table_;
    std::vector<Element> inverse_;
    std::vector<Element> generators_;
};

GroupPtr make_group(std::string name, std::vector<std::vector<Element>> table);
GroupPtr cyclic(std::size_t n);
GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2);

/// Sorted closure of a set of elements under multiplication.
std::vector<Element> closure(const Group& g, std::span<const Element> generators);

/// A subgroup H <= G with left-coset representatives. The subgroup is also
/// available as an abstract group whose element j corresponds to members()[j].
class Subgroup {
public:
    Subgroup(GroupPtr parent, std::span<const Element> generators);

    const GroupPtr& parent() const { return parent_; }
    const GroupPtr& as_group() const { return as_group_; }
    const std::vector<Element>& members() const { return members_; }
    std::size_t order() const { return members_.size(); }
    std::size_t index() const { return coset_reps_.size(); }

    /// Left-coset representatives r_0 = e, r_1, ...; smallest unused index first.
    const std::vector<Element>& coset_reps() const { return coset_reps_; }
    /// For g in G: the c with g in r_c H, and h = r_c^{-1} g as a local index.
    std::size_t coset_of(Element g) const { return coset_of_[g]; }
    std::size_t coset_twist(Element g) const { return twist_[g]; }

    bool contains(Element g) const { return local_[g] != npos; }
    /// Local index of a parent element lying in H.
    std::size_t local(Element g) const;
    Element global(std::size_t local_index) const { return members_.at(local_index); }

    bool is_normal() const;
    bool is_proper() const { return order() < parent_->order(); }
    bool is_trivial() const { return order() == 1; }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    GroupPtr parent_;
    GroupPtr as_group_;
    std::vector<Element> members_;
    std::vector<Element> coset_reps_;
    std::vector<std::size_t> coset_of_;
    std::vector<std::size_t> twist_;
    std::vector<std::size_t> local_;
};

/// An element commuting with every element of its group; checked on construction.
class CentralElement {
public:
    CentralElement(GroupPtr group, Element x);

    const GroupPtr& group() const { return group_; }
    Element index() const { return x_; }

private:
    GroupPtr group_;
    Element x_;
};

std::vector<CentralElement> center(const GroupPtr& g);

bool is_p_group(const Group& g, unsigned p);
bool is_cyclic(const Group& g);
/// The prime p with |G| = p^m, m >= 1; 0 for the trivial group or a non-p-group.
unsigned prime_of_order(const Group& g);
/// Some element of order |G|, if G is cyclic.
Element cyclic_generator(const Group& g);

} // namespace stmod
