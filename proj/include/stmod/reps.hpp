#pragma once

// Finite-dimensional kG-modules as matrix representations, and the maps,
// hom spaces and constructions (covers, induction, restriction) on them.

#include "stmod/exactlin.hpp"
#include "stmod/groups.hpp"

#include <map>
#include <memory>
#include <span>
#include <vector>

namespace stmod {

/// A representation G -> GL_d(F_p), stored as one matrix per group element.
/// Construction checks rho(e) = I and rho(s) rho(g) = rho(sg) for every
/// generator s and every g, which forces a homomorphism.
class Module {
public:
    Module(GroupPtr group, PrimeField field, std::vector<Matrix> action);

    /// Expands matrices given for a generating subset of elements to the full table.
    static Module from_generators(GroupPtr group, PrimeField field, std::size_t dim,
                                  const std::map<Element, Matrix>& generators);

    const Group& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    PrimeField field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Matrix& act(Element g) const { return (*action_)[g]; }
    const std::vector<Matrix>& actions() const { return *action_; }

    /// Same group table, same field and identical matrices.
    bool operator==(const Module& other) const;
    bool compatible_with(const Module& other) const;

private:
    GroupPtr group_;
    PrimeField field_;
    std::size_t dim_;
    std::shared_ptr<const std::vector<Matrix>> action_;
};

/// A kG-linear map; the matrix is target.dim x source.dim.
class ModuleMap {
public:
    ModuleMap(Module source, Module target, Matrix mat);

    static ModuleMap zero(const Module& source, const Module& target);
    static ModuleMap identity(const Module& m);

    const Module& source() const { return source_; }
    const Module& target() const { return target_; }
    const Matrix& matrix() const { return mat_; }

    ModuleMap operator+(const ModuleMap& rhs) const;
    ModuleMap operator-(const ModuleMap& rhs) const;
    ModuleMap scaled(Scalar s) const;
    bool is_zero() const { return mat_.is_zero(); }

private:
    Module source_;
    Module target_;
    Matrix mat_;
};

/// after ∘ before
ModuleMap compose(const ModuleMap& after, const ModuleMap& before);

struct HomSpace {
    Module source;
    Module target;
    std::vector<Matrix> basis;

    std::size_t dim() const { return basis.size(); }
    ModuleMap map(std::size_t i) const { return ModuleMap(source, target, basis.at(i)); }
    ModuleMap combination(const Vec& coefficients) const;
};

struct Submodule {
    Module module;
    ModuleMap embedding;
};

struct QuotientModule {
    Module module;
    ModuleMap projection;
};

struct CoverData {
    Module projective;
    ModuleMap pi;          ///< projective -> M, surjective
    ModuleMap ker_embed;   ///< ker(pi) -> projective
    std::size_t rank;      ///< number of free summands, dim(M / rad M)
};

struct JordanType {
    std::vector<std::size_t> blocks; ///< sorted descending

    std::size_t total() const;
    bool operator==(const JordanType&) const = default;
};

Module trivial_module(const GroupPtr& g, PrimeField k);
/// g acts on the basis {e_h} by e_h -> e_{gh}.
Module regular_module(const GroupPtr& g, PrimeField k);
/// Basis U, (s-1)U, ..., (s-1)^{l-1}U for a generator s of a cyclic p-group.
Module cyclic_module(const GroupPtr& g, PrimeField k, std::size_t length);
/// Direct sum of cyclic modules with the given block sizes.
Module jordan_module(const GroupPtr& g, PrimeField k, std::span<const std::size_t> blocks);

Module direct_sum(const Module& a, const Module& b);
Module direct_sum(std::span<const Module> parts);
ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g);
/// Contragredient: rho*(g) = rho(g^{-1})^T.
Module dual(const Module& m);
/// f: M -> N gives f^T: N* -> M*.
ModuleMap dual(const ModuleMap& f);
/// Module with basis changed by an invertible matrix s: rho'(g) = s rho(g) s^{-1}.
Module conjugate(const Module& m, const Matrix& s);

/// Multiplication by (x - 1) for a central element x.
ModuleMap central_minus_one(const Module& m, const CentralElement& x);

HomSpace hom_space(const Module& source, const Module& target);
bool is_module_map(const Module& source, const Module& target, const Matrix& mat);

/// Submodule spanned by the columns of `spanning`, which must be G-invariant.
Submodule submodule(const Module& m, const Matrix& spanning);
QuotientModule quotient(const Module& m, const Subspace& sub);

/// rad M = span{(g - 1) m}. Requires G to be a p-group in the field characteristic.
Submodule radical(const Module& m);
CoverData projective_cover(const Module& m);

/// Induction along H <= G; m must be a module over H.as_group(). The basis is
/// coset-major: index c * dim(m) + b stands for r_c (x) e_b.
Module induce(const Subgroup& h, const Module& m);
ModuleMap induce(const Subgroup& h, const ModuleMap& f);
Module restrict(const Module& m, const Subgroup& h);
ModuleMap restrict(const ModuleMap& f, const Subgroup& h);

/// Jordan block sizes of (s - 1) for a generator s of a cyclic p-group.
JordanType jordan_type(const Module& m);

/// Throws unless G is a p-group for the field characteristic.
void require_p_group(const Group& g, PrimeField k, const char* what);

} // namespace stmod
