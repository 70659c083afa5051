#pragma once

// The stable module category stmod(kG) of a finite p-group: maps modulo
// those factoring through projectives, the syzygy functor, Tate cohomology
// as stable maps out of syzygies of k, and ghost detection.

#include "stmod/reps.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stmod {

/// Hom(M, N) together with the subspace PHom(M, N) of maps factoring through
/// a projective, and a canonical basis of the quotient.
class StableHomSpace {
public:
    StableHomSpace(HomSpace hom, std::vector<Matrix> phom_generators);

    const HomSpace& hom() const { return hom_; }
    const Module& source() const { return hom_.source; }
    const Module& target() const { return hom_.target; }
    std::size_t hom_dim() const { return hom_.dim(); }
    std::size_t phom_dim() const { return phom_.dim(); }
    std::size_t stable_dim() const { return quotient_.dim(); }

    /// Independent maps spanning PHom(M, N).
    std::vector<Matrix> phom_basis() const;
    /// Representatives of a basis of Hom / PHom.
    ModuleMap representative(std::size_t i) const;
    std::vector<ModuleMap> representatives() const;

    bool is_trivial(const Matrix& f) const;
    /// Coordinates of the class of f in the representative basis.
    Vec coordinates(const Matrix& f) const;

private:
    HomSpace hom_;
    Subspace phom_;
    Subspace quotient_;
};

/// Element of Tate cohomology H^i(G, M), represented by a map Omega^i k -> M.
struct TateClass {
    int degree;
    ModuleMap rep;
};

struct TateGroup {
    int degree;
    StableHomSpace space;
    std::vector<TateClass> basis;

    std::size_t dim() const { return basis.size(); }
};

enum class GhostKind { NonGhost, GhostCertified, GhostUpToBound };

struct GhostVerdict {
    GhostKind kind = GhostKind::GhostUpToBound;
    int bound = 0;
    /// NonGhost: the degree and the class on which the map is stably nonzero.
    std::optional<int> witness_degree;
    std::optional<ModuleMap> witness;
    /// GhostCertified: "central-element" or "periodicity".
    std::string certificate;
    int period = 0;

    bool is_ghost() const { return kind != GhostKind::NonGhost; }
};

std::string to_string(GhostKind kind);

struct GhostHints {
    /// The map is claimed to be multiplication by (x - 1) for this central x.
    std::optional<Element> central_element;
};

struct StableIsoResult {
    enum class Outcome { Isomorphic, NotIsomorphic, NotFound };
    Outcome outcome = Outcome::NotFound;
    std::string method;
    std::optional<ModuleMap> forward;
    std::optional<ModuleMap> backward;

    bool isomorphic() const { return outcome == Outcome::Isomorphic; }
};

/// M = I' (+) F with F free of rank `rank`; `core` has no projective summand.
struct ProjectiveSplitting {
    Module core;
    ModuleMap include;   ///< core -> M
    ModuleMap project;   ///< M -> core, project o include = id
    std::size_t rank;
};

/// M embedded in an injective (= free) module with cokernel Omega^{-1} M.
struct HullData {
    Module injective;
    ModuleMap embed;     ///< M -> injective
    ModuleMap q;         ///< injective -> Omega^{-1} M
};

/// Number of free summands: the rank of the norm element sum_g g on M.
std::size_t projective_rank(const Module& m);
ProjectiveSplitting split_projective(const Module& m);
Module projective_free_core(const Module& m);

/// A kG-map a: kG^t -> B lifted along a surjection pi: T -> B.
ModuleMap lift_from_free(const ModuleMap& a, const ModuleMap& pi);

/// Computations in stmod(kG) for one nontrivial p-group G and field k.
/// Cached syzygies of k and degree identifications are write-once and
/// guarded, so one instance can be shared by concurrent readers.
class StableCategory {
public:
    StableCategory(GroupPtr group, PrimeField field);

    const GroupPtr& group() const { return group_; }
    PrimeField field() const { return field_; }
    Module trivial() const { return trivial_module(group_, field_); }

    StableHomSpace stable_hom(const Module& m, const Module& n) const;
    bool is_stably_trivial(const ModuleMap& f) const;
    bool stably_equal(const ModuleMap& f, const ModuleMap& g) const;

    Module omega(const Module& m) const;
    Module omega_inverse(const Module& m) const;
    HullData injective_hull(const Module& m) const;
    ModuleMap omega_map(const ModuleMap& f) const;
    ModuleMap omega_inverse_map(const ModuleMap& f) const;
    /// Omega^n for any integer n, iterating omega or omega_inverse.
    Module omega_power(const Module& m, int n) const;
    ModuleMap omega_power_map(const ModuleMap& f, int n) const;

    /// Stable isomorphism X -> Omega^{-1}(Omega X).
    ModuleMap syzygy_unit(const Module& x) const;
    /// Stable isomorphism Y -> Omega(Omega^{-1} Y).
    ModuleMap cosyzygy_unit(const Module& y) const;

    /// Projective-free model of Omega^i k.
    Module omega_k(int i) const;

    TateGroup tate_cohomology(const Module& m, int degree) const;

    /// Stable isomorphism Omega^{i+j} k -> Omega^j(Omega^i k), built from the
    /// units above; identity when i and j do not have opposite signs.
    ModuleMap identification(int i, int j) const;

    /// alpha in H^i(G, k), beta in H^j(G, M): the class of
    /// beta o Omega^j(alpha) o identification(i, j) in H^{i+j}(G, M).
    TateClass graded_compose(const TateClass& alpha, const TateClass& beta) const;
    /// Omega^j(alpha) o identification(i, j): Omega^{i+j} k -> Omega^j k, so
    /// that alpha . beta = beta o shift_class(alpha, j).
    ModuleMap shift_class(const TateClass& alpha, int j) const;

    GhostVerdict is_ghost(const ModuleMap& f, int bound = 4, const GhostHints& hints = {}) const;
    GhostVerdict is_dual_ghost(const ModuleMap& f, int bound = 4, const GhostHints& hints = {}) const;

    /// A left stable inverse v with v o u = id, when u is a stable isomorphism.
    std::optional<ModuleMap> stable_inverse(const ModuleMap& u) const;
    StableIsoResult is_stable_iso(const Module& m, const Module& n, int attempts = 20,
                                  std::uint64_t seed = 0) const;

    /// Omega-period of k: 1 for C2, 2 for other cyclic groups, 0 if not cyclic.
    int cyclic_period() const;

private:
    void check_module(const Module& m, const char* what) const;

    GroupPtr group_;
    PrimeField field_;
    bool cyclic_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, Module> omega_k_cache_;
    mutable std::map<std::pair<int, int>, ModuleMap> identification_cache_;
};

/// Caches Tate groups of the source and stable hom spaces into the target so
/// that many maps M -> N can be tested against the same degree window.
class GhostChecker {
public:
    GhostChecker(const StableCategory& cat, const Module& source, const Module& target, int bound);

    GhostVerdict check(const ModuleMap& f, const GhostHints& hints = {}) const;
    int bound() const { return bound_; }

private:
    const StableCategory& cat_;
    int bound_;
    std::vector<int> degrees_;
    std::vector<TateGroup> source_classes_;
    std::vector<StableHomSpace> into_target_;
};

/// Mirror of GhostChecker: classes N -> Omega^i k precomposed with f.
class DualGhostChecker {
public:
    DualGhostChecker(const StableCategory& cat, const Module& source, const Module& target, int bound);

    GhostVerdict check(const ModuleMap& f, const GhostHints& hints = {}) const;

private:
    const StableCategory& cat_;
    int bound_;
    std::vector<int> degrees_;
    std::vector<StableHomSpace> out_of_target_;
    std::vector<StableHomSpace> out_of_source_;
};

/// Degrees 0, 1, -1, 2, -2, ..., bound, -bound.
std::vector<int> degree_window(int bound);

/// True when f is multiplication by (x - 1) on its source for some central x
/// in the given hint, or when no hint is given, for any central x.
std::optional<Element> detect_central_element(const ModuleMap& f, const GhostHints& hints = {});

} // namespace stmod
