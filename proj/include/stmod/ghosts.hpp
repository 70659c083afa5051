#pragma once

// Explicit ghosts in stmod(kG): multiplication by (x - 1) for central x,
// the length-two module over larger cyclic groups, the induced trivial
// module over C_p x C_p, and induction of ghosts from subgroups. Every
// constructor runs its own checks before returning.

#include "stmod/stable.hpp"

#include <map>
#include <optional>
#include <string>

namespace stmod {

struct CounterexampleBundle {
    std::string label;
    ModuleMap map;
    GhostVerdict ghost;
    bool stably_nontrivial = false;
    /// Coordinates of the class of `map` in the stable hom space; nonzero
    /// exactly when the map is stably nontrivial.
    Vec witness;
    /// Set when nontriviality was also checked after restricting to a subgroup.
    std::optional<bool> restricted_nontrivial;
    /// Number of commuting squares (x-1) o f = f o (x-1) checked against Tate classes.
    std::size_t square_checks = 0;
    /// Choices made during construction (subgroup, central element, ...).
    std::map<std::string, std::string> metadata;

    bool is_counterexample() const { return ghost.is_ghost() && stably_nontrivial; }
};

/// (x - 1) on M, certified as a ghost by the central-element argument.
CounterexampleBundle central_ghost(const CentralElement& x, const Module& m, int bound = 4);

/// (s - 1) on the length-two cyclic module over C_n, n = p^m >= 4.
CounterexampleBundle cyclic_length2_ghost(std::size_t n, int bound = 4);

/// (x - 1) on k_H induced to C_p x C_p, H generated by `h_generator`
/// (default: the first factor, index p); x is the smallest central element
/// outside H.
CounterexampleBundle rank2_ghost(unsigned p, std::optional<Element> h_generator = std::nullopt, int bound = 4);

/// phi induced from H to G; nontriviality is carried over through the
/// retraction of phi^G restricted to H onto phi.
CounterexampleBundle induced_ghost(const Subgroup& h, const CounterexampleBundle& bundle, int bound = 4);

} // namespace stmod
