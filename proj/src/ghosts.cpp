#include "stmod/ghosts.hpp"

#include <algorithm>
#include <stdexcept>

namespace stmod {

namespace {

bool nonzero(const Vec& v)
{
    return std::any_of(v.begin(), v.end(), [](Scalar s) { return s != 0; });
}

} // namespace

CounterexampleBundle central_ghost(const CentralElement& x, const Module& m, int bound)
{
    const StableCategory cat(x.group(), m.field());
    const ModuleMap map = central_minus_one(m, x);
    GhostHints hints;
    hints.central_element = x.index();

    CounterexampleBundle b{"central_ghost", map, cat.is_ghost(map, bound, hints), false, {}, {}, 0, {}};
    b.witness = cat.stable_hom(m, m).coordinates(map.matrix());
    b.stably_nontrivial = !cat.is_stably_trivial(map);
    if (b.stably_nontrivial != nonzero(b.witness))
        throw std::logic_error("central_ghost: stable class coordinates disagree with the triviality test");
    b.metadata["group"] = x.group()->name();
    b.metadata["central_element"] = std::to_string(x.index());

    // (x-1)_M o f = f o (x-1)_{Omega^n k}, and the right side is stably zero
    // because x - 1 is zero on k.
    for (int d : degree_window(std::min(bound, 2))) {
        const Module src = cat.omega_k(d);
        const ModuleMap on_src = central_minus_one(src, x);
        if (!cat.is_stably_trivial(on_src))
            throw std::logic_error("central_ghost: x - 1 is not stably trivial on Omega^n k");
        for (const auto& cls : cat.tate_cohomology(m, d).basis) {
            const ModuleMap left = compose(map, cls.rep);
            if (!(left.matrix() == cls.rep.matrix() * on_src.matrix()))
                throw std::logic_error("central_ghost: commuting square fails");
            if (!cat.is_stably_trivial(left))
                throw std::logic_error("central_ghost: (x-1) o f is not stably trivial");
            ++b.square_checks;
        }
    }
    return b;
}

CounterexampleBundle cyclic_length2_ghost(std::size_t n, int bound)
{
    const GroupPtr g = cyclic(n);
    const unsigned p = prime_of_order(*g);
    if (p == 0)
        throw std::invalid_argument("cyclic_length2_ghost: n = " + std::to_string(n) + " is not a prime power");
    if (n < 4)
        throw std::invalid_argument("cyclic_length2_ghost: requires |G| >= 4, got " + std::to_string(n) +
                                    "; for C2 and C3 multiplication by (s - 1) on the length-two module "
                                    "factors through the projective cover");
    const PrimeField k(p);
    CounterexampleBundle b = central_ghost(CentralElement(g, 1), cyclic_module(g, k, 2), bound);
    b.label = "cyclic_length2_ghost(C" + std::to_string(n) + ")";
    b.metadata["module"] = "cyclic_module(C" + std::to_string(n) + ", 2)";
    return b;
}

CounterexampleBundle rank2_ghost(unsigned p, std::optional<Element> h_generator, int bound)
{
    const PrimeField k(p);
    const GroupPtr g = direct_product(cyclic(p), cyclic(p));
    const Element hg = h_generator.value_or(p);
    const Element gens[] = {hg};
    const Subgroup h(g, gens);
    if (h.is_trivial() || !h.is_proper())
        throw std::invalid_argument("rank2_ghost: H = <" + std::to_string(hg) + "> must be nontrivial and proper");
    if (!h.is_normal())
        throw std::logic_error("rank2_ghost: H is not normal");

    std::optional<CentralElement> x;
    for (const auto& c : center(g))
        if (!h.contains(c.index())) {
            x = c;
            break;
        }
    if (!x)
        throw std::logic_error("rank2_ghost: no central element outside H");

    const Module induced = induce(h, trivial_module(h.as_group(), k));
    CounterexampleBundle b = central_ghost(*x, induced, bound);
    b.label = "rank2_ghost(C" + std::to_string(p) + "xC" + std::to_string(p) + ")";
    b.metadata["subgroup_generator"] = std::to_string(hg);
    b.metadata["module"] = "k_H induced to G";

    // Restricted to H the module is trivial and (x - 1) is a nonzero map
    // between trivial modules, which never factors through a projective.
    const Module restricted = restrict(induced, h);
    bool trivial_on_h = true;
    for (const auto& a : restricted.actions())
        trivial_on_h = trivial_on_h && a.is_identity();
    b.metadata["restriction_trivial"] = trivial_on_h ? "true" : "false";
    const StableCategory cat_h(h.as_group(), k);
    b.restricted_nontrivial = !cat_h.is_stably_trivial(restrict(b.map, h));
    if (*b.restricted_nontrivial && !b.stably_nontrivial)
        throw std::logic_error("rank2_ghost: nontrivial on H but trivial on G");
    return b;
}

CounterexampleBundle induced_ghost(const Subgroup& h, const CounterexampleBundle& bundle, int bound)
{
    if (!bundle.map.source().group().same_as(*h.as_group()))
        throw std::invalid_argument("induced_ghost: bundle is not over the given subgroup");
    const PrimeField k = bundle.map.source().field();
    const StableCategory cat(h.parent(), k);
    const ModuleMap up = induce(h, bundle.map);

    CounterexampleBundle b{"induced(" + bundle.label + ")", up, cat.is_ghost(up, bound), false, {}, {}, 0,
                           bundle.metadata};
    b.witness = cat.stable_hom(up.source(), up.target()).coordinates(up.matrix());
    b.stably_nontrivial = !cat.is_stably_trivial(up);

    // Coset block 0 of phi^G restricted to H is an H-summand carrying phi.
    const ModuleMap res = restrict(up, h);
    const std::size_t ds = bundle.map.source().dim(), dt = bundle.map.target().dim();
    Matrix incl(k, res.source().dim(), ds);
    incl.set_block(0, 0, Matrix::identity(k, ds));
    Matrix proj(k, dt, res.target().dim());
    proj.set_block(0, 0, Matrix::identity(k, dt));
    const ModuleMap i(bundle.map.source(), res.source(), incl);
    const ModuleMap pr(res.target(), bundle.map.target(), proj);
    if (!(compose(pr, compose(res, i)).matrix() == bundle.map.matrix()))
        throw std::logic_error("induced_ghost: phi is not a retract of the restricted induced map");
    b.restricted_nontrivial = bundle.stably_nontrivial;
    if (bundle.stably_nontrivial && !b.stably_nontrivial)
        throw std::logic_error("induced_ghost: retract argument contradicts the direct triviality test");
    b.metadata["induced_from"] = h.as_group()->name();
    b.metadata["induced_to"] = h.parent()->name();
    b.metadata["retract"] = "verified";
    return b;
}

} // namespace stmod
