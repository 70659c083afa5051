#include "stmod/stable.hpp"

#include <random>
#include <stdexcept>

namespace stmod {

namespace {

Vec flatten(const Matrix& m)
{
    return m.entries();
}

Matrix unflatten(PrimeField k, std::size_t rows, std::size_t cols, const Vec& v)
{
    return Matrix::from_entries(k, rows, cols, v);
}

std::vector<Vec> flatten_all(const std::vector<Matrix>& ms)
{
    std::vector<Vec> out;
    out.reserve(ms.size());
    for (const auto& m : ms)
        out.push_back(flatten(m));
    return out;
}

Subspace span_of(PrimeField k, std::size_t ambient, const std::vector<Matrix>& ms)
{
    const auto vs = flatten_all(ms);
    return Subspace(k, ambient, vs);
}

/// Generators of PHom(M, N): traces sum_g g (m_c e_b^T) g^{-1} of rank-one
/// maps onto the top generators m_c of N. These are exactly the composites
/// of pi_N with maps M -> kG^t, one for each coordinate functional e_b on M.
std::vector<Matrix> phom_generators(const Module& m, const Module& n)
{
    const CoverData cover = projective_cover(n);
    const Group& g = m.group();
    const std::size_t order = g.order(), dm = m.dim(), dn = n.dim();
    const PrimeField k = m.field();
    std::vector<Matrix> gens;
    gens.reserve(cover.rank * dm);
    for (std::size_t c = 0; c < cover.rank; ++c) {
        std::vector<Matrix> acc(dm, Matrix(k, dn, dm));
        for (Element x = 0; x < order; ++x) {
            const Vec u = cover.pi.matrix().col(c * order + x);
            const Matrix& back = m.act(g.inv(x));
            for (std::size_t b = 0; b < dm; ++b)
                for (std::size_t r = 0; r < dn; ++r) {
                    if (u[r] == 0)
                        continue;
                    for (std::size_t col = 0; col < dm; ++col)
                        acc[b](r, col) = k.add(acc[b](r, col), k.mul(u[r], back(b, col)));
                }
        }
        for (auto& a : acc)
            gens.push_back(std::move(a));
    }
    return gens;
}

} // namespace

std::string to_string(GhostKind kind)
{
    switch (kind) {
    case GhostKind::NonGhost:
        return "NonGhost";
    case GhostKind::GhostCertified:
        return "GhostCertified";
    case GhostKind::GhostUpToBound:
        return "GhostUpToBound";
    }
    return "unknown";
}

StableHomSpace::StableHomSpace(HomSpace hom, std::vector<Matrix> phom_generators)
    : hom_(std::move(hom)),
      phom_(span_of(hom_.source.field(), hom_.source.dim() * hom_.target.dim(), phom_generators)),
      quotient_(Matrix(hom_.source.field(), 0, 0))
{
    std::vector<Vec> reduced;
    for (const auto& b : hom_.basis)
        reduced.push_back(phom_.reduce(flatten(b)));
    quotient_ = Subspace(hom_.source.field(), phom_.ambient_dim(), reduced);
}

std::vector<Matrix> StableHomSpace::phom_basis() const
{
    std::vector<Matrix> out;
    for (std::size_t j = 0; j < phom_.dim(); ++j)
        out.push_back(unflatten(source().field(), target().dim(), source().dim(), phom_.basis().col(j)));
    return out;
}

ModuleMap StableHomSpace::representative(std::size_t i) const
{
    return ModuleMap(source(), target(),
                     unflatten(source().field(), target().dim(), source().dim(), quotient_.basis().col(i)));
}

std::vector<ModuleMap> StableHomSpace::representatives() const
{
    std::vector<ModuleMap> out;
    for (std::size_t i = 0; i < stable_dim(); ++i)
        out.push_back(representative(i));
    return out;
}

bool StableHomSpace::is_trivial(const Matrix& f) const
{
    return phom_.contains(flatten(f));
}

Vec StableHomSpace::coordinates(const Matrix& f) const
{
    return quotient_.coordinates(phom_.reduce(flatten(f)));
}

std::size_t projective_rank(const Module& m)
{
    require_p_group(m.group(), m.field(), "projective_rank");
    Matrix norm(m.field(), m.dim(), m.dim());
    for (const auto& a : m.actions())
        norm = norm + a;
    return rank(norm);
}

ProjectiveSplitting split_projective(const Module& m)
{
    require_p_group(m.group(), m.field(), "split_projective");
    const PrimeField k = m.field();
    const Group& g = m.group();
    const std::size_t n = g.order(), d = m.dim();
    Matrix norm(k, d, d);
    for (const auto& a : m.actions())
        norm = norm + a;
    const std::size_t r = rank(norm);
    if (r == 0)
        return {m, ModuleMap::identity(m), ModuleMap::identity(m), 0};

    // v_i with N v_i independent generate a free submodule F = kG^r.
    std::vector<Vec> seeds, images;
    for (std::size_t j = 0; j < d && seeds.size() < r; ++j) {
        Vec e(d, 0);
        e[j] = 1;
        images.push_back(norm * e);
        if (Subspace(k, d, images).dim() == images.size())
            seeds.push_back(e);
        else
            images.pop_back();
    }

    Matrix incl(k, d, r * n);
    Matrix functionals(k, r * n, d);
    for (std::size_t i = 0; i < r; ++i)
        for (Element x = 0; x < n; ++x) {
            incl.set_col(i * n + x, m.act(x) * seeds[i]);
            const Vec back = m.act(g.inv(x)) * seeds[i];
            for (std::size_t c = 0; c < d; ++c)
                functionals(i * n + x, c) = back[c];
        }

    // Retraction M -> kG^r: row (j, x) is lambda_j o x^{-1}, with
    // lambda_j(x^{-1} v_i) = [i == j and x == e].
    Matrix retract(k, r * n, d);
    for (std::size_t j = 0; j < r; ++j) {
        Vec rhs(r * n, 0);
        rhs[j * n] = 1;
        const auto lambda = solve(functionals, rhs);
        if (!lambda)
            throw std::logic_error("split_projective: free submodule has no retraction");
        for (Element x = 0; x < n; ++x) {
            const Matrix& back = m.act(g.inv(x));
            for (std::size_t c = 0; c < d; ++c) {
                std::uint64_t acc = 0;
                for (std::size_t t = 0; t < d; ++t)
                    acc += static_cast<std::uint64_t>((*lambda)[t]) * back(t, c);
                retract(j * n + x, c) = static_cast<Scalar>(acc % k.p());
            }
        }
    }

    const Submodule core = submodule(m, kernel_basis(retract));
    const Subspace core_space(core.embedding.matrix());
    const Matrix along = Matrix::identity(k, d) - incl * retract;
    ModuleMap project(m, core.module, core_space.coordinates(along));
    return {core.module, core.embedding, project, r};
}

Module projective_free_core(const Module& m)
{
    return split_projective(m).core;
}

ModuleMap lift_from_free(const ModuleMap& a, const ModuleMap& pi)
{
    const Group& g = a.source().group();
    const std::size_t n = g.order();
    if (a.source().dim() % n != 0)
        throw std::invalid_argument("lift_from_free: source is not free");
    const std::size_t t = a.source().dim() / n;
    std::vector<std::size_t> top(t);
    for (std::size_t c = 0; c < t; ++c)
        top[c] = c * n;
    const auto w = solve(pi.matrix(), a.matrix().select_cols(top));
    if (!w)
        throw std::logic_error("lift_from_free: map does not lift (pi not surjective?)");
    const Module& target = pi.source();
    Matrix lift(a.source().field(), target.dim(), t * n);
    for (std::size_t c = 0; c < t; ++c) {
        const Vec wc = w->col(c);
        for (Element x = 0; x < n; ++x)
            lift.set_col(c * n + x, target.act(x) * wc);
    }
    return ModuleMap(a.source(), target, std::move(lift));
}

StableCategory::StableCategory(GroupPtr group, PrimeField field)
    : group_(std::move(group)), field_(field), cyclic_(false)
{
    if (group_->order() == 1)
        throw std::invalid_argument("stable category of the trivial group is degenerate");
    require_p_group(*group_, field_, "StableCategory");
    cyclic_ = is_cyclic(*group_);
}

void StableCategory::check_module(const Module& m, const char* what) const
{
    if (!m.group().same_as(*group_) || m.field() != field_)
        throw std::invalid_argument(std::string(what) + ": module is not over " + group_->name() + " and F_" +
                                    std::to_string(field_.p()));
}

StableHomSpace StableCategory::stable_hom(const Module& m, const Module& n) const
{
    check_module(m, "stable_hom");
    check_module(n, "stable_hom");
    return StableHomSpace(hom_space(m, n), phom_generators(m, n));
}

bool StableCategory::is_stably_trivial(const ModuleMap& f) const
{
    check_module(f.source(), "is_stably_trivial");
    if (f.is_zero())
        return true;
    const auto gens = phom_generators(f.source(), f.target());
    return span_of(field_, f.source().dim() * f.target().dim(), gens).contains(flatten(f.matrix()));
}

bool StableCategory::stably_equal(const ModuleMap& f, const ModuleMap& g) const
{
    return is_stably_trivial(f - g);
}

Module StableCategory::omega(const Module& m) const
{
    check_module(m, "omega");
    return projective_cover(m).ker_embed.source();
}

HullData StableCategory::injective_hull(const Module& m) const
{
    check_module(m, "injective_hull");
    const CoverData c = projective_cover(dual(m));
    ModuleMap embed = dual(c.pi);
    ModuleMap q = dual(c.ker_embed);
    return {embed.target(), ModuleMap(m, embed.target(), embed.matrix()), q};
}

Module StableCategory::omega_inverse(const Module& m) const
{
    return dual(omega(dual(m)));
}

ModuleMap StableCategory::omega_map(const ModuleMap& f) const
{
    check_module(f.source(), "omega_map");
    const CoverData cm = projective_cover(f.source());
    const CoverData cn = projective_cover(f.target());
    const ModuleMap lift = lift_from_free(compose(f, cm.pi), cn.pi);
    const Matrix restricted = lift.matrix() * cm.ker_embed.matrix();
    const Subspace kernel(cn.ker_embed.matrix());
    return ModuleMap(cm.ker_embed.source(), cn.ker_embed.source(), kernel.coordinates(restricted));
}

ModuleMap StableCategory::omega_inverse_map(const ModuleMap& f) const
{
    return dual(omega_map(dual(f)));
}

Module StableCategory::omega_power(const Module& m, int n) const
{
    Module out = m;
    for (int s = 0; s < n; ++s)
        out = omega(out);
    for (int s = 0; s > n; --s)
        out = omega_inverse(out);
    return out;
}

ModuleMap StableCategory::omega_power_map(const ModuleMap& f, int n) const
{
    ModuleMap out = f;
    for (int s = 0; s < n; ++s)
        out = omega_map(out);
    for (int s = 0; s > n; --s)
        out = omega_inverse_map(out);
    return out;
}

ModuleMap StableCategory::syzygy_unit(const Module& x) const
{
    check_module(x, "syzygy_unit");
    const PrimeField k = field_;
    const std::size_t n = group_->order();
    const CoverData cover = projective_cover(x);
    const Module& z = cover.ker_embed.source();
    const HullData hull = injective_hull(z);
    const Module& inj = hull.injective;
    const std::size_t t = cover.rank, di = inj.dim(), dz = z.dim();

    // G: P -> I with G o iota = j; G is fixed by the images w_c of the free
    // generators, G(e_{c,x}) = x w_c.
    const Matrix& iota = cover.ker_embed.matrix();
    Matrix system(k, di * dz, t * di);
    Matrix rhs(k, di * dz, 1);
    for (std::size_t c = 0; c < t; ++c)
        for (Element g = 0; g < n; ++g)
            for (std::size_t v = 0; v < dz; ++v) {
                const Scalar coef = iota(c * n + g, v);
                if (coef == 0)
                    continue;
                const Matrix& a = inj.act(g);
                for (std::size_t r = 0; r < di; ++r)
                    for (std::size_t s = 0; s < di; ++s)
                        if (a(r, s) != 0)
                            system(r * dz + v, c * di + s) =
                                k.add(system(r * dz + v, c * di + s), k.mul(coef, a(r, s)));
            }
    for (std::size_t r = 0; r < di; ++r)
        for (std::size_t v = 0; v < dz; ++v)
            rhs(r * dz + v, 0) = hull.embed.matrix()(r, v);
    const auto w = solve(system, rhs.col(0));
    if (!w)
        throw std::logic_error("syzygy_unit: embedding does not extend over the projective cover");
    Matrix ext(k, di, t * n);
    for (std::size_t c = 0; c < t; ++c) {
        const Vec wc(w->begin() + static_cast<std::ptrdiff_t>(c * di),
                     w->begin() + static_cast<std::ptrdiff_t>((c + 1) * di));
        for (Element g = 0; g < n; ++g)
            ext.set_col(c * n + g, inj.act(g) * wc);
    }
    const auto section = solve(cover.pi.matrix(), Matrix::identity(k, x.dim()));
    if (!section)
        throw std::logic_error("syzygy_unit: cover map is not surjective");
    return ModuleMap(x, hull.q.target(), hull.q.matrix() * ext * *section);
}

ModuleMap StableCategory::cosyzygy_unit(const Module& y) const
{
    check_module(y, "cosyzygy_unit");
    const HullData hull = injective_hull(y);
    const CoverData cover = projective_cover(hull.q.target());
    const ModuleMap lift = lift_from_free(hull.q, cover.pi);
    const Matrix into = lift.matrix() * hull.embed.matrix();
    const Subspace kernel(cover.ker_embed.matrix());
    return ModuleMap(y, cover.ker_embed.source(), kernel.coordinates(into));
}

Module StableCategory::omega_k(int i) const
{
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = omega_k_cache_.find(i); it != omega_k_cache_.end())
            return it->second;
    }
    Module m = i == 0  ? trivial()
               : i > 0 ? projective_free_core(omega(omega_k(i - 1)))
                       : projective_free_core(omega_inverse(omega_k(i + 1)));
    std::lock_guard lock(cache_mutex_);
    return omega_k_cache_.emplace(i, std::move(m)).first->second;
}

TateGroup StableCategory::tate_cohomology(const Module& m, int degree) const
{
    StableHomSpace space = stable_hom(omega_k(degree), m);
    std::vector<TateClass> basis;
    for (std::size_t i = 0; i < space.stable_dim(); ++i)
        basis.push_back({degree, space.representative(i)});
    return {degree, std::move(space), std::move(basis)};
}

ModuleMap StableCategory::identification(int i, int j) const
{
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = identification_cache_.find({i, j}); it != identification_cache_.end())
            return it->second;
    }
    std::optional<ModuleMap> theta;
    if (i == 0 || j == 0 || (i > 0) == (j > 0)) {
        theta = ModuleMap::identity(omega_k(i + j));
    } else if (i > 0) {
        const ModuleMap step = omega_power_map(syzygy_unit(omega_k(i - 1)), j + 1);
        theta = compose(step, identification(i - 1, j + 1));
    } else {
        const ModuleMap step = omega_power_map(cosyzygy_unit(omega_k(i + 1)), j - 1);
        theta = compose(step, identification(i + 1, j - 1));
    }
    std::lock_guard lock(cache_mutex_);
    return identification_cache_.emplace(std::make_pair(i, j), std::move(*theta)).first->second;
}

TateClass StableCategory::graded_compose(const TateClass& alpha, const TateClass& beta) const
{
    const int i = alpha.degree, j = beta.degree;
    if (!(alpha.rep.target() == trivial()))
        throw std::invalid_argument("graded_compose: alpha must be a class with target k");
    if (!(alpha.rep.source() == omega_k(i)))
        throw std::invalid_argument("graded_compose: alpha is not a map out of Omega^" + std::to_string(i) + " k");
    if (!(beta.rep.source() == omega_k(j)))
        throw std::invalid_argument("graded_compose: beta is not a map out of Omega^" + std::to_string(j) + " k");
    return {i + j, compose(beta.rep, shift_class(alpha, j))};
}

ModuleMap StableCategory::shift_class(const TateClass& alpha, int j) const
{
    return compose(omega_power_map(alpha.rep, j), identification(alpha.degree, j));
}

std::vector<int> degree_window(int bound)
{
    if (bound < 0)
        throw std::invalid_argument("degree bound must be non-negative");
    std::vector<int> out = {0};
    for (int d = 1; d <= bound; ++d) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

std::optional<Element> detect_central_element(const ModuleMap& f, const GhostHints& hints)
{
    if (!(f.source() == f.target()))
        return std::nullopt;
    const Module& m = f.source();
    const Matrix id = Matrix::identity(m.field(), m.dim());
    if (hints.central_element) {
        const CentralElement x(m.group_ptr(), *hints.central_element);
        if (f.matrix() == m.act(x.index()) - id)
            return x.index();
        return std::nullopt;
    }
    for (const auto& x : center(m.group_ptr()))
        if (f.matrix() == m.act(x.index()) - id)
            return x.index();
    return std::nullopt;
}

namespace {

GhostVerdict certify(const StableCategory& cat, const ModuleMap& f, int bound, const GhostHints& hints)
{
    GhostVerdict v;
    v.bound = bound;
    const int period = cat.cyclic_period();
    if (period > 0 && bound >= period - 1) {
        v.kind = GhostKind::GhostCertified;
        v.certificate = "periodicity";
        v.period = period;
        return v;
    }
    if (detect_central_element(f, hints)) {
        v.kind = GhostKind::GhostCertified;
        v.certificate = "central-element";
        return v;
    }
    v.kind = GhostKind::GhostUpToBound;
    return v;
}

} // namespace

GhostChecker::GhostChecker(const StableCategory& cat, const Module& source, const Module& target, int bound)
    : cat_(cat), bound_(bound), degrees_(degree_window(bound))
{
    for (int d : degrees_) {
        source_classes_.push_back(cat.tate_cohomology(source, d));
        into_target_.push_back(cat.stable_hom(cat.omega_k(d), target));
    }
}

GhostVerdict GhostChecker::check(const ModuleMap& f, const GhostHints& hints) const
{
    for (std::size_t idx = 0; idx < degrees_.size(); ++idx)
        for (const auto& cls : source_classes_[idx].basis) {
            const Matrix image = f.matrix() * cls.rep.matrix();
            if (!into_target_[idx].is_trivial(image)) {
                GhostVerdict v;
                v.kind = GhostKind::NonGhost;
                v.bound = bound_;
                v.witness_degree = degrees_[idx];
                v.witness = cls.rep;
                return v;
            }
        }
    return certify(cat_, f, bound_, hints);
}

DualGhostChecker::DualGhostChecker(const StableCategory& cat, const Module& source, const Module& target,
                                   int bound)
    : cat_(cat), bound_(bound), degrees_(degree_window(bound))
{
    for (int d : degrees_) {
        out_of_target_.push_back(cat.stable_hom(target, cat.omega_k(d)));
        out_of_source_.push_back(cat.stable_hom(source, cat.omega_k(d)));
    }
}

GhostVerdict DualGhostChecker::check(const ModuleMap& f, const GhostHints& hints) const
{
    for (std::size_t idx = 0; idx < degrees_.size(); ++idx)
        for (const auto& h : out_of_target_[idx].representatives()) {
            const Matrix image = h.matrix() * f.matrix();
            if (!out_of_source_[idx].is_trivial(image)) {
                GhostVerdict v;
                v.kind = GhostKind::NonGhost;
                v.bound = bound_;
                v.witness_degree = degrees_[idx];
                v.witness = h;
                return v;
            }
        }
    return certify(cat_, f, bound_, hints);
}

GhostVerdict StableCategory::is_ghost(const ModuleMap& f, int bound, const GhostHints& hints) const
{
    check_module(f.source(), "is_ghost");
    return GhostChecker(*this, f.source(), f.target(), bound).check(f, hints);
}

GhostVerdict StableCategory::is_dual_ghost(const ModuleMap& f, int bound, const GhostHints& hints) const
{
    check_module(f.source(), "is_dual_ghost");
    return DualGhostChecker(*this, f.source(), f.target(), bound).check(f, hints);
}

int StableCategory::cyclic_period() const
{
    if (!cyclic_)
        return 0;
    return group_->order() == 2 ? 1 : 2;
}

std::optional<ModuleMap> StableCategory::stable_inverse(const ModuleMap& u) const
{
    check_module(u.source(), "stable_inverse");
    const Module& a = u.source();
    const Module& b = u.target();
    const HomSpace back = hom_space(b, a);
    const auto phom = phom_generators(a, a);
    const std::size_t ambient = a.dim() * a.dim();
    Matrix system(field_, ambient, back.dim() + phom.size());
    for (std::size_t l = 0; l < back.dim(); ++l)
        system.set_col(l, flatten(back.basis[l] * u.matrix()));
    for (std::size_t m = 0; m < phom.size(); ++m)
        system.set_col(back.dim() + m, flatten(phom[m]));
    const auto x = solve(system, flatten(Matrix::identity(field_, a.dim())));
    if (!x)
        return std::nullopt;
    const ModuleMap v = back.combination(Vec(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(back.dim())));
    if (!stably_equal(compose(u, v), ModuleMap::identity(b)))
        return std::nullopt;
    return v;
}

StableIsoResult StableCategory::is_stable_iso(const Module& m, const Module& n, int attempts,
                                              std::uint64_t seed) const
{
    check_module(m, "is_stable_iso");
    check_module(n, "is_stable_iso");
    StableIsoResult result;

    const Module core_m = projective_free_core(m);
    const Module core_n = projective_free_core(n);
    if (core_m.dim() != core_n.dim()) {
        result.outcome = StableIsoResult::Outcome::NotIsomorphic;
        result.method = "core-dimension";
        return result;
    }
    bool definitive = false;
    if (cyclic_) {
        if (!(jordan_type(core_m) == jordan_type(core_n))) {
            result.outcome = StableIsoResult::Outcome::NotIsomorphic;
            result.method = "jordan";
            return result;
        }
        definitive = true;
        attempts = std::max(attempts, 200);
    }

    const HomSpace forward = hom_space(m, n);
    const HomSpace backward = hom_space(n, m);
    const auto phom_m = phom_generators(m, m);
    const auto phom_n = phom_generators(n, n);
    const Subspace phom_n_span = span_of(field_, n.dim() * n.dim(), phom_n);
    const Matrix id_m = Matrix::identity(field_, m.dim());
    const Matrix id_n = Matrix::identity(field_, n.dim());

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        Vec coeffs(forward.dim());
        for (auto& c : coeffs)
            c = static_cast<Scalar>(rng() % field_.p());
        const ModuleMap f = forward.combination(coeffs);

        Matrix system(field_, m.dim() * m.dim(), backward.dim() + phom_m.size());
        for (std::size_t l = 0; l < backward.dim(); ++l)
            system.set_col(l, flatten(backward.basis[l] * f.matrix()));
        for (std::size_t q = 0; q < phom_m.size(); ++q)
            system.set_col(backward.dim() + q, flatten(phom_m[q]));
        const auto x = solve(system, flatten(id_m));
        if (!x)
            continue;
        const ModuleMap g =
            backward.combination(Vec(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(backward.dim())));
        if (!phom_n_span.contains(flatten(f.matrix() * g.matrix() - id_n)))
            continue;
        result.outcome = StableIsoResult::Outcome::Isomorphic;
        result.method = definitive ? "jordan+witness" : "witness";
        result.forward = f;
        result.backward = g;
        return result;
    }
    result.outcome = StableIsoResult::Outcome::NotFound;
    result.method = definitive ? "jordan-equal-witness-not-found" : "search-exhausted";
    return result;
}

} // namespace stmod
