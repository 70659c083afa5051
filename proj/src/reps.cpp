#include "stmod/reps.hpp"

#include <algorithm>
#include <stdexcept>

namespace stmod {

namespace {

void check_compatible(const Module& a, const Module& b, const char* what)
{
    if (!a.compatible_with(b))
        throw std::invalid_argument(std::string(what) + ": modules over different groups or fields");
}

} // namespace

Module::Module(GroupPtr group, PrimeField field, std::vector<Matrix> action)
    : group_(std::move(group)), field_(field), dim_(0)
{
    if (!group_)
        throw std::invalid_argument("module without a group");
    if (action.size() != group_->order())
        throw std::invalid_argument("module needs one matrix per group element");
    dim_ = action.front().rows();
    for (const auto& a : action)
        if (a.rows() != dim_ || a.cols() != dim_ || a.field() != field_)
            throw std::invalid_argument("module action matrices have inconsistent shape or field");
    if (!action[0].is_identity())
        throw std::invalid_argument("identity element does not act as the identity matrix");
    for (auto s : group_->generators())
        for (Element g = 0; g < group_->order(); ++g)
            if (!(action[s] * action[g] == action[group_->mul(s, g)]))
                throw std::invalid_argument("action is not a homomorphism at (" + std::to_string(s) + ", " +
                                            std::to_string(g) + ")");
    action_ = std::make_shared<const std::vector<Matrix>>(std::move(action));
}

Module Module::from_generators(GroupPtr group, PrimeField field, std::size_t dim,
                               const std::map<Element, Matrix>& generators)
{
    const Group& g = *group;
    std::vector<std::optional<Matrix>> table(g.order());
    table[0] = Matrix::identity(field, dim);
    for (const auto& [e, m] : generators) {
        if (e >= g.order())
            throw std::invalid_argument("generator index " + std::to_string(e) + " outside group of order " +
                                        std::to_string(g.order()));
        if (m.rows() != dim || m.cols() != dim)
            throw std::invalid_argument("generator matrix for element " + std::to_string(e) + " is not " +
                                        std::to_string(dim) + "x" + std::to_string(dim));
    }
    std::vector<Element> frontier = {0};
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (auto x : frontier)
            for (const auto& [s, m] : generators) {
                const Element y = g.mul(s, x);
                if (!table[y]) {
                    table[y] = m * *table[x];
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    std::vector<Matrix> action;
    action.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        if (!table[x])
            throw std::invalid_argument("given generators do not generate " + g.name());
        action.push_back(std::move(*table[x]));
    }
    Module out(std::move(group), field, std::move(action));
    for (const auto& [e, m] : generators)
        if (!(out.act(e) == m))
            throw std::invalid_argument("generator matrices are inconsistent with the group law");
    return out;
}

bool Module::compatible_with(const Module& other) const
{
    return field_ == other.field_ && group_->same_as(*other.group_);
}

bool Module::operator==(const Module& other) const
{
    if (!compatible_with(other) || dim_ != other.dim_)
        return false;
    return action_ == other.action_ || *action_ == *other.action_;
}

bool is_module_map(const Module& source, const Module& target, const Matrix& mat)
{
    if (mat.rows() != target.dim() || mat.cols() != source.dim())
        return false;
    for (auto s : source.group().generators())
        if (!(mat * source.act(s) == target.act(s) * mat))
            return false;
    return true;
}

ModuleMap::ModuleMap(Module source, Module target, Matrix mat)
    : source_(std::move(source)), target_(std::move(target)), mat_(std::move(mat))
{
    check_compatible(source_, target_, "module map");
    if (mat_.rows() != target_.dim() || mat_.cols() != source_.dim())
        throw std::invalid_argument("map matrix is " + std::to_string(mat_.rows()) + "x" +
                                    std::to_string(mat_.cols()) + ", expected " + std::to_string(target_.dim()) +
                                    "x" + std::to_string(source_.dim()));
    if (!is_module_map(source_, target_, mat_))
        throw std::invalid_argument("matrix does not intertwine the actions");
}

ModuleMap ModuleMap::zero(const Module& source, const Module& target)
{
    return ModuleMap(source, target, Matrix(source.field(), target.dim(), source.dim()));
}

ModuleMap ModuleMap::identity(const Module& m)
{
    return ModuleMap(m, m, Matrix::identity(m.field(), m.dim()));
}

ModuleMap ModuleMap::operator+(const ModuleMap& rhs) const
{
    return ModuleMap(source_, target_, mat_ + rhs.mat_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& rhs) const
{
    return ModuleMap(source_, target_, mat_ - rhs.mat_);
}

ModuleMap ModuleMap::scaled(Scalar s) const
{
    return ModuleMap(source_, target_, mat_.scaled(s));
}

ModuleMap compose(const ModuleMap& after, const ModuleMap& before)
{
    if (!(before.target() == after.source()))
        throw std::invalid_argument("compose: target of the first map is not the source of the second");
    return ModuleMap(before.source(), after.target(), after.matrix() * before.matrix());
}

ModuleMap HomSpace::combination(const Vec& coefficients) const
{
    if (coefficients.size() != basis.size())
        throw std::invalid_argument("coefficient count does not match hom space dimension");
    Matrix m(source.field(), target.dim(), source.dim());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coefficients[i] % source.field().p() != 0)
            m = m + basis[i].scaled(coefficients[i]);
    return ModuleMap(source, target, std::move(m));
}

std::size_t JordanType::total() const
{
    std::size_t t = 0;
    for (auto b : blocks)
        t += b;
    return t;
}

Module trivial_module(const GroupPtr& g, PrimeField k)
{
    return Module(g, k, std::vector<Matrix>(g->order(), Matrix::identity(k, 1)));
}

Module regular_module(const GroupPtr& g, PrimeField k)
{
    const std::size_t n = g->order();
    std::vector<Matrix> action;
    action.reserve(n);
    for (Element x = 0; x < n; ++x) {
        Matrix m(k, n, n);
        for (Element h = 0; h < n; ++h)
            m(g->mul(x, h), h) = 1;
        action.push_back(std::move(m));
    }
    return Module(g, k, std::move(action));
}

void require_p_group(const Group& g, PrimeField k, const char* what)
{
    if (!is_p_group(g, k.p()))
        throw std::invalid_argument(std::string(what) + ": " + g.name() + " of order " + std::to_string(g.order()) +
                                    " is not a " + std::to_string(k.p()) + "-group");
}

Module cyclic_module(const GroupPtr& g, PrimeField k, std::size_t length)
{
    if (!is_cyclic(*g))
        throw std::invalid_argument("cyclic_module: " + g->name() + " is not cyclic");
    require_p_group(*g, k, "cyclic_module");
    if (length < 1 || length > g->order())
        throw std::invalid_argument("cyclic_module: length " + std::to_string(length) + " outside [1, " +
                                    std::to_string(g->order()) + "]");
    Matrix sigma = Matrix::identity(k, length);
    for (std::size_t i = 0; i + 1 < length; ++i)
        sigma(i + 1, i) = 1;
    if (g->order() == 1)
        return trivial_module(g, k);
    return Module::from_generators(g, k, length, {{cyclic_generator(*g), sigma}});
}

Module jordan_module(const GroupPtr& g, PrimeField k, std::span<const std::size_t> blocks)
{
    if (blocks.empty())
        throw std::invalid_argument("jordan_module needs at least one block");
    std::vector<Module> parts;
    for (auto b : blocks)
        parts.push_back(cyclic_module(g, k, b));
    return direct_sum(parts);
}

Module direct_sum(std::span<const Module> parts)
{
    if (parts.empty())
        throw std::invalid_argument("direct sum of no modules");
    for (const auto& m : parts)
        check_compatible(parts.front(), m, "direct_sum");
    const Group& g = parts.front().group();
    std::vector<Matrix> action;
    action.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        std::vector<Matrix> blocks;
        for (const auto& m : parts)
            blocks.push_back(m.act(x));
        action.push_back(Matrix::block_diagonal(blocks));
    }
    return Module(parts.front().group_ptr(), parts.front().field(), std::move(action));
}

Module direct_sum(const Module& a, const Module& b)
{
    const Module parts[] = {a, b};
    return direct_sum(parts);
}

ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g)
{
    const Matrix blocks[] = {f.matrix(), g.matrix()};
    return ModuleMap(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                     Matrix::block_diagonal(blocks));
}

Module dual(const Module& m)
{
    const Group& g = m.group();
    std::vector<Matrix> action;
    action.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x)
        action.push_back(m.act(g.inv(x)).transpose());
    return Module(m.group_ptr(), m.field(), std::move(action));
}

ModuleMap dual(const ModuleMap& f)
{
    return ModuleMap(dual(f.target()), dual(f.source()), f.matrix().transpose());
}

Module conjugate(const Module& m, const Matrix& s)
{
    auto s_inv = inverse(s);
    if (!s_inv || s.rows() != m.dim())
        throw std::invalid_argument("conjugate: change of basis is not invertible of the right size");
    std::vector<Matrix> action;
    action.reserve(m.group().order());
    for (const auto& a : m.actions())
        action.push_back(s * a * *s_inv);
    return Module(m.group_ptr(), m.field(), std::move(action));
}

ModuleMap central_minus_one(const Module& m, const CentralElement& x)
{
    if (!x.group()->same_as(m.group()))
        throw std::invalid_argument("central element belongs to a different group");
    return ModuleMap(m, m, m.act(x.index()) - Matrix::identity(m.field(), m.dim()));
}

HomSpace hom_space(const Module& source, const Module& target)
{
    check_compatible(source, target, "hom_space");
    const PrimeField k = source.field();
    const std::size_t dm = source.dim(), dn = target.dim(), unknowns = dm * dn;
    const auto& gens = source.group().generators();
    HomSpace out{source, target, {}};
    if (unknowns == 0)
        return out;
    if (gens.empty()) {
        for (std::size_t u = 0; u < unknowns; ++u) {
            Vec e(unknowns, 0);
            e[u] = 1;
            out.basis.push_back(Matrix::from_entries(k, dn, dm, std::move(e)));
        }
        return out;
    }

    // X A_s - B_s X = 0 with X (dn x dm) flattened row-major.
    Matrix system(k, gens.size() * unknowns, unknowns);
    for (std::size_t si = 0; si < gens.size(); ++si) {
        const Matrix& a = source.act(gens[si]);
        const Matrix& b = target.act(gens[si]);
        for (std::size_t r = 0; r < dn; ++r)
            for (std::size_t c = 0; c < dm; ++c) {
                const std::size_t eq = si * unknowns + r * dm + c;
                for (std::size_t j = 0; j < dm; ++j)
                    system(eq, r * dm + j) = k.add(system(eq, r * dm + j), a(j, c));
                for (std::size_t e = 0; e < dn; ++e)
                    system(eq, e * dm + c) = k.sub(system(eq, e * dm + c), b(r, e));
            }
    }
    const Matrix kernel = kernel_basis(system);
    for (std::size_t j = 0; j < kernel.cols(); ++j)
        out.basis.push_back(Matrix::from_entries(k, dn, dm, kernel.col(j)));
    return out;
}

Submodule submodule(const Module& m, const Matrix& spanning)
{
    const Subspace sub(spanning);
    const Group& g = m.group();
    std::vector<Matrix> action;
    action.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        const Matrix image = m.act(x) * sub.basis();
        for (std::size_t j = 0; j < image.cols(); ++j)
            if (!sub.contains(image.col(j)))
                throw std::invalid_argument("subspace is not invariant under the group action");
        action.push_back(sub.coordinates(image));
    }
    Module s(m.group_ptr(), m.field(), std::move(action));
    return {s, ModuleMap(s, m, sub.basis())};
}

QuotientModule quotient(const Module& m, const Subspace& sub)
{
    std::vector<bool> is_pivot(m.dim(), false);
    for (auto p : sub.pivots())
        is_pivot[p] = true;
    std::vector<std::size_t> complement;
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (!is_pivot[i])
            complement.push_back(i);

    // q(v) = reduce(v) restricted to the non-pivot coordinates.
    const PrimeField k = m.field();
    Matrix proj(k, complement.size(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Vec e(m.dim(), 0);
        e[i] = 1;
        const Vec r = sub.reduce(e);
        for (std::size_t j = 0; j < complement.size(); ++j)
            proj(j, i) = r[complement[j]];
    }
    const Group& g = m.group();
    std::vector<Matrix> action;
    action.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        const Matrix image = m.act(x).select_cols(complement);
        for (std::size_t j = 0; j < sub.dim(); ++j)
            if (!sub.contains(m.act(x) * sub.basis().col(j)))
                throw std::invalid_argument("quotient by a non-invariant subspace");
        action.push_back(proj * image);
    }
    Module q(m.group_ptr(), k, std::move(action));
    return {q, ModuleMap(m, q, std::move(proj))};
}

Submodule radical(const Module& m)
{
    require_p_group(m.group(), m.field(), "radical");
    const Group& g = m.group();
    const Matrix id = Matrix::identity(m.field(), m.dim());
    std::vector<Matrix> parts;
    for (Element x = 1; x < g.order(); ++x)
        parts.push_back(m.act(x) - id);
    if (parts.empty())
        parts.push_back(Matrix(m.field(), m.dim(), 0));
    return submodule(m, Matrix::hstack(parts));
}

CoverData projective_cover(const Module& m)
{
    require_p_group(m.group(), m.field(), "projective_cover");
    const PrimeField k = m.field();
    const Group& g = m.group();
    const std::size_t n = g.order();

    const Submodule rad = radical(m);
    std::vector<Vec> span;
    for (std::size_t j = 0; j < rad.embedding.matrix().cols(); ++j)
        span.push_back(rad.embedding.matrix().col(j));
    std::size_t current = Subspace(k, m.dim(), span).dim();
    std::vector<Vec> tops;
    for (std::size_t i = 0; i < m.dim() && current < m.dim(); ++i) {
        Vec e(m.dim(), 0);
        e[i] = 1;
        span.push_back(e);
        const std::size_t next = Subspace(k, m.dim(), span).dim();
        if (next > current) {
            tops.push_back(e);
            current = next;
        } else {
            span.pop_back();
        }
    }

    const std::size_t t = tops.size();
    Matrix pi(k, m.dim(), t * n);
    for (std::size_t c = 0; c < t; ++c)
        for (Element x = 0; x < n; ++x)
            pi.set_col(c * n + x, m.act(x) * tops[c]);

    Module projective = t == 0 ? Module(m.group_ptr(), k, std::vector<Matrix>(n, Matrix(k, 0, 0)))
                               : direct_sum(std::vector<Module>(t, regular_module(m.group_ptr(), k)));
    ModuleMap pi_map(projective, m, pi);
    Submodule kernel = submodule(projective, kernel_basis(pi));
    return {projective, pi_map, kernel.embedding, t};
}

Module induce(const Subgroup& h, const Module& m)
{
    if (!m.group().same_as(*h.as_group()))
        throw std::invalid_argument("induce: module is not over the given subgroup");
    const Group& g = *h.parent();
    const std::size_t d = m.dim(), idx = h.index();
    std::vector<Matrix> action;
    action.reserve(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        Matrix a(m.field(), idx * d, idx * d);
        for (std::size_t c = 0; c < idx; ++c) {
            const Element y = g.mul(x, h.coset_reps()[c]);
            a.set_block(h.coset_of(y) * d, c * d, m.act(h.coset_twist(y)));
        }
        action.push_back(std::move(a));
    }
    return Module(h.parent(), m.field(), std::move(action));
}

ModuleMap induce(const Subgroup& h, const ModuleMap& f)
{
    std::vector<Matrix> blocks(h.index(), f.matrix());
    return ModuleMap(induce(h, f.source()), induce(h, f.target()), Matrix::block_diagonal(blocks));
}

Module restrict(const Module& m, const Subgroup& h)
{
    if (!m.group().same_as(*h.parent()))
        throw std::invalid_argument("restrict: module is not over the subgroup's parent");
    std::vector<Matrix> action;
    action.reserve(h.order());
    for (auto x : h.members())
        action.push_back(m.act(x));
    return Module(h.as_group(), m.field(), std::move(action));
}

ModuleMap restrict(const ModuleMap& f, const Subgroup& h)
{
    return ModuleMap(restrict(f.source(), h), restrict(f.target(), h), f.matrix());
}

JordanType jordan_type(const Module& m)
{
    const Group& g = m.group();
    if (!is_cyclic(g))
        throw std::invalid_argument("jordan_type: " + g.name() + " is not cyclic");
    require_p_group(g, m.field(), "jordan_type");
    if (m.dim() == 0)
        return {};
    const Matrix nil = m.act(cyclic_generator(g)) - Matrix::identity(m.field(), m.dim());

    // ranks[j] = rank(nil^j); blocks of size >= j number ranks[j-1] - ranks[j].
    std::vector<std::size_t> ranks = {m.dim()};
    Matrix power = Matrix::identity(m.field(), m.dim());
    while (ranks.back() > 0) {
        power = power * nil;
        const std::size_t r = rank(power);
        if (r == ranks.back())
            throw std::logic_error("jordan_type: (s - 1) is not nilpotent");
        ranks.push_back(r);
    }
    ranks.push_back(0);
    JordanType out;
    for (std::size_t j = ranks.size() - 2; j >= 1; --j) {
        const std::size_t at_least_j = ranks[j - 1] - ranks[j];
        const std::size_t at_least_next = ranks[j] - ranks[j + 1];
        for (std::size_t c = 0; c < at_least_j - at_least_next; ++c)
            out.blocks.push_back(j);
    }
    return out;
}

} // namespace stmod
