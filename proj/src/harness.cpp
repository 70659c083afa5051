#include "stmod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace stmod {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Runs body(t) for t in [0, count) on a small pool; results keep trial order.
std::vector<CheckRecord> run_trials(int count, unsigned threads, const std::function<CheckRecord(int)>& body)
{
    std::vector<CheckRecord> out(static_cast<std::size_t>(std::max(count, 0)));
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (int t; (t = next++) < count;) {
                    try {
                        out[static_cast<std::size_t>(t)] = body(t);
                        out[static_cast<std::size_t>(t)].order = static_cast<std::size_t>(t);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

PrimeField field_for(const Group& g)
{
    const unsigned p = prime_of_order(g);
    if (p == 0)
        throw std::invalid_argument(g.name() + " is not a nontrivial p-group");
    return PrimeField(p);
}

/// Non-projective Jordan block sizes realised by Omega^i k, mapped to i in {0, 1}.
std::map<std::size_t, int> suspension_blocks(const StableCategory& cat)
{
    std::map<std::size_t, int> out;
    for (int i : {1, 0}) {
        const JordanType t = jordan_type(cat.omega_k(i));
        if (t.blocks.size() != 1)
            throw std::logic_error("Omega^i k is not indecomposable over a cyclic group");
        out[t.blocks.front()] = i;
    }
    return out;
}

std::string jordan_label(const JordanType& t)
{
    std::string s = "{";
    for (std::size_t i = 0; i < t.blocks.size(); ++i)
        s += (i ? "," : "") + std::to_string(t.blocks[i]);
    return s + "}";
}

} // namespace

void SearchConfig::validate() const
{
    if (dim_bound <= 0 || trials <= 0 || ghost_degree_bound < 0 || iso_attempts <= 0)
        throw std::invalid_argument("search config: dim_bound, trials and iso_attempts must be positive and the "
                                    "degree bound non-negative");
}

json SearchConfig::to_json() const
{
    return {{"dim_bound", dim_bound},
            {"trials", trials},
            {"seed", seed},
            {"ghost_degree_bound", ghost_degree_bound},
            {"iso_attempts", iso_attempts},
            {"override_unsafe", override_unsafe}};
}

SearchConfig default_config(unsigned p, std::uint64_t seed)
{
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.dim_bound = p == 2 ? 8 : static_cast<int>(3 * p);
    return cfg;
}

void Report::add(CheckRecord record)
{
    checks_.push_back(std::move(record));
}

void Report::append(const Report& other)
{
    for (const auto& c : other.checks_)
        checks_.push_back(c);
}

bool Report::all_passed() const
{
    return failures() == 0;
}

std::size_t Report::failures() const
{
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [](const CheckRecord& c) { return !c.passed; }));
}

const CheckRecord* Report::find(const std::string& name) const
{
    for (const auto& c : checks_)
        if (c.name == name)
            return &c;
    return nullptr;
}

json Report::to_json() const
{
    json checks = json::array();
    for (const auto& c : checks_) {
        json r = {{"name", c.name}, {"inputs", c.inputs}, {"passed", c.passed}, {"outcome", c.outcome}};
        if (c.witness)
            r["witness"] = *c.witness;
        if (c.ms && config_.timing)
            r["ms"] = *c.ms;
        checks.push_back(std::move(r));
    }
    return {{"version", kReportVersion},
            {"config", config_.to_json()},
            {"checks", std::move(checks)},
            {"all_passed", all_passed()},
            {"failures", failures()}};
}

bool classify_gh(const Group& g, unsigned p)
{
    if (g.order() == 1 || !is_p_group(g, p))
        throw std::invalid_argument("classify_gh: " + g.name() + " is not a nontrivial " + std::to_string(p) +
                                    "-group");
    return is_cyclic(g) && ((g.order() == 2 && p == 2) || (g.order() == 3 && p == 3));
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
{
    // splitmix64 over a mix of the two inputs
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::vector<std::size_t>> bounded_partitions(std::size_t max_part, std::size_t max_total)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t largest) {
        if (!current.empty())
            out.push_back(current);
        for (std::size_t part = std::min(largest, remaining); part >= 1; --part) {
            current.push_back(part);
            rec(remaining - part, part);
            current.pop_back();
        }
    };
    rec(max_total, max_part);
    return out;
}

Module random_cyclic_module(const GroupPtr& g, PrimeField k, int dim_bound, std::mt19937_64& rng)
{
    const auto parts = bounded_partitions(g->order(), static_cast<std::size_t>(dim_bound));
    const auto& blocks = parts[rng() % parts.size()];
    const Module base = jordan_module(g, k, blocks);
    const std::size_t d = base.dim();
    for (;;) {
        Matrix s(k, d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                s(r, c) = static_cast<Scalar>(rng() % k.p());
        if (rank(s) == d)
            return conjugate(base, s);
    }
}

Report verify_no_ghosts(const GroupPtr& g, const SearchConfig& cfg)
{
    cfg.validate();
    const PrimeField k = field_for(*g);
    if (!is_cyclic(*g))
        throw std::invalid_argument("verify_no_ghosts: random modules are generated for cyclic groups only");
    const bool holds = classify_gh(*g, k.p());
    if (!holds && !cfg.override_unsafe)
        throw std::invalid_argument("verify_no_ghosts: " + g->name() +
                                    " is not C2 or C3; pass --override-unsafe to run it as a falsification demo");

    const StableCategory cat(g, k);
    const auto suspensions = suspension_blocks(cat);
    const GhostHints no_hints;
    const CentralElement sigma(g, cyclic_generator(*g));

    auto structural = [&](const Module& m) {
        for (auto b : jordan_type(m).blocks)
            if (b != g->order() && !suspensions.contains(b))
                return false;
        return true;
    };

    Report report(cfg);
    auto records = run_trials(cfg.trials, cfg.threads, [&](int t) {
        const auto start = Clock::now();
        const std::uint64_t s = trial_seed(cfg.seed, static_cast<std::uint64_t>(t));
        std::mt19937_64 rng(s);
        const Module m = random_cyclic_module(g, k, cfg.dim_bound, rng);
        const Module n = random_cyclic_module(g, k, cfg.dim_bound, rng);

        std::vector<ModuleMap> maps;
        const HomSpace hom = hom_space(m, n);
        for (std::size_t i = 0; i < hom.dim(); ++i)
            maps.push_back(hom.map(i));
        if (hom.dim() > 0) {
            Vec c(hom.dim());
            for (auto& x : c)
                x = static_cast<Scalar>(rng() % k.p());
            maps.push_back(hom.combination(c));
        }

        std::size_t ghosts = 0, violations = 0;
        std::optional<json> witness;
        auto examine = [&](const GhostChecker& checker, const ModuleMap& f) {
            const GhostVerdict v = checker.check(f, no_hints);
            if (!v.is_ghost())
                return;
            ++ghosts;
            if (cat.is_stably_trivial(f))
                return;
            ++violations;
            if (!witness)
                witness = json{{"map", map_to_json(f)}, {"verdict", verdict_to_json(v)}};
        };
        const GhostChecker between(cat, m, n, cfg.ghost_degree_bound);
        for (const auto& f : maps)
            examine(between, f);
        const GhostChecker endo(cat, m, m, cfg.ghost_degree_bound);
        examine(endo, central_minus_one(m, sigma));

        const bool structural_ok = structural(m) && structural(n);
        CheckRecord r;
        r.name = "no-ghosts/trial-" + std::to_string(t);
        r.inputs = {{"group", g->name()},
                    {"trial", t},
                    {"trial_seed", s},
                    {"source_jordan", jordan_label(jordan_type(m))},
                    {"target_jordan", jordan_label(jordan_type(n))}};
        r.outcome = {{"maps_checked", maps.size() + 1},
                     {"ghosts", ghosts},
                     {"violations", violations},
                     {"structural_ok", structural_ok}};
        r.passed = violations == 0 && structural_ok;
        if (!r.passed) {
            json w = witness.value_or(json::object());
            w["source"] = module_to_json(m);
            w["target"] = module_to_json(n);
            r.witness = std::move(w);
        }
        r.ms = elapsed_ms(start);
        return r;
    });

    std::size_t violations = 0, ghosts = 0, structural_failures = 0;
    for (auto& r : records) {
        violations += r.outcome["violations"].get<std::size_t>();
        ghosts += r.outcome["ghosts"].get<std::size_t>();
        structural_failures += r.outcome["structural_ok"].get<bool>() ? 0 : 1;
        report.add(std::move(r));
    }
    CheckRecord summary;
    summary.name = "no-ghosts/summary";
    summary.inputs = {{"group", g->name()}, {"gh_predicted", holds}};
    summary.outcome = {{"trials", cfg.trials},
                       {"violations", violations},
                       {"ghosts", ghosts},
                       {"structural_failures", structural_failures}};
    summary.passed = violations == 0 && structural_failures == 0;
    summary.order = static_cast<std::size_t>(cfg.trials);
    report.add(std::move(summary));
    return report;
}

Report verify_decomposition(const GroupPtr& g, const SearchConfig& cfg)
{
    cfg.validate();
    const PrimeField k = field_for(*g);
    if (!is_cyclic(*g))
        throw std::invalid_argument("verify_decomposition: " + g->name() + " is not cyclic");
    const bool predicted = classify_gh(*g, k.p());
    const StableCategory cat(g, k);
    const auto suspensions = suspension_blocks(cat);

    // Returns (decomposable, confirmed by stable isomorphism witnesses, label of the model).
    auto analyse = [&](const Module& m, std::uint64_t seed) {
        const Module core = projective_free_core(m);
        const JordanType t = jordan_type(core);
        std::vector<Module> parts;
        std::string model;
        for (auto b : t.blocks) {
            auto it = suspensions.find(b);
            if (it == suspensions.end())
                return std::tuple<bool, bool, std::string, JordanType>{false, false, "", t};
            parts.push_back(cat.omega_k(it->second));
            model += (model.empty() ? "" : "+") + std::string(it->second == 0 ? "k" : "Omega k");
        }
        if (parts.empty())
            return std::tuple<bool, bool, std::string, JordanType>{true, true, "0", t};
        const auto iso = cat.is_stable_iso(m, direct_sum(parts), cfg.iso_attempts, seed);
        return std::tuple<bool, bool, std::string, JordanType>{true, iso.isomorphic(), model, t};
    };

    Report report(cfg);
    auto records = run_trials(cfg.trials, cfg.threads, [&](int t) {
        const auto start = Clock::now();
        const std::uint64_t s = trial_seed(cfg.seed, static_cast<std::uint64_t>(t));
        std::mt19937_64 rng(s);
        const Module m = random_cyclic_module(g, k, cfg.dim_bound, rng);
        const auto [decomposable, confirmed, model, core_type] = analyse(m, s);
        CheckRecord r;
        r.name = "decomposition/trial-" + std::to_string(t);
        r.inputs = {{"group", g->name()}, {"trial", t}, {"trial_seed", s}, {"jordan", jordan_label(jordan_type(m))}};
        r.outcome = {{"core_jordan", jordan_label(core_type)},
                     {"decomposable", decomposable},
                     {"stable_iso_witnessed", confirmed},
                     {"model", model}};
        r.passed = decomposable && confirmed;
        if (!r.passed)
            r.witness = json{{"module", module_to_json(m)}};
        r.ms = elapsed_ms(start);
        return r;
    });
    std::size_t indecomposable = 0;
    for (auto& r : records) {
        indecomposable += r.outcome["decomposable"].get<bool>() ? 0 : 1;
        report.add(std::move(r));
    }

    // The length-two cyclic module: a sum of suspensions of k exactly when |G| <= 3.
    const Module length_two = cyclic_module(g, k, std::min<std::size_t>(2, g->order()));
    const auto [decomposable, confirmed, model, core_type] = analyse(length_two, cfg.seed);
    CheckRecord w;
    w.name = "decomposition/length-two-module";
    w.inputs = {{"group", g->name()}, {"module", "cyclic_module(" + g->name() + ", 2)"}};
    w.outcome = {{"core_jordan", jordan_label(core_type)},
                 {"decomposable", decomposable},
                 {"stable_iso_witnessed", confirmed},
                 {"model", model},
                 {"suspension_blocks", [&] {
                      json j = json::array();
                      for (const auto& [b, i] : suspensions)
                          j.push_back(b);
                      return j;
                  }()}};
    w.passed = decomposable && confirmed;
    if (!w.passed)
        w.witness = json{{"module", module_to_json(length_two)}};
    w.order = static_cast<std::size_t>(cfg.trials);
    report.add(std::move(w));

    CheckRecord summary;
    summary.name = "decomposition/summary";
    summary.inputs = {{"group", g->name()}, {"gh_predicted", predicted}};
    summary.outcome = {{"trials", cfg.trials},
                       {"not_decomposable", indecomposable},
                       {"length_two_decomposable", decomposable},
                       {"agrees_with_classification", (report.failures() == 0) == predicted}};
    summary.passed = report.failures() == 0;
    summary.order = static_cast<std::size_t>(cfg.trials) + 1;
    report.add(std::move(summary));
    return report;
}

Report verify_counterexamples(const SearchConfig& cfg)
{
    cfg.validate();
    const int bound = cfg.ghost_degree_bound;
    Report report(cfg);

    struct Named {
        std::string name;
        std::function<CounterexampleBundle()> build;
    };
    const std::vector<Named> constructions = {
        {"cyclic-C4", [&] { return cyclic_length2_ghost(4, bound); }},
        {"cyclic-C5", [&] { return cyclic_length2_ghost(5, bound); }},
        {"rank2-C2xC2", [&] { return rank2_ghost(2, std::nullopt, bound); }},
        {"rank2-C3xC3", [&] { return rank2_ghost(3, std::nullopt, bound); }},
        {"induced-C4-to-C8",
         [&] {
             const Element gens[] = {2};
             return induced_ghost(Subgroup(cyclic(8), gens), cyclic_length2_ghost(4, bound), bound);
         }},
    };

    std::size_t verified = 0;
    std::vector<CounterexampleBundle> bundles;
    for (const auto& c : constructions) {
        const auto start = Clock::now();
        CheckRecord r;
        r.name = "counterexample/" + c.name;
        r.inputs = {{"construction", c.name}, {"bound", bound}};
        try {
            CounterexampleBundle b = c.build();
            r.outcome = bundle_to_json(b);
            r.outcome.erase("map");
            r.passed = b.is_counterexample();
            r.witness = map_to_json(b.map);
            bundles.push_back(std::move(b));
        } catch (const std::exception& e) {
            r.outcome = {{"error", e.what()}};
            r.passed = false;
        }
        verified += r.passed ? 1 : 0;
        r.ms = elapsed_ms(start);
        report.add(std::move(r));
    }

    {
        // Same construction over C3 factors through the projective cover.
        const GroupPtr c3 = cyclic(3);
        const PrimeField k3(3);
        const StableCategory cat(c3, k3);
        const ModuleMap h = central_minus_one(cyclic_module(c3, k3, 2), CentralElement(c3, 1));
        bool rejected = false;
        std::string message;
        try {
            cyclic_length2_ghost(3, bound);
        } catch (const std::invalid_argument& e) {
            rejected = true;
            message = e.what();
        }
        CheckRecord r;
        r.name = "control/C3-length-two";
        r.inputs = {{"group", "C3"}, {"module", "cyclic_module(C3, 2)"}};
        r.outcome = {{"stably_trivial", cat.is_stably_trivial(h)}, {"constructor_rejected", rejected},
                     {"message", message}};
        r.passed = cat.is_stably_trivial(h) && rejected;
        if (!r.passed)
            r.witness = map_to_json(h);
        report.add(std::move(r));
    }

    for (std::size_t i = 0; i < bundles.size(); ++i) {
        const auto& b = bundles[i];
        const StableCategory cat(b.map.source().group_ptr(), b.map.source().field());
        const GhostVerdict dual_ghost = cat.is_dual_ghost(b.map, bound);
        const GhostVerdict ghost_of_dual = cat.is_ghost(dual(b.map), bound);
        const GhostVerdict dual_of_dual = cat.is_dual_ghost(dual(b.map), bound);
        CheckRecord r;
        r.name = "dual/" + b.label;
        r.inputs = {{"bundle", b.label}, {"bound", bound}};
        r.outcome = {{"is_dual_ghost", verdict_to_json(dual_ghost)},
                     {"is_ghost_of_dual", verdict_to_json(ghost_of_dual)},
                     {"dual_is_dual_ghost", verdict_to_json(dual_of_dual)}};
        r.passed = dual_ghost.is_ghost() && ghost_of_dual.is_ghost() && dual_of_dual.is_ghost() &&
                   !cat.is_stably_trivial(dual(b.map));
        if (!r.passed)
            r.witness = map_to_json(b.map);
        report.add(std::move(r));
    }

    {
        const auto start = Clock::now();
        const GroupPtr c2 = cyclic(2);
        const GroupPtr g = direct_product(direct_product(c2, c2), c2);
        const Element gens[] = {2, 4};
        CheckRecord r;
        r.name = "monotonicity/rank2-C2xC2-to-C2xC2xC2";
        r.inputs = {{"subgroup_generators", {2, 4}}, {"group", g->name()}};
        try {
            const auto b = induced_ghost(Subgroup(g, gens), rank2_ghost(2, std::nullopt, bound), bound);
            r.outcome = bundle_to_json(b);
            r.outcome.erase("map");
            r.passed = b.is_counterexample();
            r.witness = map_to_json(b.map);
        } catch (const std::exception& e) {
            r.outcome = {{"error", e.what()}};
        }
        r.ms = elapsed_ms(start);
        report.add(std::move(r));
    }

    CheckRecord summary;
    summary.name = "counterexample/summary";
    summary.inputs = {{"constructions", constructions.size()}};
    summary.outcome = {{"verified", verified}, {"total", constructions.size()}};
    summary.passed = verified == constructions.size();
    report.add(std::move(summary));
    return report;
}

FullnessResult tate_fullness(const StableCategory& cat, const Module& m, const Module& x, int lo, int hi)
{
    if (lo > hi)
        throw std::invalid_argument("tate_fullness: empty degree window");
    const PrimeField k = cat.field();
    const Module unit = cat.trivial();
    const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
    std::vector<TateGroup> tm, tx;
    for (int i = lo; i <= hi; ++i) {
        tm.push_back(cat.tate_cohomology(m, i));
        tx.push_back(cat.tate_cohomology(x, i));
    }
    auto at = [&](int i) { return static_cast<std::size_t>(i - lo); };

    std::vector<std::size_t> offset(width + 1, 0);
    for (std::size_t w = 0; w < width; ++w)
        offset[w + 1] = offset[w] + tx[w].dim() * tm[w].dim();
    const std::size_t unknowns = offset[width];
    auto var = [&](int i, std::size_t r, std::size_t s) { return offset[at(i)] + r * tm[at(i)].dim() + s; };

    std::vector<Vec> equations;
    for (int a = lo - hi; a <= hi - lo; ++a) {
        const TateGroup ring = cat.tate_cohomology(unit, a);
        for (const auto& alpha : ring.basis)
            for (int j = std::max(lo, lo - a); j <= std::min(hi, hi - a); ++j) {
                const ModuleMap shift = cat.shift_class(alpha, j);
                const auto& src_j = tm[at(j)];
                const auto& tgt_j = tx[at(j)];
                const auto& src_aj = tm[at(a + j)];
                const auto& tgt_aj = tx[at(a + j)];
                std::vector<Vec> w;
                for (const auto& gamma : tgt_j.basis)
                    w.push_back(tgt_aj.space.coordinates(gamma.rep.matrix() * shift.matrix()));
                for (std::size_t s = 0; s < src_j.dim(); ++s) {
                    const Vec v = src_aj.space.coordinates(src_j.basis[s].rep.matrix() * shift.matrix());
                    for (std::size_t q = 0; q < tgt_aj.dim(); ++q) {
                        Vec row(unknowns, 0);
                        for (std::size_t u = 0; u < v.size(); ++u)
                            row[var(a + j, q, u)] = k.add(row[var(a + j, q, u)], v[u]);
                        for (std::size_t r = 0; r < w.size(); ++r)
                            row[var(j, r, s)] = k.sub(row[var(j, r, s)], w[r][q]);
                        equations.push_back(std::move(row));
                    }
                }
            }
    }
    Matrix system(k, equations.size(), unknowns);
    for (std::size_t e = 0; e < equations.size(); ++e)
        for (std::size_t u = 0; u < unknowns; ++u)
            system(e, u) = equations[e][u];

    const StableHomSpace homs = cat.stable_hom(m, x);
    Matrix images(k, unknowns, homs.stable_dim());
    for (std::size_t c = 0; c < homs.stable_dim(); ++c) {
        const ModuleMap u = homs.representative(c);
        Vec phi(unknowns, 0);
        for (int i = lo; i <= hi; ++i)
            for (std::size_t s = 0; s < tm[at(i)].dim(); ++s) {
                const Vec coords = tx[at(i)].space.coordinates(u.matrix() * tm[at(i)].basis[s].rep.matrix());
                for (std::size_t r = 0; r < coords.size(); ++r)
                    phi[var(i, r, s)] = coords[r];
            }
        images.set_col(c, phi);
    }
    if (unknowns > 0 && !(system * images).is_zero())
        throw std::logic_error("tate_fullness: induced map is not H^*(G,k)-linear");

    FullnessResult out;
    out.stable_dim = homs.stable_dim();
    out.graded_hom_dim = unknowns - (unknowns > 0 ? rank(system) : 0);
    out.image_rank = unknowns > 0 ? rank(images) : 0;
    return out;
}

Report verify_tate_fullness(const GroupPtr& g, int lo, int hi, int max_summands, const SearchConfig& cfg)
{
    cfg.validate();
    const PrimeField k = field_for(*g);
    const bool holds = classify_gh(*g, k.p());
    if (!holds && !cfg.override_unsafe)
        throw std::invalid_argument("verify_tate_fullness: " + g->name() + " is not C2 or C3");
    const StableCategory cat(g, k);

    struct Labelled {
        std::string label;
        Module module;
    };
    std::vector<Labelled> sources;
    for (int total = 1; total <= max_summands; ++total)
        for (int a = total; a >= 0; --a) {
            std::vector<Module> parts;
            std::string label;
            for (int i = 0; i < a; ++i) {
                parts.push_back(cat.omega_k(0));
                label += (label.empty() ? "" : "+") + std::string("k");
            }
            for (int i = 0; i < total - a; ++i) {
                parts.push_back(cat.omega_k(1));
                label += (label.empty() ? "" : "+") + std::string("Omega k");
            }
            sources.push_back({label, direct_sum(parts)});
        }
    std::vector<Labelled> targets = sources;
    targets.push_back({"kG", regular_module(g, k)});

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < sources.size(); ++s)
        for (std::size_t t = 0; t < targets.size(); ++t)
            pairs.emplace_back(s, t);

    Report report(cfg);
    auto records = run_trials(static_cast<int>(pairs.size()), cfg.threads, [&](int idx) {
        const auto start = Clock::now();
        const auto [s, t] = pairs[static_cast<std::size_t>(idx)];
        const FullnessResult res = tate_fullness(cat, sources[s].module, targets[t].module, lo, hi);
        CheckRecord r;
        r.name = "fullness/" + sources[s].label + " -> " + targets[t].label;
        r.inputs = {{"group", g->name()}, {"source", sources[s].label}, {"target", targets[t].label},
                    {"degrees", {lo, hi}}};
        r.outcome = {{"stable_hom_dim", res.stable_dim},
                     {"graded_hom_dim", res.graded_hom_dim},
                     {"image_rank", res.image_rank},
                     {"bijective", res.bijective()}};
        r.passed = res.bijective();
        if (!r.passed)
            r.witness = json{{"source", module_to_json(sources[s].module)},
                             {"target", module_to_json(targets[t].module)}};
        r.ms = elapsed_ms(start);
        return r;
    });
    std::size_t bijective = 0;
    for (auto& r : records) {
        bijective += r.passed ? 1 : 0;
        report.add(std::move(r));
    }
    CheckRecord summary;
    summary.name = "fullness/summary";
    summary.inputs = {{"group", g->name()}, {"degrees", {lo, hi}}, {"max_summands", max_summands}};
    summary.outcome = {{"pairs", pairs.size()}, {"bijective", bijective}};
    summary.passed = bijective == pairs.size();
    report.add(std::move(summary));
    return report;
}

Report verify_all(const GroupPtr& g, const SearchConfig& cfg)
{
    const PrimeField k = field_for(*g);
    const bool holds = classify_gh(*g, k.p());
    Report report(cfg);
    CheckRecord c;
    c.name = "classify";
    c.inputs = {{"group", g->name()}, {"p", k.p()}};
    c.outcome = {{"gh_holds", holds}};
    c.passed = true;
    report.add(std::move(c));
    if (holds || cfg.override_unsafe) {
        if (is_cyclic(*g))
            report.append(verify_no_ghosts(g, cfg));
        report.append(verify_tate_fullness(g, -3, 3, 3, cfg));
    }
    if (is_cyclic(*g))
        report.append(verify_decomposition(g, cfg));
    report.append(verify_counterexamples(cfg));
    return report;
}

} // namespace stmod
