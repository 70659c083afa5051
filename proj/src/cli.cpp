#include "stmod/cli.hpp"

#include "stmod/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace stmod {

namespace {

struct Options {
    std::string group;
    std::string module;
    std::string target;
    std::string map;
    std::string out;
    std::string subgroup;
    int bound = 4;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int trials = 200;
    int dim_bound = 0;
    int iso_attempts = 20;
    int degree = 1;
    int lo = -3;
    int hi = 3;
    int max_summands = 3;
    unsigned threads = 0;
    bool override_unsafe = false;
    bool timing = false;
    bool dual = false;
    std::string verify_target;
    std::string construction;
};

/// Verification failed; the report has already been written.
struct VerificationFailed {};

std::filesystem::path parent_of(const std::string& file)
{
    return std::filesystem::path(file).parent_path();
}

GroupPtr require_group(const Options& o)
{
    if (o.group.empty())
        throw InputError("--group is required");
    return parse_group_arg(o.group);
}

Module load_module(const std::string& file)
{
    return module_from_json(load_json_file(file), parent_of(file));
}

/// --module if given (must live over --group when both are set), else k over --group.
Module module_or_trivial(const Options& o)
{
    if (!o.module.empty()) {
        Module m = load_module(o.module);
        if (!o.group.empty() && !m.group().same_as(*parse_group_arg(o.group)))
            throw InputError(o.module + ": module is not over group " + o.group);
        return m;
    }
    const GroupPtr g = require_group(o);
    const unsigned p = prime_of_order(*g);
    if (p == 0)
        throw InputError(g->name() + " is not a nontrivial p-group");
    return trivial_module(g, PrimeField(p));
}

std::vector<Element> parse_elements(const std::string& list)
{
    std::vector<Element> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(static_cast<Element>(v));
        } catch (const std::logic_error&) {
            throw InputError("--subgroup: '" + item + "' is not an element index");
        }
    }
    if (out.empty())
        throw InputError("--subgroup: expected a comma-separated list of element indices");
    return out;
}

Subgroup subgroup_of(const GroupPtr& g, const Options& o)
{
    if (o.subgroup.empty())
        throw InputError("--subgroup is required");
    const auto gens = parse_elements(o.subgroup);
    for (auto e : gens)
        if (e >= g->order())
            throw InputError("--subgroup: element " + std::to_string(e) + " is outside " + g->name());
    return Subgroup(g, gens);
}

void emit(const json& j, const Options& o, std::ostream& out)
{
    const std::string text = j.dump(2) + "\n";
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file)
        throw InputError("cannot write " + o.out);
    file << text;
}

SearchConfig config_for(const GroupPtr& g, const Options& o)
{
    const unsigned p = prime_of_order(*g);
    SearchConfig cfg = default_config(p == 0 ? 2 : p, o.seed);
    if (o.dim_bound > 0)
        cfg.dim_bound = o.dim_bound;
    cfg.trials = o.trials;
    cfg.ghost_degree_bound = o.bound;
    cfg.iso_attempts = o.iso_attempts;
    cfg.override_unsafe = o.override_unsafe;
    cfg.timing = o.timing;
    cfg.threads = o.threads;
    cfg.validate();
    return cfg;
}

int run_verify(const Options& o, std::ostream& out)
{
    if (!o.seed_given)
        throw InputError("verify: --seed is required");
    const std::string& t = o.verify_target;
    GroupPtr g;
    if (t != "counterexamples")
        g = require_group(o);
    SearchConfig cfg = g ? config_for(g, o) : [&] {
        SearchConfig c = default_config(2, o.seed);
        c.trials = o.trials;
        c.ghost_degree_bound = o.bound;
        c.iso_attempts = o.iso_attempts;
        c.timing = o.timing;
        c.threads = o.threads;
        c.validate();
        return c;
    }();
    auto report = [&]() -> Report {
        try {
            if (t == "no-ghosts")
                return verify_no_ghosts(g, cfg);
            if (t == "decomposition")
                return verify_decomposition(g, cfg);
            if (t == "counterexamples")
                return verify_counterexamples(cfg);
            if (t == "fullness")
                return verify_tate_fullness(g, o.lo, o.hi, o.max_summands, cfg);
            return verify_all(g, cfg);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }();
    emit(report.to_json(), o, out);
    return report.all_passed() ? 0 : 1;
}

const std::vector<std::string> kConstructions = {"cyclic-C4", "cyclic-C5", "rank2-C2xC2", "rank2-C3xC3",
                                                 "induced-C4-to-C8"};

CounterexampleBundle build_construction(const std::string& name, int bound)
{
    if (name == "cyclic-C4")
        return cyclic_length2_ghost(4, bound);
    if (name == "cyclic-C5")
        return cyclic_length2_ghost(5, bound);
    if (name == "rank2-C2xC2")
        return rank2_ghost(2, std::nullopt, bound);
    if (name == "rank2-C3xC3")
        return rank2_ghost(3, std::nullopt, bound);
    const Element gens[] = {2};
    return induced_ghost(Subgroup(cyclic(8), gens), cyclic_length2_ghost(4, bound), bound);
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Computations in the stable module category of a finite p-group", "stmod"};
    app.require_subcommand(1);
    Options o;

    auto group_opt = [&](CLI::App* sub) {
        sub->add_option("--group", o.group, "C<n>, C<a>xC<b>..., CpxCp:<p> or a group JSON file");
    };
    auto module_opt = [&](CLI::App* sub) { sub->add_option("--module", o.module, "module JSON file"); };
    auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", o.out, "write JSON here instead of stdout"); };

    auto* omega = app.add_subcommand("omega", "Omega^n of a module (default k), with its projective-free core");
    group_opt(omega);
    module_opt(omega);
    omega->add_option("-n,--degree", o.degree, "power of Omega (negative for cosyzygies)");
    out_opt(omega);

    auto* tate = app.add_subcommand("tate", "Dimensions of Tate cohomology of a module (default k)");
    group_opt(tate);
    module_opt(tate);
    tate->add_option("--from", o.lo, "lowest degree");
    tate->add_option("--to", o.hi, "highest degree");
    out_opt(tate);

    auto* shom = app.add_subcommand("stable-hom", "Dimensions of Hom, PHom and the stable quotient");
    module_opt(shom);
    shom->add_option("--target", o.target, "target module JSON file")->required();
    out_opt(shom);
    shom->needs(shom->get_option("--module"));

    auto* ghost = app.add_subcommand("ghost-check", "Ghost verdict and stable triviality of a map");
    ghost->add_option("--map", o.map, "map JSON file")->required();
    ghost->add_option("--bound", o.bound, "largest |degree| tested");
    ghost->add_flag("--dual", o.dual, "check the dual ghost condition instead");
    out_opt(ghost);

    auto* ind = app.add_subcommand("induce", "Induce a module or map from a subgroup");
    group_opt(ind);
    ind->add_option("--subgroup", o.subgroup, "comma-separated generators of H in --group")->required();
    module_opt(ind);
    ind->add_option("--map", o.map, "map JSON file over H");
    out_opt(ind);

    auto* res = app.add_subcommand("restrict", "Restrict a module or map to a subgroup");
    res->add_option("--subgroup", o.subgroup, "comma-separated generators of H")->required();
    module_opt(res);
    res->add_option("--map", o.map, "map JSON file");
    out_opt(res);

    auto* jordan = app.add_subcommand("jordan", "Jordan type of a module over a cyclic p-group");
    module_opt(jordan);
    jordan->needs(jordan->get_option("--module"));

    auto* classify = app.add_subcommand("classify", "Whether every ghost in stmod(kG) is stably trivial");
    group_opt(classify);
    classify->needs(classify->get_option("--group"));

    auto* verify = app.add_subcommand("verify", "Run a verification and write a JSON report");
    verify->add_option("target", o.verify_target, "no-ghosts | counterexamples | decomposition | fullness | all")
        ->required()
        ->check(CLI::IsMember({"no-ghosts", "counterexamples", "decomposition", "fullness", "all"}));
    group_opt(verify);
    verify->add_option("--bound", o.bound, "ghost degree bound")->check(CLI::NonNegativeNumber);
    auto* seed_opt = verify->add_option("--seed", o.seed, "random seed");
    verify->add_option("--trials", o.trials, "random trials")->check(CLI::PositiveNumber);
    verify->add_option("--dim-bound", o.dim_bound, "largest random module dimension")->check(CLI::PositiveNumber);
    verify->add_option("--iso-attempts", o.iso_attempts, "random stable isomorphism attempts")
        ->check(CLI::PositiveNumber);
    verify->add_option("--from", o.lo, "fullness: lowest degree");
    verify->add_option("--to", o.hi, "fullness: highest degree");
    verify->add_option("--max-summands", o.max_summands, "fullness: summands of k and Omega k")
        ->check(CLI::PositiveNumber);
    verify->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    verify->add_flag("--override-unsafe", o.override_unsafe, "run no-ghosts where it is expected to fail");
    verify->add_flag("--timing", o.timing, "record per-check milliseconds");
    out_opt(verify);

    auto* cex = app.add_subcommand("counterexample", "Write the map of a known nontrivial ghost");
    cex->add_option("name", o.construction, "construction")->required()->check(CLI::IsMember(kConstructions));
    cex->add_option("--bound", o.bound, "ghost degree bound");
    cex->add_flag("--bundle", o.dual, "write the full bundle instead of only the map");
    out_opt(cex);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "stmod: " << e.what() << "\n";
        return 2;
    }
    o.seed_given = seed_opt->count() > 0;

    try {
        if (*omega) {
            const Module m = module_or_trivial(o);
            const StableCategory cat(m.group_ptr(), m.field());
            const Module w = cat.omega_power(m, o.degree);
            const Module core = projective_free_core(w);
            emit({{"degree", o.degree}, {"dim", w.dim()}, {"core_dim", core.dim()}, {"module", module_to_json(core)}},
                 o, out);
        } else if (*tate) {
            const Module m = module_or_trivial(o);
            const StableCategory cat(m.group_ptr(), m.field());
            json dims = json::object();
            for (int i = o.lo; i <= o.hi; ++i)
                dims[std::to_string(i)] = cat.tate_cohomology(m, i).dim();
            emit({{"group", m.group().name()}, {"module_dim", m.dim()}, {"dims", dims}}, o, out);
        } else if (*shom) {
            const Module m = load_module(o.module);
            const Module n = load_module(o.target);
            const StableCategory cat(m.group_ptr(), m.field());
            const StableHomSpace h = cat.stable_hom(m, n);
            emit({{"hom", h.hom_dim()}, {"phom", h.phom_dim()}, {"stable", h.stable_dim()}}, o, out);
        } else if (*ghost) {
            const ModuleMap f = map_from_json(load_json_file(o.map), parent_of(o.map));
            const StableCategory cat(f.source().group_ptr(), f.source().field());
            const GhostVerdict v = o.dual ? cat.is_dual_ghost(f, o.bound) : cat.is_ghost(f, o.bound);
            emit({{"verdict", verdict_to_json(v)},
                  {"dual", o.dual},
                  {"stably_trivial", cat.is_stably_trivial(f)}},
                 o, out);
        } else if (*ind) {
            const GroupPtr g = require_group(o);
            const Subgroup h = subgroup_of(g, o);
            if (!o.map.empty()) {
                const ModuleMap f = map_from_json(load_json_file(o.map), parent_of(o.map));
                emit(map_to_json(induce(h, f)), o, out);
            } else {
                if (o.module.empty())
                    throw InputError("induce: --module or --map is required");
                emit(module_to_json(induce(h, load_module(o.module))), o, out);
            }
        } else if (*res) {
            if (!o.map.empty()) {
                const ModuleMap f = map_from_json(load_json_file(o.map), parent_of(o.map));
                emit(map_to_json(restrict(f, subgroup_of(f.source().group_ptr(), o))), o, out);
            } else {
                if (o.module.empty())
                    throw InputError("restrict: --module or --map is required");
                const Module m = load_module(o.module);
                emit(module_to_json(restrict(m, subgroup_of(m.group_ptr(), o))), o, out);
            }
        } else if (*jordan) {
            const Module m = load_module(o.module);
            const JordanType t = jordan_type(m);
            emit({{"group", m.group().name()}, {"dim", m.dim()}, {"blocks", jordan_to_json(t)},
                  {"projective_summands", projective_rank(m)}},
                 o, out);
        } else if (*classify) {
            const GroupPtr g = require_group(o);
            const unsigned p = prime_of_order(*g);
            if (p == 0)
                throw InputError(g->name() + " is not a nontrivial p-group");
            out << (classify_gh(*g, p) ? "GH holds" : "GH fails") << " for " << g->name() << " over F" << p << "\n";
        } else if (*verify) {
            return run_verify(o, out);
        } else if (*cex) {
            const CounterexampleBundle b = build_construction(o.construction, o.bound);
            emit(o.dual ? bundle_to_json(b) : map_to_json(b.map), o, out);
            return b.is_counterexample() ? 0 : 1;
        }
    } catch (const InputError& e) {
        err << "stmod: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "stmod: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "stmod: internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace stmod
