#include "stmod/io.hpp"

#include <fstream>
#include <regex>

namespace stmod {

namespace {

const json& field_of(const json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

std::size_t count_of(const json& j, const char* key, const char* what)
{
    const json& v = field_of(j, key, what);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InputError(std::string(what) + ": field \"" + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
}

} // namespace

json load_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(path.string() + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

GroupPtr group_from_json(const json& j)
{
    try {
        if (j.is_string())
            return parse_group_arg(j.get<std::string>());
        if (j.contains("cyclic"))
            return cyclic(count_of(j, "cyclic", "group"));
        if (j.contains("product")) {
            const json& parts = j.at("product");
            if (!parts.is_array() || parts.size() < 2)
                throw InputError("group: \"product\" needs at least two factors");
            GroupPtr g = group_from_json(parts[0]);
            for (std::size_t i = 1; i < parts.size(); ++i)
                g = direct_product(g, group_from_json(parts[i]));
            return g;
        }
        const std::size_t order = count_of(j, "order", "group");
        auto table = field_of(j, "table", "group").get<std::vector<std::vector<Element>>>();
        if (table.size() != order)
            throw InputError("group: table has " + std::to_string(table.size()) + " rows, order is " +
                             std::to_string(order));
        const std::string name = j.value("name", std::string("G") + std::to_string(order));
        return make_group(name, std::move(table));
    } catch (const json::exception& e) {
        throw InputError(std::string("group: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("group: ") + e.what());
    }
}

json group_to_json(const Group& g)
{
    if (is_cyclic(g) && g.same_as(*cyclic(g.order())))
        return {{"cyclic", g.order()}};
    return {{"name", g.name()}, {"order", g.order()}, {"table", g.table()}};
}

GroupPtr parse_group_arg(const std::string& arg)
{
    static const std::regex cyclic_re(R"(C(\d+))");
    static const std::regex cpcp_re(R"(CpxCp:(\d+))");
    static const std::regex product_re(R"(C\d+(xC\d+)+)");
    std::smatch m;
    if (std::regex_match(arg, m, cyclic_re))
        return cyclic(std::stoul(m[1]));
    if (std::regex_match(arg, m, cpcp_re)) {
        const auto p = std::stoul(m[1]);
        return direct_product(cyclic(p), cyclic(p));
    }
    if (std::regex_match(arg, product_re)) {
        static const std::regex factor_re(R"(C(\d+))");
        GroupPtr g;
        for (auto it = std::sregex_iterator(arg.begin(), arg.end(), factor_re); it != std::sregex_iterator(); ++it) {
            GroupPtr f = cyclic(std::stoul((*it)[1]));
            g = g ? direct_product(g, f) : f;
        }
        return g;
    }
    if (std::filesystem::exists(arg))
        return group_from_json(load_json_file(arg));
    throw InputError("unrecognised group '" + arg + "' (expected C<n>, C<a>xC<b>..., CpxCp:<p> or a JSON file)");
}

json matrix_to_json(const Matrix& m)
{
    return m.to_rows();
}

Matrix matrix_from_json(PrimeField k, const json& j)
{
    if (!j.is_array())
        throw InputError("matrix must be an array of rows");
    try {
        return Matrix::from_rows(k, j.get<std::vector<std::vector<long long>>>());
    } catch (const json::exception& e) {
        throw InputError(std::string("matrix: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("matrix: ") + e.what());
    }
}

Module module_from_json(const json& j, const std::filesystem::path& base)
{
    if (j.is_string()) {
        const std::filesystem::path path = base / j.get<std::string>();
        const json inner = load_json_file(path);
        try {
            return module_from_json(inner, path.parent_path());
        } catch (const InputError& e) {
            throw InputError(path.string() + ": " + e.what());
        }
    }
    const json& gspec = field_of(j, "group", "module");
    GroupPtr g;
    if (gspec.is_string() && !base.empty() && std::filesystem::exists(base / gspec.get<std::string>()))
        g = group_from_json(load_json_file(base / gspec.get<std::string>()));
    else
        g = group_from_json(gspec);
    std::optional<PrimeField> k;
    try {
        k.emplace(static_cast<unsigned>(count_of(j, "p", "module")));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("module: ") + e.what());
    }
    const std::size_t dim = count_of(j, "dim", "module");
    const json& gens = field_of(j, "generators", "module");
    if (!gens.is_object())
        throw InputError("module: \"generators\" must be an object keyed by element index");
    std::map<Element, Matrix> given;
    for (const auto& [key, value] : gens.items()) {
        Element e = 0;
        try {
            e = std::stoul(key);
        } catch (const std::exception&) {
            throw InputError("module: generator key '" + key + "' is not an element index");
        }
        Matrix m = matrix_from_json(*k, value);
        if (m.rows() == 0 && dim == 0)
            m = Matrix(*k, 0, 0);
        given.emplace(e, std::move(m));
    }
    try {
        return Module::from_generators(g, *k, dim, given);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("module: ") + e.what());
    }
}

json module_to_json(const Module& m)
{
    json gens = json::object();
    for (auto s : m.group().generators())
        gens[std::to_string(s)] = matrix_to_json(m.act(s));
    return {{"group", group_to_json(m.group())}, {"p", m.field().p()}, {"dim", m.dim()}, {"generators", gens}};
}

ModuleMap map_from_json(const json& j, const std::filesystem::path& base)
{
    const Module source = module_from_json(field_of(j, "source", "map"), base);
    const Module target = module_from_json(field_of(j, "target", "map"), base);
    Matrix mat = matrix_from_json(source.field(), field_of(j, "matrix", "map"));
    if (mat.rows() == 0)
        mat = Matrix(source.field(), target.dim(), source.dim());
    try {
        return ModuleMap(source, target, std::move(mat));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("map: ") + e.what());
    }
}

json map_to_json(const ModuleMap& f)
{
    return {{"source", module_to_json(f.source())},
            {"target", module_to_json(f.target())},
            {"matrix", matrix_to_json(f.matrix())}};
}

json verdict_to_json(const GhostVerdict& v)
{
    json out = {{"kind", to_string(v.kind)}, {"bound", v.bound}, {"ghost", v.is_ghost()}};
    if (v.kind == GhostKind::GhostCertified) {
        out["certificate"] = v.certificate;
        if (v.period > 0)
            out["period"] = v.period;
    }
    if (v.witness_degree)
        out["witness_degree"] = *v.witness_degree;
    if (v.witness)
        out["witness_class"] = matrix_to_json(v.witness->matrix());
    return out;
}

json bundle_to_json(const CounterexampleBundle& b)
{
    json out = {{"label", b.label},
                {"group", b.map.source().group().name()},
                {"p", b.map.source().field().p()},
                {"dim", b.map.source().dim()},
                {"ghost", verdict_to_json(b.ghost)},
                {"stably_nontrivial", b.stably_nontrivial},
                {"stable_class", b.witness},
                {"square_checks", b.square_checks},
                {"metadata", b.metadata},
                {"map", map_to_json(b.map)}};
    if (b.restricted_nontrivial)
        out["restricted_nontrivial"] = *b.restricted_nontrivial;
    return out;
}

json jordan_to_json(const JordanType& t)
{
    return t.blocks;
}

} // namespace stmod
