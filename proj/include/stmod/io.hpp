#pragma once

// JSON forms of groups, modules, maps, verdicts and bundles.
//
//   group:  {"cyclic": n} | {"product": [group, group]} | {"name": s, "order": n, "table": [[...]]}
//   module: {"group": group, "p": p, "dim": d, "generators": {"<element>": [[...]]}}
//   map:    {"source": module | "file.json", "target": module | "file.json", "matrix": [[...]]}

#include "stmod/ghosts.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace stmod {

using json = nlohmann::json;

/// Malformed input: carries the file (if any) and the position of the problem.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json load_json_file(const std::filesystem::path& path);

GroupPtr group_from_json(const json& j);
json group_to_json(const Group& g);
/// Shorthand names (C4, C2xC2, CpxCp:3) or a path to a group JSON file.
GroupPtr parse_group_arg(const std::string& arg);

Module module_from_json(const json& j, const std::filesystem::path& base = {});
json module_to_json(const Module& m);

ModuleMap map_from_json(const json& j, const std::filesystem::path& base = {});
json map_to_json(const ModuleMap& f);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(PrimeField k, const json& j);

json verdict_to_json(const GhostVerdict& v);
json bundle_to_json(const CounterexampleBundle& b);
json jordan_to_json(const JordanType& t);

} // namespace stmod
