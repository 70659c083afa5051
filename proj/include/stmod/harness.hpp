#pragma once

// Verification harness: classification, randomized searches over modules
// for cyclic groups, reproduction of the explicit ghosts, decomposition and
// Tate-fullness checks. Everything reports through a deterministic Report.

#include "stmod/io.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace stmod {

inline constexpr const char* kReportVersion = "stmod-report/1";

struct SearchConfig {
    int dim_bound = 8;
    int trials = 200;
    std::uint64_t seed = 0;
    int ghost_degree_bound = 4;
    int iso_attempts = 20;
    /// Run verify_no_ghosts on groups where the generating hypothesis fails.
    bool override_unsafe = false;
    /// Emit per-check wall time; off by default so reports are byte-stable.
    bool timing = false;
    /// Worker threads for independent trials; 0 picks hardware concurrency.
    unsigned threads = 0;

    void validate() const;
    json to_json() const;
};

/// Defaults: dim bound 8 for p = 2 and 9 for p = 3 (3 * p otherwise).
SearchConfig default_config(unsigned p, std::uint64_t seed);

struct CheckRecord {
    std::string name;
    json inputs;
    bool passed = false;
    json outcome;
    std::optional<json> witness;
    std::optional<double> ms;
    /// Sort key: records of one check family appear in trial order.
    std::size_t order = 0;
};

class Report {
public:
    explicit Report(SearchConfig config) : config_(std::move(config)) {}

    void add(CheckRecord record);
    void append(const Report& other);

    const std::vector<CheckRecord>& checks() const { return checks_; }
    const SearchConfig& config() const { return config_; }
    bool all_passed() const;
    std::size_t failures() const;
    const CheckRecord* find(const std::string& name) const;

    json to_json() const;

private:
    SearchConfig config_;
    std::vector<CheckRecord> checks_;
};

/// true iff G is C2 or C3 (in its own characteristic).
bool classify_gh(const Group& g, unsigned p);

/// Independent per-trial seed derived from (seed, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// All partitions with parts <= max_part and total in [1, max_total], in a fixed order.
std::vector<std::vector<std::size_t>> bounded_partitions(std::size_t max_part, std::size_t max_total);

/// Random module over a cyclic p-group: a uniformly chosen Jordan type,
/// conjugated by a random invertible matrix.
Module random_cyclic_module(const GroupPtr& g, PrimeField k, int dim_bound, std::mt19937_64& rng);

Report verify_no_ghosts(const GroupPtr& g, const SearchConfig& cfg);
Report verify_decomposition(const GroupPtr& g, const SearchConfig& cfg);
Report verify_counterexamples(const SearchConfig& cfg);

struct FullnessResult {
    std::size_t stable_dim = 0;
    std::size_t graded_hom_dim = 0;
    std::size_t image_rank = 0;
    bool bijective() const { return image_rank == stable_dim && image_rank == graded_hom_dim; }
};

/// Compares stable_hom(M, X) with degree-preserving maps of graded modules
/// over H^*(G, k), both truncated to degrees [lo, hi].
FullnessResult tate_fullness(const StableCategory& cat, const Module& m, const Module& x, int lo, int hi);

Report verify_tate_fullness(const GroupPtr& g, int lo, int hi, int max_summands, const SearchConfig& cfg);

/// no-ghosts, decomposition and fullness for C2/C3 (or what applies to G),
/// plus the group-independent counterexample reproduction.
Report verify_all(const GroupPtr& g, const SearchConfig& cfg);

} // namespace stmod
