#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bidisc/core.hpp"
#include "bidisc/domains.hpp"

#include "json.hpp"

namespace bidisc {

/// Invalid verifier configuration; maps to exit code 2.
class ConfigError : public DomainError {
public:
    using DomainError::DomainError;
};

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr int kReportSchema = 1;
inline constexpr std::size_t kMaxRecordedFailures = 10;

/// BIDISC_LAB_SEED when set and parseable, else kDefaultSeed.
std::uint64_t default_seed();

struct SuiteConfig {
    std::uint64_t seed = kDefaultSeed;
    std::size_t samples = 10000;
    double rmax = kDefaultRmax;
    double eps_diag = 1e-6;
    std::map<std::string, double> tolerances;
    /// nullopt runs every registered suite; an empty list runs nothing.
    std::optional<std::vector<std::string>> suites;
    int workers = 1;

    /// Throws ConfigError.
    void validate() const;
};

struct FailureRecord {
    std::size_t index = 0;
    std::string input;
    std::string detail;
    double residual = 0.0;
};

struct SuiteReport {
    std::string id;
    std::string anchor;
    bool pass = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::size_t sample_count = 0;
    std::size_t hard_failures = 0;
    std::vector<FailureRecord> failures;
    /// Extreme value of the suite's monitored quantity (e.g. smallest Levi value), if any.
    std::optional<std::pair<std::string, double>> extreme;
    double wall_time_s = 0.0;
};

struct VerifyResult {
    std::vector<SuiteReport> reports;
    std::vector<std::string> warnings;
    int exit_code = 0;
};

/// Registered suite ids, in run order.
const std::vector<std::string>& suite_ids();
bool is_suite(const std::string& id);
double default_tolerance(const std::string& id);

/// Deterministic in (seed, samples, rmax, eps_diag, tolerances); independent of `workers`.
SuiteReport run_suite(const std::string& id, const SuiteConfig& cfg);

/// Runs the selected suites; exit_code 0 when all pass, 1 otherwise.
VerifyResult verify_all(const SuiteConfig& cfg);

nlohmann::json to_json(const SuiteReport& r);
nlohmann::json to_json(const VerifyResult& result, const SuiteConfig& cfg);

/// Deterministic point of the given orbit drawn from `rng`.
AnyPoint sample_orbit(const OrbitSpec& spec, RngStream& rng, double rmax = kDefaultRmax);

/// CSV dump: header x1,y1,x2,y2[,x3,y3],residual; row i uses stream i; 17 significant digits.
void dump_orbit(const OrbitSpec& spec, std::size_t n, std::uint64_t seed, std::ostream& out);
/// Same, written to `path`; throws std::runtime_error when the file cannot be written.
void dump_orbit(const OrbitSpec& spec, std::size_t n, std::uint64_t seed, const std::string& path);

}  // namespace bidisc
