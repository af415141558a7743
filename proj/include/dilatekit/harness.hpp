#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "dilatekit/finite_dilations.hpp"
#include "dilatekit/matrix.hpp"
#include "dilatekit/report.hpp"
#include "dilatekit/seqop.hpp"
#include "dilatekit/sequence_dilations.hpp"

namespace dilatekit {

enum class SuiteKind { Halmos, Schur, Nonsimilar, NDilation, Schaffer, Standard, Wold, Intertwine, Ando };

std::string to_string(SuiteKind k);
/// Throws InvalidArgument for unknown names.
SuiteKind parse_suite_kind(const std::string& name);
const std::vector<SuiteKind>& all_suites();

struct SuiteConfig {
    std::uint64_t seed = 42;
    std::size_t trials = 200;
    std::size_t dim_max = 4;
    std::size_t n_max = 12;
    std::size_t m_max = 8;
    /// Generated rationals have |numerator| <= entry_bound and
    /// 1 <= denominator <= max(entry_bound, 1).
    std::size_t entry_bound = 9;
    /// Random probes per instance, on top of the standard basis.
    std::size_t probes = 8;
    /// Largest N drawn for the N-dilation suite.
    std::size_t nd_max = 4;
    std::size_t max_retries = 100;
    std::vector<SuiteKind> suites = all_suites();

    /// Throws InvalidArgument when trials or dim_max is zero.
    void validate() const;
    nlohmann::json to_json() const;
};

/// Deterministic 64-bit generator. Bounded draws use rejection sampling so
/// streams do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

Rat random_rat(Rng& rng, std::size_t bound);
Vec random_vec(Rng& rng, std::size_t dim, std::size_t bound);
Mat random_mat(Rng& rng, std::size_t rows, std::size_t cols, std::size_t bound);
/// Support size in [1, max_support]; indices drawn from [0, 12] on Z+,
/// [-8, 8] on Z, and [0, 6]^2 on the grid.
FsVec random_fsvec(Rng& rng, IndexDomain domain, std::size_t dim, std::size_t bound, std::size_t max_support = 6);
/// Standard basis of V plus `count` random columns, and `count` random
/// elements of the given domain.
ProbeSet make_probes(Rng& rng, IndexDomain domain, std::size_t dim, std::size_t count, std::size_t bound);

/// A concrete input: named matrices, integer and string parameters, an
/// optional operator R, and probes. Generated instances and instance files
/// share this shape.
struct Instance {
    std::string kind;
    std::map<std::string, Mat> matrices;
    std::map<std::string, std::int64_t> params;
    std::map<std::string, std::string> labels;
    std::optional<SeqOp> op;
    ProbeSet probes;

    /// Throws InvalidArgument when the entry is absent.
    const Mat& mat(const std::string& name) const;
    std::int64_t param(const std::string& name, std::int64_t fallback) const;
    nlohmann::json to_json() const;
};

/// Deterministic in (config, kind, counter). Throws GenerationExhausted if
/// no instance satisfying the kind's precondition is found within
/// config.max_retries draws.
Instance generate_instance(const SuiteConfig& config, SuiteKind kind, std::size_t counter);
Instance generate_schur_instance(const SuiteConfig& config, SchurClass cls, std::size_t counter);

/// Runs one generated or parsed instance through its suite.
Report run_instance(const SuiteConfig& config, SuiteKind kind, const Instance& instance);

/// One report per selected suite, in config order. Trials run on up to
/// `threads` workers (0 = hardware concurrency); reports are merged in
/// trial order so output does not depend on scheduling. Module errors are
/// rethrown as SuiteError.
std::vector<Report> run_suites(const SuiteConfig& config, std::size_t threads = 0);

/// True iff no report has a failing required check.
bool all_passed(const std::vector<Report>& reports);
nlohmann::json reports_to_json(const std::vector<Report>& reports);

/// Accepts an object with optional fields T, S, B, C, D, T1, T2 (matrices),
/// N, nmax, mmax, kmax, certbound (integers), kind, class, mode (strings),
/// R (operator) and probes {"base": [...], "space": [...]}; a bare array is
/// read as the matrix T.
Instance parse_instance(const nlohmann::json& j, const std::string& where = "$");
Instance parse_instance_file(const std::string& path);

}  // namespace dilatekit
