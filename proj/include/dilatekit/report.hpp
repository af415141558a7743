#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dilatekit {

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

/// One named identity, possibly checked over many instances. Counts are
/// accumulated; the first failing (or inconclusive) instance keeps its
/// witness.
struct Check {
    std::string identity;
    std::string bound;
    /// Observations are recorded but never make a report fail.
    bool required = true;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t inconclusive = 0;
    std::optional<nlohmann::json> witness;

    Status status() const;
    std::size_t instances() const { return passed + failed + inconclusive; }
};

class Report {
public:
    Report() = default;
    explicit Report(std::string suite) : suite_(std::move(suite)) {}

    const std::string& suite() const { return suite_; }
    const std::vector<Check>& checks() const { return checks_; }
    const std::vector<std::string>& notes() const { return notes_; }
    const nlohmann::json& config() const { return config_; }

    void set_config(nlohmann::json config) { config_ = std::move(config); }
    void add_note(std::string note);

    /// Records one instance of `identity`. A failing or inconclusive
    /// instance must supply a witness.
    void record(std::string_view identity, Status status, std::string_view bound = {},
                std::optional<nlohmann::json> witness = std::nullopt, bool required = true);
    void pass(std::string_view identity, std::string_view bound = {}, std::size_t count = 1);
    /// Records pass when `ok`, otherwise fail with `witness()` evaluated lazily.
    template <typename WitnessFn>
    bool expect(bool ok, std::string_view identity, std::string_view bound, WitnessFn&& witness,
                bool required = true) {
        record(identity, ok ? Status::Pass : Status::Fail, bound,
               ok ? std::nullopt : std::optional<nlohmann::json>(witness()), required);
        return ok;
    }

    /// Folds every check of `other` into this report by identity.
    void merge(const Report& other);

    const Check* find(std::string_view identity) const;
    /// No required check failed.
    bool passed() const;
    bool has_inconclusive() const;

    nlohmann::json to_json() const;

private:
    Check& slot(std::string_view identity, std::string_view bound, bool required);

    std::string suite_;
    std::vector<Check> checks_;
    std::vector<std::string> notes_;
    nlohmann::json config_ = nullptr;
};

}  // namespace dilatekit
