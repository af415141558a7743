#include "dilatekit/report.hpp"

#include <algorithm>

#include "dilatekit/errors.hpp"

namespace dilatekit {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

Status Check::status() const {
    if (failed > 0) return Status::Fail;
    if (inconclusive > 0) return Status::Inconclusive;
    return Status::Pass;
}

void Report::add_note(std::string note) {
    if (std::find(notes_.begin(), notes_.end(), note) == notes_.end()) notes_.push_back(std::move(note));
}

Check& Report::slot(std::string_view identity, std::string_view bound, bool required) {
    for (auto& c : checks_)
        if (c.identity == identity) return c;
    Check c;
    c.identity = identity;
    c.bound = bound;
    c.required = required;
    checks_.push_back(std::move(c));
    return checks_.back();
}

void Report::record(std::string_view identity, Status status, std::string_view bound,
                    std::optional<nlohmann::json> witness, bool required) {
    if (status != Status::Pass && !witness)
        throw InvalidArgument("non-passing check \"" + std::string(identity) + "\" without witness");
    Check& c = slot(identity, bound, required);
    switch (status) {
        case Status::Pass: ++c.passed; break;
        case Status::Fail:
            if (c.failed++ == 0) c.witness = std::move(witness);
            break;
        case Status::Inconclusive:
            if (c.failed == 0 && c.inconclusive == 0) c.witness = std::move(witness);
            ++c.inconclusive;
            break;
    }
}

void Report::pass(std::string_view identity, std::string_view bound, std::size_t count) {
    slot(identity, bound, true).passed += count;
}

void Report::merge(const Report& other) {
    for (const auto& o : other.checks_) {
        Check& c = slot(o.identity, o.bound, o.required);
        const bool had_failure = c.failed > 0;
        const bool had_witness = c.witness.has_value();
        c.passed += o.passed;
        c.failed += o.failed;
        c.inconclusive += o.inconclusive;
        if (!had_failure && o.failed > 0)
            c.witness = o.witness;
        else if (!had_witness && o.witness)
            c.witness = o.witness;
    }
    for (const auto& n : other.notes_) add_note(n);
}

const Check* Report::find(std::string_view identity) const {
    for (const auto& c : checks_)
        if (c.identity == identity) return &c;
    return nullptr;
}

bool Report::passed() const {
    return std::none_of(checks_.begin(), checks_.end(),
                        [](const Check& c) { return c.required && c.failed > 0; });
}

bool Report::has_inconclusive() const {
    return std::any_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.inconclusive > 0; });
}

nlohmann::json Report::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json j = {
            {"identity", c.identity},
            {"status", to_string(c.status())},
            {"required", c.required},
            {"bound", c.bound},
            {"counts", {{"pass", c.passed}, {"fail", c.failed}, {"inconclusive", c.inconclusive}}},
        };
        if (c.witness) j["witness"] = *c.witness;
        checks.push_back(std::move(j));
    }
    return {
        {"suite", suite_},
        {"status", passed() ? (has_inconclusive() ? "inconclusive" : "pass") : "fail"},
        {"checks", std::move(checks)},
        {"notes", notes_},
        {"config", config_},
    };
}

}  // namespace dilatekit
