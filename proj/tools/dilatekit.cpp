// Command-line front end: seeded suites and one-off constructions, all
// reporting JSON on stdout.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dilatekit/errors.hpp"
#include "dilatekit/finite_dilations.hpp"
#include "dilatekit/harness.hpp"
#include "dilatekit/intertwine.hpp"
#include "dilatekit/serialize.hpp"
#include "dilatekit/sequence_dilations.hpp"
#include "dilatekit/wold.hpp"

using namespace dilatekit;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::string error_kind(const Error& e) {
#define DILATEKIT_KIND(Name) \
    if (dynamic_cast<const Name*>(&e)) return #Name
    DILATEKIT_KIND(SuiteError);
    DILATEKIT_KIND(DimensionMismatch);
    DILATEKIT_KIND(DomainMismatch);
    DILATEKIT_KIND(DivisionByZero);
    DILATEKIT_KIND(SingularMatrix);
    DILATEKIT_KIND(PreconditionFailed);
    DILATEKIT_KIND(NonCommuting);
    DILATEKIT_KIND(NotInjective);
    DILATEKIT_KIND(NotIntertwining);
    DILATEKIT_KIND(HypothesisFailed);
    DILATEKIT_KIND(RangeViolation);
    DILATEKIT_KIND(GenerationExhausted);
    DILATEKIT_KIND(ParseError);
    DILATEKIT_KIND(DenominatorZero);
    DILATEKIT_KIND(InvalidArgument);
#undef DILATEKIT_KIND
    return "Error";
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
json load_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("inline argument: ") + e.what());
        }
    }
    return read_json_file(arg);
}

/// A matrix argument may be a bare matrix or an object holding `key`.
Mat load_matrix(const std::string& arg, const std::string& key) {
    const json j = load_arg(arg);
    if (j.is_object()) {
        if (!j.contains(key)) throw ParseError(arg + ": no field \"" + key + "\"");
        return parse_mat(j.at(key), arg + "." + key);
    }
    return parse_mat(j, arg);
}

std::size_t default_probes = 8;
std::uint64_t default_seed() {
    if (const char* s = std::getenv("DILATEKIT_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(s, &used);
            if (used == std::string(s).size()) return v;
        } catch (const std::exception&) {
        }
        throw InvalidArgument(std::string("DILATEKIT_SEED is not an unsigned integer: ") + s);
    }
    return 42;
}

ProbeSet probes_for(std::uint64_t seed, IndexDomain domain, std::size_t dim, std::size_t bound) {
    Rng rng(seed);
    return make_probes(rng, domain, dim, default_probes, bound);
}

json basis_json(const std::vector<Vec>& basis) {
    json a = json::array();
    for (const auto& v : basis) a.push_back(to_json(v));
    return a;
}

int emit(const json& j, bool passed, const std::string& out_path = "") {
    const std::string text = j.dump(2);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw InvalidArgument("cannot write " + out_path);
        f << text << '\n';
    }
    std::cout << text << '\n';
    return passed ? kExitPass : kExitFail;
}

int emit_report(const Report& r, json result = nullptr) {
    json j = r.to_json();
    if (!result.is_null()) j["result"] = std::move(result);
    return emit(j, r.passed());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact dilations of linear maps over the rationals"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t entry_bound = 9;
    bool seed_given = false;
    auto add_probe_opts = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Seed for random probes")->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--probes", default_probes, "Random probes on top of the standard basis");
        sub->add_option("--entry-bound", entry_bound, "Bound on probe entries");
    };

    // run
    SuiteConfig cfg;
    std::string suites_arg, json_out;
    bool suites_given = false;
    std::size_t threads = 0;
    auto* run = app.add_subcommand("run", "Run seeded random suites");
    run->add_option("--seed", cfg.seed)->each([&](const std::string&) { seed_given = true; });
    run->add_option("--trials", cfg.trials);
    run->add_option("--dim-max", cfg.dim_max);
    run->add_option("--n-max", cfg.n_max);
    run->add_option("--m-max", cfg.m_max);
    run->add_option("--entry-bound", cfg.entry_bound);
    run->add_option("--probes", cfg.probes);
    run->add_option("--nd-max", cfg.nd_max);
    run->add_option("--max-retries", cfg.max_retries);
    run->add_option("--suites", suites_arg, "Comma-separated subset of suites, or \"none\"")
        ->each([&](const std::string&) { suites_given = true; });
    run->add_option("--threads", threads, "Worker threads (0 = all cores)");
    run->add_option("--json", json_out, "Also write the report list to this file");

    std::string T_arg, B_arg, C_arg, D_arg, S_arg, T1_arg, T2_arg, R_arg, class_arg = "i", mode_arg = "extended";
    std::size_t N = 1, kmax = 0, nmax = 12, mmax = 8, certbound = 12;
    bool minimality = false;

    auto* halmos = app.add_subcommand("halmos", "Halmos unitary-style dilation of T");
    halmos->add_option("--T", T_arg)->required();

    auto* schur = app.add_subcommand("schur", "Schur-complement dilation families");
    schur->add_option("--class", class_arg)->check(CLI::IsMember({"i", "ii", "iii", "iv", "1", "2", "3", "4"}));
    schur->add_option("--T", T_arg)->required();
    schur->add_option("--B", B_arg)->required();
    schur->add_option("--C", C_arg)->required();
    schur->add_option("--D", D_arg)->required();

    auto* nonsim = app.add_subcommand("nonsimilar", "Trace witness for two non-similar dilations");
    nonsim->add_option("--T", T_arg)->required();

    auto* ndil = app.add_subcommand("ndilate", "N-dilation of T");
    ndil->add_option("--T", T_arg)->required();
    ndil->add_option("--N", N)->required();
    ndil->add_option("--kmax", kmax, "Largest power checked (default N+1)");
    add_probe_opts(ndil);

    auto* schaffer = app.add_subcommand("schaffer", "Bilateral dilation on sequences over Z");
    schaffer->add_option("--T", T_arg)->required();
    schaffer->add_option("--nmax", nmax);
    add_probe_opts(schaffer);

    auto* standard = app.add_subcommand("standard", "Standard dilation on sequences over Z+");
    standard->add_option("--T", T_arg)->required();
    standard->add_option("--nmax", nmax);
    standard->add_flag("--minimality", minimality, "Also certify minimality");
    add_probe_opts(standard);

    auto* ando = app.add_subcommand("ando", "Commuting pair dilation on the grid");
    ando->add_option("--T", T_arg)->required();
    ando->add_option("--S", S_arg)->required();
    ando->add_option("--nmax", nmax);
    ando->add_option("--mmax", mmax);
    add_probe_opts(ando);

    auto* wold = app.add_subcommand("wold", "Eventual-image decomposition of T");
    wold->add_option("--T", T_arg)->required();
    wold->add_option("--mode", mode_arg)->check(CLI::IsMember({"strict", "extended"}));

    auto* inter = app.add_subcommand("intertwine", "Lift and extract intertwiners");
    inter->require_subcommand(1);
    auto* lift = inter->add_subcommand("lift", "Lift S with T1 S = S T2");
    lift->add_option("--T1", T1_arg)->required();
    lift->add_option("--T2", T2_arg)->required();
    lift->add_option("--S", S_arg)->required();
    lift->add_option("--nmax", nmax);
    add_probe_opts(lift);
    auto* extract = inter->add_subcommand("extract", "Recover S from an operator R");
    extract->add_option("--R", R_arg)->required();
    extract->add_option("--T1", T1_arg)->required();
    extract->add_option("--T2", T2_arg)->required();
    extract->add_option("--certbound", certbound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInput;
    }

    try {
        if (!seed_given) {
            seed = default_seed();
            cfg.seed = seed;
        }

        if (*run) {
            if (suites_given) {
                cfg.suites.clear();
                std::stringstream ss(suites_arg);
                std::string name;
                while (std::getline(ss, name, ','))
                    if (!name.empty() && name != "none") cfg.suites.push_back(parse_suite_kind(name));
            }
            const auto reports = run_suites(cfg, threads);
            return emit(reports_to_json(reports), all_passed(reports), json_out);
        }
        if (*halmos) {
            const HalmosDilation h = halmos_build(load_matrix(T_arg, "T"));
            return emit_report(halmos_verify(h), {{"U", to_json(h.U)}, {"U_inv", to_json(h.U_inv)}});
        }
        if (*schur) {
            const SchurFamily f = schur_build(parse_schur_class(class_arg), load_matrix(T_arg, "T"),
                                              load_matrix(B_arg, "B"), load_matrix(C_arg, "C"), load_matrix(D_arg, "D"));
            return emit_report(schur_verify(f), {{"class", to_string(f.schur_class)},
                                                 {"schur_complement", to_json(f.schur)},
                                                 {"U", to_json(f.U)},
                                                 {"U_inv", to_json(f.U_inv)}});
        }
        if (*nonsim) {
            const NonsimilarPair p = nonsimilar_pair(load_matrix(T_arg, "T"));
            return emit_report(nonsimilar_verify(p), {{"A1", to_json(p.A1)},
                                                      {"A2", to_json(p.A2)},
                                                      {"trace_A1", to_json(p.trace_A1)},
                                                      {"trace_A2", to_json(p.trace_A2)},
                                                      {"verdict", to_string(p.verdict)}});
        }
        if (*ndil) {
            const Mat T = load_matrix(T_arg, "T");
            const NDilation nd = ndilation_build(T, N);
            const ProbeSet probes = probes_for(seed, IndexDomain::UniNat, T.rows(), entry_bound);
            return emit_report(ndilation_verify(nd, probes.base, kmax == 0 ? N + 1 : kmax),
                               {{"U", to_json(nd.U)}, {"U_inv", to_json(nd.U_inv)}});
        }
        if (*schaffer) {
            const Mat T = load_matrix(T_arg, "T");
            const ProbeSet probes = probes_for(seed, IndexDomain::BiInt, T.rows(), entry_bound);
            const SchafferDilation sd = schaffer_build(T);
            return emit_report(schaffer_verify(sd, probes, nmax), {{"U", to_json(sd.U)}, {"U_inv", to_json(sd.U_inv)}});
        }
        if (*standard) {
            const Mat T = load_matrix(T_arg, "T");
            const ProbeSet probes = probes_for(seed, IndexDomain::UniNat, T.rows(), entry_bound);
            const StandardDilation sd = standard_build(T);
            Report r = standard_verify(sd, probes, nmax);
            if (minimality) r.merge(standard_minimality_check(sd, nmax));
            return emit_report(r, {{"U", to_json(sd.quadruple.forward)}, {"P", to_json(sd.quadruple.proj)}});
        }
        if (*ando) {
            const Mat T = load_matrix(T_arg, "T");
            const AndoVariant av = ando_build(T, load_matrix(S_arg, "S"));
            const ProbeSet probes = probes_for(seed, IndexDomain::Grid, T.rows(), entry_bound);
            return emit_report(ando_verify(av, probes, nmax, mmax), {{"U", to_json(av.U)}, {"V", to_json(av.V)}});
        }
        if (*wold) {
            const WoldDecomposition w = wold_decompose(load_matrix(T_arg, "T"), parse_wold_mode(mode_arg));
            return emit_report(w.certificates, {{"mode", to_string(w.mode)},
                                                {"V_b", basis_json(w.Vb_basis)},
                                                {"V_s", basis_json(w.Vs_basis)},
                                                {"stabilization_index", w.stabilization_index}});
        }
        if (*lift) {
            const Mat T2 = load_matrix(T2_arg, "T2");
            const IntertwinePair p = make_intertwine_pair(load_matrix(T1_arg, "T1"), T2, load_matrix(S_arg, "S"));
            const LiftedOp R = lift_intertwiner(p);
            const ProbeSet probes = probes_for(seed, IndexDomain::UniNat, T2.rows(), entry_bound);
            return emit_report(verify_lift(R, p, probes, nmax), {{"R", to_json(R.representation)}});
        }
        if (*extract) {
            const json rj = load_arg(R_arg);
            const LiftedOp R{parse_seqop(rj.is_object() && rj.contains("R") ? rj.at("R") : rj, R_arg)};
            const StandardDilation d1 = standard_build(load_matrix(T1_arg, "T1"));
            const StandardDilation d2 = standard_build(load_matrix(T2_arg, "T2"));
            try {
                const Extraction ex = extract_intertwiner(R, d1, d2, certbound);
                return emit_report(ex.certificate, {{"S", to_json(ex.S)}});
            } catch (const Error& e) {
                if (!dynamic_cast<const HypothesisFailed*>(&e) && !dynamic_cast<const RangeViolation*>(&e)) throw;
                Report r("intertwine");
                r.record("intertwine: hypotheses of extraction hold on certified probes", Status::Fail,
                         "basis n<=" + std::to_string(certbound),
                         json{{"error", error_kind(e)}, {"message", e.what()}, {"detail", e.witness()}});
                return emit_report(r);
            }
        }
    } catch (const Error& e) {
        json j = {{"error", error_kind(e)}, {"message", e.what()}};
        if (!e.witness().is_null()) j["witness"] = e.witness();
        std::cout << j.dump(2) << '\n';
        std::cerr << "dilatekit: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
