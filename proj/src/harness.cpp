#include "dilatekit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <set>
#include <thread>

#include "dilatekit/errors.hpp"
#include "dilatekit/intertwine.hpp"
#include "dilatekit/serialize.hpp"
#include "dilatekit/wold.hpp"

namespace dilatekit {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxSupport = 6;

std::size_t pick_dim(Rng& rng, std::size_t dim_max) {
    return static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(dim_max)));
}

Mat random_polynomial(Rng& rng, const Mat& T, std::size_t bound) {
    const std::size_t d = T.rows();
    return random_rat(rng, bound) * Mat::identity(d) + random_rat(rng, bound) * T + random_rat(rng, bound) * (T * T);
}

Mat block_diag(const Mat& a, const Mat& b) {
    return Mat::from_blocks({{a, Mat::zero(a.rows(), b.cols())}, {Mat::zero(b.rows(), a.cols()), b}});
}

Mat random_invertible(Rng& rng, std::size_t d, const SuiteConfig& cfg) {
    for (std::size_t attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Mat P = random_mat(rng, d, d, cfg.entry_bound);
        if (try_inverse(P)) return P;
    }
    throw GenerationExhausted("no invertible matrix found within " + std::to_string(cfg.max_retries) + " draws");
}

IndexDomain domain_for(SuiteKind kind) {
    switch (kind) {
        case SuiteKind::Schaffer: return IndexDomain::BiInt;
        case SuiteKind::Ando: return IndexDomain::Grid;
        default: return IndexDomain::UniNat;
    }
}

std::uint64_t stream_of(SuiteKind kind) { return static_cast<std::uint64_t>(kind) + 1; }

void check_wold_strict(Report& r, const Mat& T) {
    const auto ik = rref_image_kernel(T);
    if (ik.kernel.empty()) {
        const WoldDecomposition w = wold_decompose(T, WoldMode::Strict);
        r.expect(w.Vs_basis.empty() && w.certificates.passed(), "wold (strict): injective T gives V_s = {0}", "",
                 [&] { return json{{"T", to_json(T)}, {"certificates", w.certificates.to_json()}}; });
        return;
    }
    try {
        (void)wold_decompose(T, WoldMode::Strict);
        r.record("wold (strict): non-injective T rejected with kernel witness", Status::Fail, "",
                 json{{"T", to_json(T)}, {"reason", "strict mode accepted a non-injective map"}});
    } catch (const NotInjective& e) {
        const Vec k = parse_vec(e.witness().at("kernel_vector"));
        const bool ok = !is_zero(k) && is_zero(T * k);
        r.expect(ok, "wold (strict): non-injective T rejected with kernel witness", "",
                 [&] { return json{{"T", to_json(T)}, {"kernel_vector", to_json(k)}}; });
    }
}

void check_corrupted_lift(Report& r, const IntertwinePair& p, std::size_t cert_bound) {
    const std::size_t d1 = p.T1.rows(), d2 = p.T2.rows();
    Mat ones(d1, d2);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j) ones(i, j) = 1;
    const LiftedOp corrupted{SeqOp::column_blocks(IndexDomain::UniNat, d2, d1, {{{0, 0}, p.S}, {{0, 1}, ones}})};
    const std::string identity = "intertwine: corrupted R fails bounded certification with reproducible witness";
    try {
        (void)extract_intertwiner(corrupted, p.dil1, p.dil2, cert_bound);
        r.record(identity, Status::Fail, "", json{{"R", to_json(corrupted.representation)}, {"reason", "certified"}});
    } catch (const HypothesisFailed& e) {
        // Replay the reported relation on the reported probe.
        const FsVec x = parse_fsvec(e.witness().at("probe"));
        const auto& q1 = p.dil1.quadruple;
        const auto& q2 = p.dil2.quadruple;
        const SeqOp& R = corrupted.representation;
        const std::string relation = e.witness().at("relation");
        bool reproduced = false;
        if (relation == "U1 R = R U2")
            reproduced = !(dilatekit::apply(q1.forward, dilatekit::apply(R, x)) == dilatekit::apply(R, dilatekit::apply(q2.forward, x)));
        else if (relation == "R P2 = P1 R")
            reproduced = !(dilatekit::apply(R, dilatekit::apply(q2.proj, x)) == dilatekit::apply(q1.proj, dilatekit::apply(R, x)));
        r.expect(reproduced, identity, "basis n<=" + std::to_string(cert_bound), [&] { return e.witness(); });
    }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(SuiteKind k) {
    switch (k) {
        case SuiteKind::Halmos: return "halmos";
        case SuiteKind::Schur: return "schur";
        case SuiteKind::Nonsimilar: return "nonsimilar";
        case SuiteKind::NDilation: return "ndilation";
        case SuiteKind::Schaffer: return "schaffer";
        case SuiteKind::Standard: return "standard";
        case SuiteKind::Wold: return "wold";
        case SuiteKind::Intertwine: return "intertwine";
        case SuiteKind::Ando: return "ando";
    }
    return "?";
}

SuiteKind parse_suite_kind(const std::string& name) {
    for (auto k : all_suites())
        if (to_string(k) == name) return k;
    throw InvalidArgument("unknown suite \"" + name + "\"");
}

const std::vector<SuiteKind>& all_suites() {
    static const std::vector<SuiteKind> kinds = {
        SuiteKind::Halmos,   SuiteKind::Schur,    SuiteKind::Nonsimilar, SuiteKind::NDilation, SuiteKind::Schaffer,
        SuiteKind::Standard, SuiteKind::Wold, SuiteKind::Intertwine, SuiteKind::Ando};
    return kinds;
}

void SuiteConfig::validate() const {
    if (trials == 0) throw InvalidArgument("trials must be at least 1");
    if (dim_max == 0) throw InvalidArgument("dim_max must be at least 1");
    if (n_max == 0 || m_max == 0) throw InvalidArgument("n_max and m_max must be at least 1");
    if (nd_max == 0) throw InvalidArgument("nd_max must be at least 1");
    if (max_retries == 0) throw InvalidArgument("max_retries must be at least 1");
}

json SuiteConfig::to_json() const {
    json names = json::array();
    for (auto k : suites) names.push_back(to_string(k));
    return {{"seed", seed},       {"trials", trials},   {"dim_max", dim_max},         {"n_max", n_max},
            {"m_max", m_max},     {"entry_bound", entry_bound}, {"probes", probes}, {"nd_max", nd_max},
            {"max_retries", max_retries}, {"suites", std::move(names)}};
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(counter), hi(counter)};
    engine_.seed(seq);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InvalidArgument("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % range);
}

Rat random_rat(Rng& rng, std::size_t bound) {
    const auto b = static_cast<std::int64_t>(bound);
    const std::int64_t num = rng.uniform(-b, b);
    const std::int64_t den = rng.uniform(1, std::max<std::int64_t>(b, 1));
    return Rat(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

Vec random_vec(Rng& rng, std::size_t dim, std::size_t bound) {
    Vec v(dim);
    for (auto& x : v) x = random_rat(rng, bound);
    return v;
}

Mat random_mat(Rng& rng, std::size_t rows, std::size_t cols, std::size_t bound) {
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rat(rng, bound);
    return m;
}

FsVec random_fsvec(Rng& rng, IndexDomain domain, std::size_t dim, std::size_t bound, std::size_t max_support) {
    FsVec x(domain, dim);
    const auto count = rng.uniform(1, static_cast<std::int64_t>(std::max<std::size_t>(max_support, 1)));
    for (std::int64_t k = 0; k < count; ++k) {
        Index i;
        switch (domain) {
            case IndexDomain::UniNat: i = {rng.uniform(0, 12), 0}; break;
            case IndexDomain::BiInt: i = {rng.uniform(-8, 8), 0}; break;
            case IndexDomain::Grid: i = {rng.uniform(0, 6), rng.uniform(0, 6)}; break;
        }
        x.add_at(i, random_vec(rng, dim, bound));
    }
    return x;
}

ProbeSet make_probes(Rng& rng, IndexDomain domain, std::size_t dim, std::size_t count, std::size_t bound) {
    ProbeSet p;
    for (std::size_t i = 0; i < dim; ++i) p.base.push_back(unit_vec(dim, i));
    for (std::size_t k = 0; k < count; ++k) p.base.push_back(random_vec(rng, dim, bound));
    for (std::size_t k = 0; k < count; ++k) p.space.push_back(random_fsvec(rng, domain, dim, bound, kMaxSupport));
    return p;
}

// ---------------------------------------------------------------------------

const Mat& Instance::mat(const std::string& name) const {
    auto it = matrices.find(name);
    if (it == matrices.end()) throw InvalidArgument("instance has no matrix \"" + name + "\"");
    return it->second;
}

std::int64_t Instance::param(const std::string& name, std::int64_t fallback) const {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

json Instance::to_json() const {
    json j = json::object();
    if (!kind.empty()) j["kind"] = kind;
    for (const auto& [k, m] : matrices) j[k] = dilatekit::to_json(m);
    for (const auto& [k, v] : params) j[k] = v;
    for (const auto& [k, v] : labels) j[k] = v;
    if (op) j["R"] = dilatekit::to_json(*op);
    return j;
}

Instance generate_schur_instance(const SuiteConfig& cfg, SchurClass cls, std::size_t counter) {
    Rng rng(cfg.seed, stream_of(SuiteKind::Schur), counter);
    const std::size_t d = pick_dim(rng, cfg.dim_max);
    for (std::size_t attempt = 0; attempt < cfg.max_retries; ++attempt) {
        Mat T = random_mat(rng, d, d, cfg.entry_bound), B = random_mat(rng, d, d, cfg.entry_bound);
        Mat C = random_mat(rng, d, d, cfg.entry_bound), D = random_mat(rng, d, d, cfg.entry_bound);
        try {
            (void)schur_build(cls, T, B, C, D);
        } catch (const PreconditionFailed&) {
            continue;
        }
        Instance inst;
        inst.kind = "schur";
        inst.labels["class"] = to_string(cls);
        inst.matrices = {{"T", std::move(T)}, {"B", std::move(B)}, {"C", std::move(C)}, {"D", std::move(D)}};
        return inst;
    }
    throw GenerationExhausted("schur class " + to_string(cls) + ": precondition not met within " +
                              std::to_string(cfg.max_retries) + " draws (counter " + std::to_string(counter) + ")");
}

Instance generate_instance(const SuiteConfig& cfg, SuiteKind kind, std::size_t counter) {
    if (kind == SuiteKind::Schur) return generate_schur_instance(cfg, static_cast<SchurClass>(counter % 4), counter);

    Rng rng(cfg.seed, stream_of(kind), counter);
    const std::size_t B = cfg.entry_bound;
    Instance inst;
    inst.kind = to_string(kind);
    const std::size_t d = pick_dim(rng, cfg.dim_max);
    std::size_t probe_dim = d;

    switch (kind) {
        case SuiteKind::Nonsimilar: {
            std::size_t attempt = 0;
            Mat T = random_mat(rng, d, d, B);
            while (trace(T).is_zero()) {
                if (++attempt >= cfg.max_retries)
                    throw GenerationExhausted("nonsimilar: no matrix with nonzero trace within " +
                                              std::to_string(cfg.max_retries) + " draws");
                T = random_mat(rng, d, d, B);
            }
            inst.matrices["T"] = std::move(T);
            break;
        }
        case SuiteKind::NDilation:
            inst.matrices["T"] = random_mat(rng, d, d, B);
            inst.params["N"] = rng.uniform(1, static_cast<std::int64_t>(cfg.nd_max));
            break;
        case SuiteKind::Wold: {
            Mat T;
            switch (counter % 3) {
                case 0: T = random_mat(rng, d, d, B); break;
                case 1: {
                    // P (J_k (+) A) P^-1 with J_k a nilpotent Jordan block.
                    const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(d)));
                    Mat J(k, k);
                    for (std::size_t i = 0; i + 1 < k; ++i) J(i, i + 1) = 1;
                    const Mat core = k < d ? block_diag(J, random_mat(rng, d - k, d - k, B)) : J;
                    const Mat P = random_invertible(rng, d, cfg);
                    T = P * core * mat_inverse(P);
                    break;
                }
                default: {
                    const auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(d) - 1));
                    T = random_mat(rng, d, r, B) * random_mat(rng, r, d, B);
                    break;
                }
            }
            inst.matrices["T"] = std::move(T);
            break;
        }
        case SuiteKind::Intertwine: {
            const Mat T = random_mat(rng, d, d, B);
            const Mat S0 = random_polynomial(rng, T, B);
            switch (counter % 3) {
                case 0: inst.matrices = {{"T1", T}, {"T2", T}, {"S", S0}}; break;
                case 1: {
                    const std::size_t a = pick_dim(rng, cfg.dim_max);
                    const Mat A = random_mat(rng, a, a, B);
                    inst.matrices = {{"T1", block_diag(T, A)},
                                     {"T2", T},
                                     {"S", Mat::from_blocks({{S0}, {Mat::zero(a, d)}})}};
                    break;
                }
                default: {
                    const std::size_t a = pick_dim(rng, cfg.dim_max);
                    const Mat A = random_mat(rng, a, a, B);
                    inst.matrices = {{"T1", T}, {"T2", block_diag(T, A)}, {"S", Mat::from_blocks({{S0, Mat::zero(d, a)}})}};
                    probe_dim = d + a;
                    break;
                }
            }
            break;
        }
        case SuiteKind::Ando: {
            const Mat T = random_mat(rng, d, d, B);
            inst.matrices = {{"T", T}, {"S", random_polynomial(rng, T, B)}};
            break;
        }
        default: inst.matrices["T"] = random_mat(rng, d, d, B); break;
    }
    inst.probes = make_probes(rng, domain_for(kind), probe_dim, cfg.probes, B);
    return inst;
}

Report run_instance(const SuiteConfig& cfg, SuiteKind kind, const Instance& inst) {
    const auto nmax = static_cast<std::size_t>(inst.param("nmax", static_cast<std::int64_t>(cfg.n_max)));
    const auto mmax = static_cast<std::size_t>(inst.param("mmax", static_cast<std::int64_t>(cfg.m_max)));
    switch (kind) {
        case SuiteKind::Halmos: return halmos_verify(halmos_build(inst.mat("T")));
        case SuiteKind::Schur: {
            auto it = inst.labels.find("class");
            const SchurClass cls = parse_schur_class(it == inst.labels.end() ? "i" : it->second);
            return schur_verify(schur_build(cls, inst.mat("T"), inst.mat("B"), inst.mat("C"), inst.mat("D")));
        }
        case SuiteKind::Nonsimilar: return nonsimilar_verify(nonsimilar_pair(inst.mat("T")));
        case SuiteKind::NDilation: {
            const auto N = static_cast<std::size_t>(inst.param("N", 1));
            const auto kmax = static_cast<std::size_t>(inst.param("kmax", static_cast<std::int64_t>(N) + 1));
            return ndilation_verify(ndilation_build(inst.mat("T"), N), inst.probes.base, kmax);
        }
        case SuiteKind::Schaffer: return schaffer_verify(schaffer_build(inst.mat("T")), inst.probes, nmax);
        case SuiteKind::Standard: {
            const StandardDilation sd = standard_build(inst.mat("T"));
            Report r = standard_verify(sd, inst.probes, nmax);
            r.merge(standard_minimality_check(sd, nmax));
            return r;
        }
        case SuiteKind::Wold: {
            const Mat& T = inst.mat("T");
            Report r = wold_decompose(T, WoldMode::Extended).certificates;
            check_wold_strict(r, T);
            return r;
        }
        case SuiteKind::Intertwine: {
            const IntertwinePair p = make_intertwine_pair(inst.mat("T1"), inst.mat("T2"), inst.mat("S"));
            const LiftedOp R = lift_intertwiner(p);
            Report r = verify_lift(R, p, inst.probes, nmax);
            const Extraction ex = extract_intertwiner(R, p.dil1, p.dil2, nmax);
            r.merge(ex.certificate);
            r.expect(ex.S == p.S, "intertwine: extract(lift(S)) = S", "", [&] {
                return json{{"S", to_json(p.S)}, {"extracted", to_json(ex.S)}};
            });
            check_corrupted_lift(r, p, nmax);
            return r;
        }
        case SuiteKind::Ando: return ando_verify(ando_build(inst.mat("T"), inst.mat("S")), inst.probes, nmax, mmax);
    }
    throw InvalidArgument("unknown suite");
}

std::vector<Report> run_suites(const SuiteConfig& cfg, std::size_t threads) {
    cfg.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<Report> out;
    for (SuiteKind kind : cfg.suites) {
        std::vector<Report> slots(cfg.trials);
        std::vector<std::exception_ptr> errors(cfg.trials);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t t = next++; t < cfg.trials; t = next++) {
                try {
                    slots[t] = run_instance(cfg, kind, generate_instance(cfg, kind, t));
                } catch (const Error& e) {
                    errors[t] = std::make_exception_ptr(SuiteError(to_string(kind), t, cfg.seed, e));
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 1; w < std::min(threads, cfg.trials); ++w) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        Report suite(to_string(kind));
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            if (errors[t]) std::rethrow_exception(errors[t]);
            suite.merge(slots[t]);
        }
        if (kind == SuiteKind::Nonsimilar) {
            // Fixed trace-zero instance on which the trace cannot decide.
            suite.merge(nonsimilar_verify(nonsimilar_pair(Mat{{0, 1}, {0, 0}})));
        }
        switch (kind) {
            case SuiteKind::Schaffer:
            case SuiteKind::Standard:
            case SuiteKind::Ando:
            case SuiteKind::Intertwine:
                suite.add_note("identities over infinite index sets are checked up to the stated bounds");
                break;
            case SuiteKind::Wold: suite.add_note("decompositions computed in extended mode; strict mode checked alongside"); break;
            default: break;
        }
        suite.set_config(cfg.to_json());
        out.push_back(std::move(suite));
    }
    return out;
}

bool all_passed(const std::vector<Report>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
}

json reports_to_json(const std::vector<Report>& reports) {
    json a = json::array();
    for (const auto& r : reports) a.push_back(r.to_json());
    return a;
}

// ---------------------------------------------------------------------------

Instance parse_instance(const json& j, const std::string& where) {
    Instance inst;
    if (j.is_array()) {
        inst.matrices["T"] = parse_mat(j, where);
        return inst;
    }
    if (!j.is_object()) throw ParseError(where + ": expected an object or a matrix");
    static const std::set<std::string> matrix_keys = {"T", "S", "B", "C", "D", "T1", "T2"};
    static const std::set<std::string> int_keys = {"N", "nmax", "mmax", "kmax", "certbound"};
    static const std::set<std::string> string_keys = {"class", "mode"};
    for (const auto& [key, value] : j.items()) {
        const std::string at = where + "." + key;
        if (key == "kind") {
            if (!value.is_string()) throw ParseError(at + ": expected a string");
            inst.kind = value.get<std::string>();
        } else if (matrix_keys.count(key)) {
            inst.matrices[key] = parse_mat(value, at);
        } else if (int_keys.count(key)) {
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                throw ParseError(at + ": expected a non-negative integer");
            inst.params[key] = value.get<std::int64_t>();
        } else if (string_keys.count(key)) {
            if (!value.is_string()) throw ParseError(at + ": expected a string");
            inst.labels[key] = value.get<std::string>();
        } else if (key == "R") {
            inst.op = parse_seqop(value, at);
        } else if (key == "probes") {
            if (!value.is_object()) throw ParseError(at + ": expected {\"base\": [...], \"space\": [...]}");
            if (value.contains("base")) {
                const json& b = value["base"];
                if (!b.is_array()) throw ParseError(at + ".base: expected an array");
                for (std::size_t k = 0; k < b.size(); ++k)
                    inst.probes.base.push_back(parse_vec(b[k], at + ".base[" + std::to_string(k) + "]"));
            }
            if (value.contains("space")) {
                const json& s = value["space"];
                if (!s.is_array()) throw ParseError(at + ".space: expected an array");
                for (std::size_t k = 0; k < s.size(); ++k)
                    inst.probes.space.push_back(parse_fsvec(s[k], at + ".space[" + std::to_string(k) + "]"));
            }
        } else {
            throw ParseError(at + ": unknown field");
        }
    }
    return inst;
}

Instance parse_instance_file(const std::string& path) { return parse_instance(read_json_file(path), path); }

}  // namespace dilatekit
