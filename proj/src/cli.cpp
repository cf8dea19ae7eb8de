#include "gstab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gstab/io.hpp"

namespace gstab::cli {

using nlohmann::json;

namespace {

void apply_env_caps() {
    caps() = Caps{}; // defaults first, so unsetting the variable restores them
    if (const char* env = std::getenv("GSTAB_MAX_N")) {
        long v = std::atol(env);
        if (v >= 1) {
            uint32_t cap = static_cast<uint32_t>(v);
            caps().char_table_n = cap;
            caps().dense_matrix_n = cap;
            caps().fidelity_n = cap;
            caps().fact_b1_n = cap;
        }
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        io::write_text(out_path, text);
}

// Phase polynomial spec: '+'-separated terms "[coeff]x<i>x<j>...", e.g.
// "x1x2 + 2x3". A missing coefficient means the smallest valid one,
// 2^{|T|-1}.
std::vector<PhaseTerm> parse_poly(const std::string& spec) {
    std::vector<PhaseTerm> terms;
    std::string cleaned;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
    size_t pos = 0;
    while (pos < cleaned.size()) {
        size_t next = cleaned.find('+', pos);
        if (next == std::string::npos) next = cleaned.size();
        std::string term = cleaned.substr(pos, next - pos);
        pos = next + 1;
        require(!term.empty(), "poly: empty term");
        PhaseTerm t;
        size_t i = 0;
        std::string digits;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) digits += term[i++];
        bool have_coeff = !digits.empty();
        if (have_coeff) t.coeff = std::stoull(digits);
        while (i < term.size()) {
            require(term[i] == 'x', "poly: expected 'x<index>'");
            i++;
            std::string idx;
            while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) idx += term[i++];
            require(!idx.empty(), "poly: missing variable index");
            t.vars.push_back(static_cast<uint32_t>(std::stoul(idx)));
        }
        require(!t.vars.empty(), "poly: term has no variables");
        if (!have_coeff) t.coeff = uint64_t{1} << (t.vars.size() - 1);
        terms.push_back(std::move(t));
    }
    return terms;
}

std::vector<SignedPauli> parse_generators(const std::string& spec, uint32_t n) {
    std::vector<SignedPauli> gens;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        std::string item = spec.substr(pos, next - pos);
        pos = next + 1;
        if (item.empty()) break;
        int sign = 1;
        if (item[0] == '+' || item[0] == '-') {
            sign = item[0] == '-' ? -1 : 1;
            item = item.substr(1);
        }
        SymplecticPoint p = pauli_from_label(item);
        require(p.n == n, "generator length != n");
        gens.push_back({p, sign});
        if (next == spec.size()) break;
    }
    return gens;
}

json point_json(const SymplecticPoint& p, int sign) {
    return std::string(sign < 0 ? "-" : "+") + pauli_label(p);
}

int cmd_gen(const std::string& kind, uint32_t n, uint64_t seed, double eps, uint32_t d,
            const std::string& poly, const std::string& generators, const std::string& out) {
    require(!out.empty(), "gen: --out is required");
    json meta;
    meta["kind"] = kind;
    meta["seed"] = seed;
    StateVector psi;
    if (kind == "stabilizer") {
        if (generators.empty()) {
            StabilizerInstance inst = random_stabilizer(n, seed);
            psi = std::move(inst.state);
            json gens = json::array();
            for (const auto& g : inst.generators) gens.push_back(point_json(g.point, g.sign));
            meta["generators"] = std::move(gens);
        } else {
            std::vector<SignedPauli> gens = parse_generators(generators, n);
            psi = make_stabilizer_state(n, gens);
            json gj = json::array();
            for (const auto& g : gens) gj.push_back(point_json(g.point, g.sign));
            meta["generators"] = std::move(gj);
        }
    } else if (kind == "phase") {
        require(d >= 1, "gen phase: --d is required");
        psi = make_phase_state(n, d, parse_poly(poly));
        meta["d"] = d;
        meta["poly"] = poly;
    } else if (kind == "haar") {
        psi = haar_random_state(n, seed);
    } else if (kind == "noisy") {
        require(eps >= 0.0 && eps <= 1.0, "gen noisy: --eps must be in [0, 1]");
        NoisyStabilizer noisy = noisy_stabilizer(n, eps, seed);
        psi = std::move(noisy.state);
        meta["eps"] = eps;
        meta["fidelity_to_base"] = noisy.base_fidelity;
        json gens = json::array();
        for (const auto& g : noisy.base.generators) gens.push_back(point_json(g.point, g.sign));
        meta["base_generators"] = std::move(gens);
    } else {
        throw std::invalid_argument("gen: unknown kind '" + kind + "'");
    }
    io::write_state(out, psi, meta.dump());
    std::cout << "{\"written\": \"" << out << "\", \"n\": " << n << "}\n";
    return kExitOk;
}

int cmd_exact(const std::string& state_path, const std::string& quantity, const std::string& fmt,
              const std::string& out) {
    require(fmt == "json" || fmt == "csv", "exact: --format must be json or csv");
    StateVector psi = io::read_state(state_path);
    if (quantity == "chartable") {
        require(fmt == "csv", "exact chartable: only --format csv is defined");
        CharTable pt = char_table(psi);
        require(!out.empty(), "exact chartable: --out is required (CSV)");
        io::write_char_table_csv(out, pt);
        std::cout << "{\"written\": \"" << out << "\"}\n";
        return kExitOk;
    }
    json j;
    j["format"] = io::kFormatTag;
    j["n"] = psi.n;
    j["quantity"] = quantity;
    if (quantity == "gowers3") {
        j["value"] = gowers3_pow8(char_table(psi));
    } else if (quantity == "weylq") {
        j["value"] = weyl_expect_q(char_table(psi));
    } else if (quantity == "fidelity") {
        FidelityResult res = stabilizer_fidelity_bruteforce(psi);
        j["value"] = res.value;
        json gens = json::array();
        for (const auto& g : res.argmax_generators) gens.push_back(point_json(g.point, g.sign));
        j["argmax_generators"] = std::move(gens);
    } else {
        throw std::invalid_argument("exact: unknown quantity '" + quantity + "'");
    }
    if (fmt == "csv") {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s,%u,%.17g\r\n", quantity.c_str(), psi.n,
                      j["value"].get<double>());
        emit(std::string("quantity,n,value\r\n") + buf, out);
    } else {
        emit(j.dump(2) + "\n", out);
    }
    return kExitOk;
}

int cmd_estimate(const std::string& state_path, const std::string& quantity, double delta,
                 uint64_t shots, uint64_t seed, const std::string& fmt, const std::string& out,
                 const std::string& samples_path) {
    require(fmt == "json" || fmt == "csv", "estimate: --format must be json or csv");
    StateVector psi = io::read_state(state_path);
    CharTable pt = char_table(psi);
    std::vector<Shot> dump;
    std::vector<Shot>* dump_ptr = samples_path.empty() ? nullptr : &dump;
    ShotEstimate est;
    if (quantity == "gowers3")
        est = estimate_gowers3_pow8(pt, delta, seed, shots, dump_ptr);
    else if (quantity == "weylq")
        est = estimate_weyl_expect_q(pt, delta, seed, shots, dump_ptr);
    else
        throw std::invalid_argument("estimate: unknown quantity '" + quantity + "'");
    if (!samples_path.empty()) io::write_samples_csv(samples_path, psi.n, dump);
    if (fmt == "csv") {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%llu,%llu,%.17g\r\n", est.quantity.c_str(),
                      est.mean, static_cast<unsigned long long>(est.shots),
                      static_cast<unsigned long long>(est.seed), est.target_error);
        emit(std::string("quantity,mean,shots,seed,target_error\r\n") + buf, out);
    } else {
        emit(io::estimate_to_json(est), out);
    }
    return kExitOk;
}

int cmd_test(const std::string& state_path, double eps1, double eps2, bool have_eps2,
             double exponent_c, double delta, uint64_t shots, uint64_t seed,
             const std::string& out) {
    require(eps1 > 0.0 && eps1 <= 1.0, "test: --eps1 must be in (0, 1]");
    require(exponent_c > 1.0, "test: --exponent-c must be > 1");
    double yes_floor = std::pow(eps1, 6.0); // exact E_q is at least eps1^6 on the yes side
    bool auto_delta = delta <= 0.0;
    if (auto_delta) {
        if (have_eps2 && eps2 > std::pow(eps1, exponent_c) + 1e-15) {
            std::cerr << "test: eps2=" << eps2 << " is outside the promise regime eps2 <= eps1^"
                      << exponent_c << " = " << std::pow(eps1, exponent_c)
                      << "; pass an explicit --delta to override\n";
            return kExitUsage;
        }
        delta = yes_floor / 10.0;
    }
    require(delta > 0.0 && delta < 1.0, "test: delta must be in (0, 1)");
    double threshold = yes_floor - delta / 2.0;

    StateVector psi = io::read_state(state_path);
    CharTable pt = char_table(psi);
    ShotEstimate est = estimate_weyl_expect_q(pt, delta / 2.0, seed, shots);
    bool close = est.mean >= threshold;

    json j;
    j["format"] = io::kFormatTag;
    j["decision"] = close ? "close" : "far";
    j["threshold"] = threshold;
    json je;
    je["quantity"] = est.quantity;
    je["mean"] = est.mean;
    je["shots"] = est.shots;
    je["seed"] = est.seed;
    je["target_error"] = est.target_error;
    j["estimate"] = std::move(je);
    json cfg;
    cfg["eps1"] = eps1;
    if (have_eps2) cfg["eps2"] = eps2;
    cfg["exponent_C"] = exponent_c;
    cfg["delta"] = delta;
    cfg["delta_mode"] = auto_delta ? "auto" : "explicit";
    cfg["shots"] = est.shots;
    cfg["seed"] = seed;
    j["config"] = std::move(cfg);
    // The estimate lower-bounds stabilizer fidelity through (4E-1)/3 once
    // E >= 1/4; reported for information.
    if (est.mean >= 0.25)
        j["fidelity_lower_bound"] = (4.0 * est.mean - 1.0) / 3.0;
    else
        j["fidelity_lower_bound"] = nullptr;
    emit(j.dump(2) + "\n", out);
    return close ? kExitOk : kExitFar;
}

int cmd_cover(const std::string& subgroup_path, const std::string& mode_str,
              const std::string& out) {
    require(!out.empty(), "cover: --out is required");
    CoverMode mode;
    if (mode_str == "mub")
        mode = CoverMode::mub;
    else if (mode_str == "paulis")
        mode = CoverMode::paulis;
    else
        throw std::invalid_argument("cover: --mode must be mub or paulis");
    F2Subspace V = io::read_subgroup(subgroup_path);
    StabilizerCovering cov = stabilizer_covering(V, mode);
    io::write_covering(out, cov);
    std::cout << "{\"written\": \"" << out << "\", \"k\": " << cov.k << ", \"m\": " << cov.m
              << ", \"groups\": " << cov.groups.size() << "}\n";
    return kExitOk;
}

int cmd_conjecture(uint32_t n, uint64_t trials, uint64_t seed, double kmax, double exponent,
                   const std::string& out) {
    require(!out.empty(), "conjecture: --out is required");
    std::vector<ConjectureRow> rows = conjecture_search(n, kmax, trials, seed, exponent);
    io::write_conjecture_csv(out, rows);
    uint64_t flagged = 0;
    for (const auto& r : rows) flagged += r.flagged ? 1 : 0;
    std::cout << "{\"written\": \"" << out << "\", \"trials\": " << trials
              << ", \"flagged\": " << flagged << "}\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args) {
    apply_env_caps();
    CLI::App app{"Exact and sampled Gowers/Weyl statistics of small quantum states, "
                 "with a tolerant stabilizer tester"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a state file");
    std::string gen_kind, gen_poly, gen_generators, gen_out;
    uint32_t gen_n = 0, gen_d = 0;
    uint64_t gen_seed = 0;
    double gen_eps = 0.0;
    gen->add_option("kind", gen_kind, "stabilizer | phase | haar | noisy")->required();
    gen->add_option("--n", gen_n, "qubit count")->required();
    gen->add_option("--seed", gen_seed, "64-bit seed");
    gen->add_option("--eps", gen_eps, "noise weight for kind=noisy");
    gen->add_option("--d", gen_d, "phase degree for kind=phase");
    gen->add_option("--poly", gen_poly, "phase polynomial, e.g. \"x1x2 + 2x3\"");
    gen->add_option("--generators", gen_generators, "signed Pauli generators, e.g. \"+XX,-ZZ\"");
    gen->add_option("--out", gen_out, "output state file")->required();

    // exact
    auto* exact = app.add_subcommand("exact", "exact quantities of a state file");
    std::string exact_in, exact_quantity, exact_out, exact_fmt = "json";
    exact->add_option("state", exact_in, "input state file")->required();
    exact->add_option("--quantity", exact_quantity, "gowers3 | weylq | chartable | fidelity")
        ->required();
    exact->add_option("--format", exact_fmt, "json | csv (chartable is always csv)");
    exact->add_option("--out", exact_out, "output file (default stdout; chartable requires it)");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "shot-based estimate of a state file");
    std::string est_in, est_quantity = "weylq", est_out, est_samples, est_fmt = "json";
    double est_delta = 0.05;
    uint64_t est_shots = 0, est_seed = 0;
    estimate->add_option("state", est_in, "input state file")->required();
    estimate->add_option("--quantity", est_quantity, "gowers3 | weylq");
    estimate->add_option("--delta", est_delta, "target additive error");
    estimate->add_option("--shots", est_shots, "shot count (0 = auto from delta)");
    estimate->add_option("--seed", est_seed, "64-bit seed");
    estimate->add_option("--format", est_fmt, "json | csv");
    estimate->add_option("--out", est_out, "output record (default stdout)");
    estimate->add_option("--samples", est_samples, "also dump per-shot CSV here");

    // test
    auto* test = app.add_subcommand("test", "tolerant stabilizer test of a state file");
    std::string test_in, test_out;
    double test_eps1 = 0.0, test_eps2 = -1.0, test_expc = 6.0, test_delta = 0.0;
    uint64_t test_shots = 0, test_seed = 0;
    test->add_option("state", test_in, "input state file")->required();
    test->add_option("--eps1", test_eps1, "closeness threshold in (0, 1]")->required();
    test->add_option("--eps2", test_eps2, "farness threshold (validated against eps1^C)");
    test->add_option("--exponent-c", test_expc, "promise exponent C (default 6)");
    test->add_option("--delta", test_delta, "promise gap (0 = auto: eps1^6 / 10)");
    test->add_option("--shots", test_shots, "shot count (0 = auto)");
    test->add_option("--seed", test_seed, "64-bit seed");
    test->add_option("--out", test_out, "output JSON (default stdout)");

    // cover
    auto* cover = app.add_subcommand("cover", "stabilizer covering of a subgroup file");
    std::string cover_in, cover_mode = "mub", cover_out;
    cover->add_option("subgroup", cover_in, "input subgroup file")->required();
    cover->add_option("--mode", cover_mode, "mub | paulis (default mub)");
    cover->add_option("--out", cover_out, "output covering JSON")->required();

    // conjecture
    auto* conj = app.add_subcommand("conjecture", "doubling-vs-anticommutation search report");
    uint32_t conj_n = 4;
    uint64_t conj_trials = 1000, conj_seed = 0;
    double conj_kmax = 16.0, conj_exp = 3.0;
    std::string conj_out;
    conj->add_option("--n", conj_n, "qubit count (<= 5)");
    conj->add_option("--trials", conj_trials, "number of sampled instances");
    conj->add_option("--seed", conj_seed, "64-bit seed");
    conj->add_option("--kmax", conj_kmax, "doubling promise bound K");
    conj->add_option("--flag-exponent", conj_exp, "reference polynomial exponent");
    conj->add_option("--out", conj_out, "output CSV")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_n, gen_seed, gen_eps, gen_d, gen_poly, gen_generators,
                           gen_out);
        if (exact->parsed()) {
            if (exact_quantity == "chartable" && exact->count("--format") == 0) exact_fmt = "csv";
            return cmd_exact(exact_in, exact_quantity, exact_fmt, exact_out);
        }
        if (estimate->parsed())
            return cmd_estimate(est_in, est_quantity, est_delta, est_shots, est_seed, est_fmt,
                                est_out, est_samples);
        if (test->parsed())
            return cmd_test(test_in, test_eps1, test_eps2, test_eps2 >= 0.0, test_expc, test_delta,
                            test_shots, test_seed, test_out);
        if (cover->parsed()) return cmd_cover(cover_in, cover_mode, cover_out);
        if (conj->parsed())
            return cmd_conjecture(conj_n, conj_trials, conj_seed, conj_kmax, conj_exp, conj_out);
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace gstab::cli
