#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "gstab/cli.hpp"
#include "gstab/io.hpp"

using namespace gstab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("gstab_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(std::initializer_list<std::string> args) { return cli::run(std::vector<std::string>(args)); }

} // namespace

TEST_CASE("gen is deterministic byte for byte") {
    TempDir tmp;
    std::string a = tmp.file("a.json"), b = tmp.file("b.json");
    REQUIRE(run({"gen", "stabilizer", "--n", "3", "--seed", "7", "--out", a}) == cli::kExitOk);
    REQUIRE(run({"gen", "stabilizer", "--n", "3", "--seed", "7", "--out", b}) == cli::kExitOk);
    CHECK(io::read_text(a) == io::read_text(b));
    // Stabilizer states round trip through the file format.
    StateVector psi = io::read_state(a);
    CHECK(psi.n == 3);
}

TEST_CASE("gen phase x1x2 at d=2 writes CZ|++> amplitudes") {
    TempDir tmp;
    std::string f = tmp.file("cz.json");
    REQUIRE(run({"gen", "phase", "--n", "2", "--d", "2", "--poly", "x1x2", "--out", f}) ==
            cli::kExitOk);
    StateVector psi = io::read_state(f);
    for (uint64_t x = 0; x < 4; x++) {
        double want = x == 3 ? -0.5 : 0.5;
        CHECK(std::abs(psi.amps[x] - want) < 1e-12);
    }
}

TEST_CASE("gen noisy records the base fidelity") {
    TempDir tmp;
    std::string f = tmp.file("noisy.json");
    REQUIRE(run({"gen", "noisy", "--n", "4", "--seed", "3", "--eps", "0.1", "--out", f}) ==
            cli::kExitOk);
    json j = json::parse(io::read_text(f));
    CHECK(j.at("fidelity_to_base").get<double>() == doctest::Approx(0.9));
    CHECK(j.at("format").get<std::string>() == io::kFormatTag);
}

TEST_CASE("gen accepts explicit generators") {
    TempDir tmp;
    std::string f = tmp.file("bell.json");
    REQUIRE(run({"gen", "stabilizer", "--n", "2", "--generators", "+XX,+ZZ", "--out", f}) ==
            cli::kExitOk);
    StateVector psi = io::read_state(f);
    CHECK(std::abs(psi.amps[0] - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(psi.amps[3] - 1 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("exact values for the T state") {
    TempDir tmp;
    std::string state = tmp.file("t.json");
    // |T> as the d=3 phase state with f(x) = x1.
    REQUIRE(run({"gen", "phase", "--n", "1", "--d", "3", "--poly", "x1", "--out", state}) ==
            cli::kExitOk);

    std::string out = tmp.file("g3.json");
    REQUIRE(run({"exact", state, "--quantity", "gowers3", "--out", out}) == cli::kExitOk);
    CHECK(json::parse(io::read_text(out)).at("value").get<double>() ==
          doctest::Approx(0.75).epsilon(1e-10));

    REQUIRE(run({"exact", state, "--quantity", "weylq", "--out", out}) == cli::kExitOk);
    CHECK(json::parse(io::read_text(out)).at("value").get<double>() ==
          doctest::Approx(0.625).epsilon(1e-10));

    REQUIRE(run({"exact", state, "--quantity", "fidelity", "--out", out}) == cli::kExitOk);
    json fid = json::parse(io::read_text(out));
    CHECK(fid.at("value").get<double>() ==
          doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-9));
    CHECK(fid.at("argmax_generators").size() == 1);

    std::string csv = tmp.file("table.csv");
    REQUIRE(run({"exact", state, "--quantity", "chartable", "--out", csv}) == cli::kExitOk);
    std::string table = io::read_text(csv);
    CHECK(table.rfind("v,w,p", 0) == 0);
    CHECK(table.find("\r\n0,0,0.5") != std::string::npos);
}

TEST_CASE("exact weylq of a stabilizer state is 1") {
    TempDir tmp;
    std::string state = tmp.file("s.json"), out = tmp.file("o.json");
    REQUIRE(run({"gen", "stabilizer", "--n", "5", "--seed", "11", "--out", state}) == cli::kExitOk);
    REQUIRE(run({"exact", state, "--quantity", "weylq", "--out", out}) == cli::kExitOk);
    CHECK(json::parse(io::read_text(out)).at("value").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("estimate writes a reproducible record and optional samples") {
    TempDir tmp;
    std::string state = tmp.file("s.json"), o1 = tmp.file("e1.json"), o2 = tmp.file("e2.json");
    std::string sm = tmp.file("shots.csv");
    REQUIRE(run({"gen", "haar", "--n", "3", "--seed", "5", "--out", state}) == cli::kExitOk);
    REQUIRE(run({"estimate", state, "--quantity", "weylq", "--delta", "0.05", "--seed", "9",
                 "--out", o1, "--samples", sm}) == cli::kExitOk);
    REQUIRE(run({"estimate", state, "--quantity", "weylq", "--delta", "0.05", "--seed", "9",
                 "--out", o2}) == cli::kExitOk);
    CHECK(io::read_text(o1) == io::read_text(o2));
    json j = json::parse(io::read_text(o1));
    CHECK(j.at("shots").get<uint64_t>() == auto_shots(0.05));
    std::string csv = io::read_text(sm);
    CHECK(csv.rfind("shot_index,v_bits,w_bits,outcome", 0) == 0);
}

TEST_CASE("tester verdicts and exit codes") {
    TempDir tmp;
    std::string stab = tmp.file("stab.json"), haar = tmp.file("haar.json");
    std::string out = tmp.file("v.json");
    REQUIRE(run({"gen", "stabilizer", "--n", "8", "--seed", "1", "--out", stab}) == cli::kExitOk);
    REQUIRE(run({"gen", "haar", "--n", "8", "--seed", "1", "--out", haar}) == cli::kExitOk);

    CHECK(run({"test", stab, "--eps1", "0.9", "--seed", "2", "--out", out}) == cli::kExitOk);
    json v = json::parse(io::read_text(out));
    CHECK(v.at("decision").get<std::string>() == "close");
    CHECK(v.at("estimate").at("mean").get<double>() == 1.0);
    CHECK(v.at("fidelity_lower_bound").get<double>() == doctest::Approx(1.0));

    CHECK(run({"test", haar, "--eps1", "0.9", "--seed", "2", "--out", out}) == cli::kExitFar);
    json vf = json::parse(io::read_text(out));
    CHECK(vf.at("decision").get<std::string>() == "far");

    // Mildly noisy stabilizer at n=6 still tests close.
    std::string noisy = tmp.file("noisy6.json");
    REQUIRE(run({"gen", "noisy", "--n", "6", "--seed", "5", "--eps", "0.05", "--out", noisy}) ==
            cli::kExitOk);
    CHECK(run({"test", noisy, "--eps1", "0.9", "--seed", "2", "--out", out}) == cli::kExitOk);

    // Promise-regime validation in auto mode.
    CHECK(run({"test", stab, "--eps1", "0.5", "--eps2", "0.4", "--seed", "2"}) == cli::kExitUsage);
    // Explicit delta overrides the regime check.
    CHECK(run({"test", stab, "--eps1", "0.5", "--eps2", "0.4", "--delta", "0.01", "--seed", "2",
               "--out", out}) == cli::kExitOk);
}

TEST_CASE("tester monotonicity in eps1 at fixed seed and shots") {
    TempDir tmp;
    std::string f = tmp.file("n.json"), out = tmp.file("v.json");
    REQUIRE(run({"gen", "noisy", "--n", "6", "--seed", "4", "--eps", "0.3", "--out", f}) ==
            cli::kExitOk);
    bool was_far = false;
    for (double eps1 : {0.3, 0.5, 0.7, 0.8, 0.9, 0.95}) {
        int rc = run({"test", f, "--eps1", std::to_string(eps1), "--shots", "4000", "--delta",
                      "0.05", "--seed", "6", "--out", out});
        bool far = rc == cli::kExitFar;
        if (was_far) CHECK(far); // raising eps1 can only flip close -> far
        was_far = far;
    }
}

TEST_CASE("cap produces exit code 4 and malformed input exit code 2") {
    TempDir tmp;
    std::string big = tmp.file("big.json"), out = tmp.file("o.json");
    REQUIRE(run({"gen", "stabilizer", "--n", "5", "--seed", "1", "--out", big}) == cli::kExitOk);
    CHECK(run({"exact", big, "--quantity", "fidelity", "--out", out}) == cli::kExitCap);

    std::string bad = tmp.file("bad.json");
    io::write_text(bad, "{\"format\": \"gowers-stab/v1\", \"n\": 2, \"amps\": [[1,0]]}\n");
    CHECK(run({"exact", bad, "--quantity", "gowers3"}) == cli::kExitUsage);
    io::write_text(bad, "{\"format\": \"other/v9\", \"n\": 0, \"amps\": [[1,0]]}\n");
    CHECK(run({"exact", bad, "--quantity", "gowers3"}) == cli::kExitUsage);
    CHECK(run({"exact", tmp.file("missing.json"), "--quantity", "gowers3"}) == cli::kExitUsage);
    CHECK(run({"bogus"}) == cli::kExitUsage);
}

TEST_CASE("cover command on the full one-qubit group and an isotropic group") {
    TempDir tmp;
    std::string sub = tmp.file("sub.json"), out = tmp.file("cover.json");
    F2Subspace full1 = F2Subspace::from_basis(
        2, {SymplecticPoint::from_bits(1, 1, 0).concat(),
            SymplecticPoint::from_bits(1, 0, 1).concat()});
    io::write_subgroup(sub, full1);
    REQUIRE(run({"cover", sub, "--mode", "mub", "--out", out}) == cli::kExitOk);
    StabilizerCovering cov = io::read_covering(out);
    CHECK(cov.groups.size() == 3);
    CHECK(cov.k == 1);

    F2Subspace iso = F2Subspace::from_basis(4, {SymplecticPoint::from_bits(2, 0, 3).concat()});
    io::write_subgroup(sub, iso);
    REQUIRE(run({"cover", sub, "--out", out}) == cli::kExitOk);
    CHECK(io::read_covering(out).groups.size() == 1);

    // Covering files are byte-deterministic.
    std::string out2 = tmp.file("cover2.json");
    REQUIRE(run({"cover", sub, "--out", out2}) == cli::kExitOk);
    CHECK(io::read_text(out) == io::read_text(out2));

    // Basis rows that are dependent are a usage error.
    io::write_text(sub, "{\"format\": \"gowers-stab/v1\", \"n\": 1, \"basis\": [\"10\", \"10\"]}\n");
    CHECK(run({"cover", sub, "--out", out}) == cli::kExitUsage);
}

TEST_CASE("subgroup and covering files round trip") {
    TempDir tmp;
    std::string sub = tmp.file("sub.json"), cov = tmp.file("cov.json");
    CounterRng rng(5150, 0);
    std::vector<BitVec> gens;
    for (int i = 0; i < 3; i++) gens.push_back(BitVec::from_u64(6, 1 + rng.next_below(63)));
    F2Subspace V = F2Subspace::from_generators(6, gens);
    io::write_subgroup(sub, V);
    CHECK(io::read_subgroup(sub) == V);

    StabilizerCovering before = stabilizer_covering(V, CoverMode::paulis);
    io::write_covering(cov, before);
    StabilizerCovering after = io::read_covering(cov);
    REQUIRE(after.groups.size() == before.groups.size());
    for (size_t i = 0; i < after.groups.size(); i++) {
        CHECK(after.groups[i] == before.groups[i]);
        CHECK(is_lagrangian(after.groups[i]));
    }

    // Label string convention: v characters then w characters.
    SymplecticPoint p = pauli_from_label("XYZ");
    CHECK(io::point_to_string(p) == "110011");
    CHECK(io::point_from_string("110011") == p);
}

TEST_CASE("format flag switches reports to csv") {
    TempDir tmp;
    std::string state = tmp.file("s.json"), out = tmp.file("o.csv");
    REQUIRE(run({"gen", "phase", "--n", "1", "--d", "3", "--poly", "x1", "--out", state}) ==
            cli::kExitOk);
    REQUIRE(run({"exact", state, "--quantity", "gowers3", "--format", "csv", "--out", out}) ==
            cli::kExitOk);
    std::string csv = io::read_text(out);
    CHECK(csv.rfind("quantity,n,value", 0) == 0);
    CHECK(csv.find("gowers3,1,0.75") != std::string::npos);

    REQUIRE(run({"estimate", state, "--delta", "0.05", "--seed", "4", "--format", "csv", "--out",
                 out}) == cli::kExitOk);
    CHECK(io::read_text(out).rfind("quantity,mean,shots,seed,target_error", 0) == 0);

    CHECK(run({"exact", state, "--quantity", "gowers3", "--format", "xml"}) == cli::kExitUsage);
    CHECK(run({"exact", state, "--quantity", "chartable", "--format", "json", "--out", out}) ==
          cli::kExitUsage);
}

TEST_CASE("GSTAB_MAX_N overrides the caps in both directions") {
    TempDir tmp;
    std::string state = tmp.file("s.json"), out = tmp.file("o.json");
    REQUIRE(run({"gen", "stabilizer", "--n", "3", "--seed", "2", "--out", state}) == cli::kExitOk);
    ::setenv("GSTAB_MAX_N", "2", 1);
    CHECK(run({"exact", state, "--quantity", "gowers3", "--out", out}) == cli::kExitCap);
    ::unsetenv("GSTAB_MAX_N");
    CHECK(run({"exact", state, "--quantity", "gowers3", "--out", out}) == cli::kExitOk);
}

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}) == cli::kExitOk);
}

TEST_CASE("conjecture command writes a deterministic csv") {
    TempDir tmp;
    std::string a = tmp.file("a.csv"), b = tmp.file("b.csv");
    REQUIRE(run({"conjecture", "--n", "3", "--trials", "40", "--seed", "1", "--out", a}) ==
            cli::kExitOk);
    REQUIRE(run({"conjecture", "--n", "3", "--trials", "40", "--seed", "1", "--out", b}) ==
            cli::kExitOk);
    CHECK(io::read_text(a) == io::read_text(b));
    std::string csv = io::read_text(a);
    CHECK(csv.rfind("trial,seed,K,size_S,size_2S,nac_S,nac_2S,flagged", 0) == 0);
}
