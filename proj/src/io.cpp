#include "gstab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gstab::io {

using nlohmann::json;

std::string point_to_string(const SymplecticPoint& p) {
    return p.v.str() + p.w.str();
}

SymplecticPoint point_from_string(const std::string& s) {
    require(s.size() % 2 == 0, "point_from_string: odd length");
    uint32_t n = static_cast<uint32_t>(s.size() / 2);
    return {n, BitVec::from_string(s.substr(0, n)), BitVec::from_string(s.substr(n))};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot open output file: " + path);
    out << text;
    require(out.good(), "failed writing file: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_state(const std::string& path, const StateVector& psi, const std::string& extra_json) {
    json j;
    j["format"] = kFormatTag;
    j["n"] = psi.n;
    json amps = json::array();
    for (const cplx& a : psi.amps) amps.push_back({a.real(), a.imag()});
    j["amps"] = std::move(amps);
    if (!extra_json.empty()) {
        json extra = json::parse(extra_json);
        for (auto& [k, v] : extra.items()) j[k] = v;
    }
    write_text(path, j.dump(2) + "\n");
}

StateVector read_state(const std::string& path) {
    json j = json::parse(read_text(path));
    require(j.value("format", "") == kFormatTag, "state file: bad or missing format tag");
    uint32_t n = j.at("n").get<uint32_t>();
    const json& amps = j.at("amps");
    require(amps.size() == (uint64_t{1} << n), "state file: amplitude count != 2^n");
    std::vector<cplx> f;
    f.reserve(amps.size());
    for (const auto& a : amps) f.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    return make_state(n, std::move(f));
}

void write_char_table_csv(const std::string& path, const CharTable& pt) {
    std::string out = "v,w,p\r\n";
    char buf[64];
    for (uint64_t idx = 0; idx < pt.p.size(); idx++) {
        SymplecticPoint x = SymplecticPoint::from_index(pt.n, idx);
        std::snprintf(buf, sizeof buf, ",%.17g\r\n", pt.p[idx]);
        out += x.v.str();
        out += ',';
        out += x.w.str();
        out += buf;
    }
    write_text(path, out);
}

void write_samples_csv(const std::string& path, uint32_t n, const std::vector<Shot>& shots) {
    std::string out = "shot_index,v_bits,w_bits,outcome\r\n";
    char buf[96];
    for (size_t i = 0; i < shots.size(); i++) {
        SymplecticPoint x = SymplecticPoint::from_index(n, shots[i].label);
        std::snprintf(buf, sizeof buf, "%zu,%s,%s,%d\r\n", i, x.v.str().c_str(),
                      x.w.str().c_str(), shots[i].outcome);
        out += buf;
    }
    write_text(path, out);
}

std::string estimate_to_json(const ShotEstimate& est) {
    json j;
    j["format"] = kFormatTag;
    j["quantity"] = est.quantity;
    j["mean"] = est.mean;
    j["shots"] = est.shots;
    j["seed"] = est.seed;
    j["target_error"] = est.target_error;
    return j.dump(2) + "\n";
}

void write_subgroup(const std::string& path, const F2Subspace& V) {
    json j;
    j["format"] = kFormatTag;
    j["n"] = V.ambient() / 2;
    json basis = json::array();
    for (const BitVec& b : V.basis())
        basis.push_back(point_to_string(SymplecticPoint::from_concat(b)));
    j["basis"] = std::move(basis);
    write_text(path, j.dump(2) + "\n");
}

F2Subspace read_subgroup(const std::string& path) {
    json j = json::parse(read_text(path));
    require(j.value("format", "") == kFormatTag, "subgroup file: bad or missing format tag");
    uint32_t n = j.at("n").get<uint32_t>();
    std::vector<BitVec> rows;
    for (const auto& s : j.at("basis")) {
        SymplecticPoint p = point_from_string(s.get<std::string>());
        require(p.n == n, "subgroup file: basis row length != 2n");
        rows.push_back(p.concat());
    }
    return F2Subspace::from_basis(2 * n, rows);
}

void write_covering(const std::string& path, const StabilizerCovering& cov) {
    json j;
    j["format"] = kFormatTag;
    j["n"] = cov.n;
    j["k"] = cov.k;
    j["m"] = cov.m;
    j["mode"] = cov.mode == CoverMode::mub ? "mub" : "paulis";
    json groups = json::array();
    for (const F2Subspace& g : cov.groups) {
        json rows = json::array();
        for (const BitVec& b : g.basis())
            rows.push_back(point_to_string(SymplecticPoint::from_concat(b)));
        groups.push_back(std::move(rows));
    }
    j["groups"] = std::move(groups);
    write_text(path, j.dump(2) + "\n");
}

StabilizerCovering read_covering(const std::string& path) {
    json j = json::parse(read_text(path));
    require(j.value("format", "") == kFormatTag, "covering file: bad or missing format tag");
    StabilizerCovering cov;
    cov.n = j.at("n").get<uint32_t>();
    cov.k = j.at("k").get<uint32_t>();
    cov.m = j.at("m").get<uint32_t>();
    cov.mode = j.at("mode").get<std::string>() == "mub" ? CoverMode::mub : CoverMode::paulis;
    for (const auto& rows : j.at("groups")) {
        std::vector<BitVec> basis;
        for (const auto& s : rows)
            basis.push_back(point_from_string(s.get<std::string>()).concat());
        cov.groups.push_back(F2Subspace::from_basis(2 * cov.n, basis));
    }
    return cov;
}

void write_conjecture_csv(const std::string& path, const std::vector<ConjectureRow>& rows) {
    std::string out = "trial,seed,K,size_S,size_2S,nac_S,nac_2S,flagged\r\n";
    char buf[160];
    for (const ConjectureRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%" PRIu64 ",%" PRIu64 ",%.17g,%" PRIu64 ",%" PRIu64 ",%u,%u,%d\r\n",
                      r.trial, r.seed, r.k_value, r.size_s, r.size_2s, r.nac_s, r.nac_2s,
                      r.flagged ? 1 : 0);
        out += buf;
    }
    write_text(path, out);
}

} // namespace gstab::io
