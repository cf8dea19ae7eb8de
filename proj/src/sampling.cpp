#include "gstab/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "gstab/rng.hpp"

namespace gstab {

double shot_constant() { return 8.0 * std::log(200.0); }

uint64_t auto_shots(double delta) {
    require(delta > 0.0 && delta < 1.0, "auto_shots: delta must be in (0, 1)");
    return static_cast<uint64_t>(std::ceil(shot_constant() / (delta * delta)));
}

TableSampler::TableSampler(const CharTable& pt) : n_(pt.n), cdf_(pt.p.size()) {
    double acc = 0;
    for (size_t i = 0; i < pt.p.size(); i++) {
        acc += pt.p[i];
        cdf_[i] = acc;
    }
}

uint64_t TableSampler::draw(double u) const {
    double target = u * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.end()) --it;
    return static_cast<uint64_t>(it - cdf_.begin());
}

std::vector<uint64_t> bell_sample(const CharTable& pt, uint64_t shots, uint64_t seed) {
    TableSampler sampler(pt);
    std::vector<uint64_t> out(shots);
    for (uint64_t i = 0; i < shots; i++) {
        CounterRng rng(seed, i);
        out[i] = sampler.draw(rng.next_double());
    }
    return out;
}

std::vector<uint64_t> bell_difference_sample(const CharTable& pt, uint64_t shots, uint64_t seed) {
    TableSampler sampler(pt);
    std::vector<uint64_t> out(shots);
    for (uint64_t i = 0; i < shots; i++) {
        CounterRng rng(seed, i);
        uint64_t x = sampler.draw(rng.next_double());
        uint64_t y = sampler.draw(rng.next_double());
        out[i] = x ^ y;
    }
    return out;
}

namespace {

ShotEstimate run_estimator(const CharTable& pt, double delta, uint64_t seed, uint64_t shots,
                           bool difference, const char* tag, std::vector<Shot>* dump) {
    require(delta > 0.0 && delta < 1.0, "estimator: delta must be in (0, 1)");
    if (shots == 0) shots = auto_shots(delta);
    TableSampler sampler(pt);
    double twon = static_cast<double>(uint64_t{1} << pt.n);
    if (dump) dump->resize(shots);
    int64_t total = 0;
    for (uint64_t i = 0; i < shots; i++) {
        CounterRng rng(seed, i);
        uint64_t x = sampler.draw(rng.next_double());
        if (difference) x ^= sampler.draw(rng.next_double());
        // Measuring psi^{x2} in W_x^{x2} is a +-1 variable with
        // Pr[+1] = (1 + <W_x>^2)/2, and <W_x>^2 = 2^n p(x). Snap values a few
        // ulp away from 1 so stabilizer support yields +1 deterministically.
        double w2 = twon * pt.p[x];
        if (w2 > 1.0 - 1e-12) w2 = 1.0;
        int outcome = (w2 == 1.0 || rng.next_double() < 0.5 * (1.0 + w2)) ? 1 : -1;
        total += outcome;
        if (dump) (*dump)[i] = {x, outcome};
    }
    ShotEstimate est;
    est.quantity = tag;
    est.mean = static_cast<double>(total) / static_cast<double>(shots);
    est.shots = shots;
    est.seed = seed;
    est.target_error = delta;
    return est;
}

} // namespace

ShotEstimate estimate_gowers3_pow8(const CharTable& pt, double delta, uint64_t seed,
                                   uint64_t shots, std::vector<Shot>* dump) {
    return run_estimator(pt, delta, seed, shots, false, "gowers3_pow8", dump);
}

ShotEstimate estimate_weyl_expect_q(const CharTable& pt, double delta, uint64_t seed,
                                    uint64_t shots, std::vector<Shot>* dump) {
    return run_estimator(pt, delta, seed, shots, true, "weyl_expect_q", dump);
}

} // namespace gstab
