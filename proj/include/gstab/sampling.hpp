#pragma once

#include <string>
#include <vector>

#include "gstab/state.hpp"

namespace gstab {

/// Result of a shot-based estimator run. Reproducible: shot i consumes only
/// Philox stream i of the seed, so the estimate is byte-identical across
/// runs and thread counts.
struct ShotEstimate {
    std::string quantity; // "gowers3_pow8" or "weyl_expect_q"
    double mean = 0.0;
    uint64_t shots = 0;
    uint64_t seed = 0;
    double target_error = 0.0;
};

/// Hoeffding shot count ceil(c / delta^2) for 99% confidence; c = 8 ln 200.
uint64_t auto_shots(double delta);
double shot_constant();

/// Inverse-CDF sampler over an exact 4^n probability table.
class TableSampler {
  public:
    explicit TableSampler(const CharTable& pt);
    uint32_t n() const { return n_; }
    uint64_t draw(double u) const; // u in [0, 1)
  private:
    uint32_t n_;
    std::vector<double> cdf_;
};

/// i.i.d. draws from the characteristic distribution p (Bell measurement on
/// psi x psi*), as packed labels.
std::vector<uint64_t> bell_sample(const CharTable& pt, uint64_t shots, uint64_t seed);

/// i.i.d. draws from the Weyl distribution q, realized as x + y for
/// independent x, y ~ p (the convolution definition).
std::vector<uint64_t> bell_difference_sample(const CharTable& pt, uint64_t shots, uint64_t seed);

/// Per-shot record for dumps: the sampled label and the +-1 outcome of the
/// simulated two-copy measurement.
struct Shot {
    uint64_t label = 0;
    int outcome = 0;
};

/// Estimates E_{x~p}[<W_x>^2]: draw x ~ p, then a +-1 outcome with
/// Pr[+1] = (1 + <W_x>^2)/2 (the two-copy measurement collapsed to its exact
/// Bernoulli law). shots = 0 picks auto_shots(delta).
ShotEstimate estimate_gowers3_pow8(const CharTable& pt, double delta, uint64_t seed,
                                   uint64_t shots = 0, std::vector<Shot>* dump = nullptr);

/// Estimates E_{x~q}[<W_x>^2]; x comes from Bell difference sampling, so the
/// procedure only ever touches copies of psi, never its conjugate.
ShotEstimate estimate_weyl_expect_q(const CharTable& pt, double delta, uint64_t seed,
                                    uint64_t shots = 0, std::vector<Shot>* dump = nullptr);

} // namespace gstab
