#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "latdist/algebra.hpp"
#include "latdist/lattice.hpp"

namespace latdist {

// Thin wrapper around mt19937_64 with hand-rolled mappings, so that a seed
// pins the produced ensemble bit-for-bit (std::uniform_real_distribution is
// implementation-defined and would break byte-identical reruns).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Phase in (-pi, pi].
    double angle() { return std::numbers::pi - uniform() * 2.0 * std::numbers::pi; }

private:
    std::mt19937_64 eng_;
};

// Random non-singular link field: amplitudes log-uniform in [amp_lo, amp_hi]
// (keeping the inverse amplitudes equally well conditioned), phases uniform.
// Every slot is filled, including the unused last slot of an open chain.
inline LinkField random_link_field(Rng& rng, const LatticeSpec& spec, double amp_lo = 0.5,
                                   double amp_hi = 2.0, double phase_lo = -std::numbers::pi,
                                   double phase_hi = std::numbers::pi) {
    LinkField out;
    out.values.reserve(spec.sites);
    for (int k = 0; k < spec.sites; ++k) {
        const double amp = rng.log_uniform(amp_lo, amp_hi);
        const double phase = rng.uniform(phase_lo, phase_hi);
        out.values.push_back(std::polar(amp, phase));
    }
    return out;
}

inline LinkField unit_link_field(const LatticeSpec& spec) {
    LinkField out;
    out.values.assign(spec.sites, cplx(1.0, 0.0));
    return out;
}

inline GaugeTransform random_gauge(Rng& rng, int sites) {
    GaugeTransform out;
    out.u.reserve(sites);
    for (int k = 0; k < sites; ++k) out.u.push_back(std::polar(1.0, rng.angle()));
    return out;
}

inline SpinorField random_spinor(Rng& rng, int sites) {
    SpinorField out;
    out.upper.reserve(sites);
    out.lower.reserve(sites);
    for (int k = 0; k < sites; ++k) {
        out.upper.push_back(cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
        out.lower.push_back(cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)));
    }
    return out;
}

inline SiteFunction random_site_function(Rng& rng, int sites, double lo = -1.0, double hi = 1.0) {
    SiteFunction out;
    out.reserve(sites);
    for (int k = 0; k < sites; ++k) out.push_back(rng.uniform(lo, hi));
    return out;
}

}  // namespace latdist
