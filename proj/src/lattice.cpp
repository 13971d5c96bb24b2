#include "latdist/lattice.hpp"

#include <stdexcept>
#include <string>

namespace latdist {

void LatticeSpec::validate() const {
    if (sites < 2)
        throw std::invalid_argument("LatticeSpec: sites must be at least 2, got " +
                                    std::to_string(sites));
    if (topology == Topology::TruncatedLine && window_pad < 0)
        throw std::invalid_argument("LatticeSpec: window_pad must be non-negative, got " +
                                    std::to_string(window_pad));
}

void LatticeSpec::require_site(int i) const {
    if (i < 0 || i >= sites)
        throw std::invalid_argument("site index " + std::to_string(i) +
                                    " out of range for " + std::to_string(sites) + " sites");
}

ShiftOperator build_shift(const LatticeSpec& spec) {
    spec.validate();
    CMatrix t(spec.sites, spec.sites);
    for (int i = 0; i < spec.sites; ++i) {
        const int target = spec.shift_target(i);
        if (target >= 0) t(i, target) = 1.0;
    }
    return ShiftOperator{std::move(t)};
}

SiteFunction forward_diff(const LatticeSpec& spec, const SiteFunction& f) {
    spec.validate();
    if ((int)f.size() != spec.sites)
        throw std::invalid_argument("forward_diff: function has " + std::to_string(f.size()) +
                                    " entries, lattice has " + std::to_string(spec.sites));
    SiteFunction out(f.size(), 0.0);
    for (int i = 0; i < spec.sites; ++i) {
        const int target = spec.shift_target(i);
        if (target >= 0) out[i] = f[target] - f[i];
    }
    return out;
}

SiteFunction backward_diff(const LatticeSpec& spec, const SiteFunction& f) {
    spec.validate();
    if ((int)f.size() != spec.sites)
        throw std::invalid_argument("backward_diff: function has " + std::to_string(f.size()) +
                                    " entries, lattice has " + std::to_string(spec.sites));
    SiteFunction out(f.size(), 0.0);
    for (int i = 0; i < spec.sites; ++i) {
        const int target = spec.shift_target(i);
        if (target >= 0) out[target] = f[i] - f[target];
    }
    return out;
}

}  // namespace latdist
