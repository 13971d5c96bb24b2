#pragma once

#include <vector>

#include "latdist/complexmat.hpp"

namespace latdist {

// Real-valued function on the lattice sites, one scalar per site.
// Dimensionless; it is the test function the distance optimiser ranges over.
using SiteFunction = std::vector<double>;

enum class Topology {
    Open,           // finite chain, sites 0..N-1, shift falls off the far end
    Cyclic,         // periodic chain, shift wraps mod N
    TruncatedLine,  // finite window onto the infinite line; open boundary rules
};

// A one-dimensional lattice: a topology tag plus the site count N. The shift
// map sigma(i) = i+1 (mod N when cyclic) is owned here; window_pad only
// matters for TruncatedLine, where it is the number of extra sites retained
// on each side of a queried pair for cross-checks.
struct LatticeSpec {
    Topology topology = Topology::Open;
    int sites = 0;
    int window_pad = 2;

    void validate() const;

    bool open_like() const { return topology != Topology::Cyclic; }

    // Number of links the Dirac operator actually uses: N for a cycle,
    // N-1 for an open chain (the value attached to the last site of an open
    // chain never enters any operator).
    int used_links() const { return open_like() ? sites - 1 : sites; }

    bool link_used(int k) const { return k >= 0 && k < used_links(); }

    // Shift target sigma(i); -1 when the shift falls off an open end.
    int shift_target(int i) const {
        if (topology == Topology::Cyclic) return (i + 1) % sites;
        return i + 1 < sites ? i + 1 : -1;
    }

    void require_site(int i) const;
};

// Matrix realisation of the shift map on site functions: (Tf)(i) = f(i+1),
// with (Tf)(N-1) = 0 on open chains and cyclic wrap-around otherwise.
struct ShiftOperator {
    CMatrix matrix;
};

ShiftOperator build_shift(const LatticeSpec& spec);

// (forward_diff f)(i) = f(sigma(i)) - f(i); the last entry of an open chain
// is forced to 0.
SiteFunction forward_diff(const LatticeSpec& spec, const SiteFunction& f);

// (backward_diff f)(i+1) = f(i) - f(i+1); the first entry of an open chain
// is forced to 0. Cyclic lattices wrap.
SiteFunction backward_diff(const LatticeSpec& spec, const SiteFunction& f);

}  // namespace latdist
