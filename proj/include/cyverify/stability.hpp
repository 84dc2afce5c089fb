#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyverify/sheaf.hpp"

namespace cyv {

// pairing of a first Chern class against polarization^(dim-1)
Rat degree_of(const GradedClass& c1, const GradedClass& omega);
Rat slope_of(const SheafExpr& e, const GradedClass& omega);

// Section-vanishing tests on bare line data.  Pure functions of the
// coefficients so the coefficient-box scans can run on many threads without
// touching shared state.
struct KillReason {
    bool died = false;
    bool needs_assumption = false;  // relied on the positivity hypothesis below
    std::string reason;
};
KillReason line_sections_die(const GeomPtr& g, const std::vector<Rat>& coeffs,
                             const GradedClass& omega, bool nontrivial_flat, int npts,
                             bool perp_proved);

// Decides whether a nonzero class pairing to zero with the polarization can be
// effective.  With a one-dimensional orthogonal lattice this is settled by the
// self-intersection bound for irreducible curves; larger orthogonal lattices
// report the small-square classes that block the argument.
struct PerpReport {
    bool empty_proved = false;
    std::vector<std::string> obstacles;  // printable degree-zero classes of square >= -2
    std::string note;
};
PerpReport degree_zero_effectives(const GeomPtr& g, const GradedClass& omega);

struct BoxCandidate {
    std::vector<long long> coeffs;  // against the degree-2 basis
    bool flat = false;              // carries the order-two character
    Rat degree;
    bool killed = false;
    bool assumed = false;
    std::string how;
    std::string cls() const;
    bool operator==(const BoxCandidate& o) const {
        return coeffs == o.coeffs && flat == o.flat && degree == o.degree &&
               killed == o.killed && assumed == o.assumed && how == o.how;
    }
};

struct StabilityCert {
    enum class Verdict { Stable, Unstable, Polystable, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::string subject;
    std::string polarization;
    Rat slope;
    std::vector<std::string> steps;
    std::vector<std::string> assumptions;
    std::vector<BoxCandidate> threats;  // scanned candidates at or above half degree
    long long box_radius = 0;
    long long box_checked = 0;
    bool tail_covered = false;  // symbolic argument disposes of everything outside the box
    std::string witness;        // destabilizing class when unstable
    std::string to_string() const;
};
const char* verdict_name(StabilityCert::Verdict v);

// Slope certificate for a rank-two extension against a surface polarization.
// Scans the coefficient box (serially or with the parallel kernel) and closes
// the infinite tail with the degree case split.
StabilityCert certify_extension(const GeomPtr& g, const Atom& a, const GradedClass& omega,
                                long long box_radius, bool parallel);

// direct sums of line bundles: polystable exactly when the slopes agree
StabilityCert assess_line_sum(const GeomPtr& g, const SheafExpr& e, const GradedClass& omega);

// Fibred threefold bundle assembled from surface pieces: polystable when every
// summand carries the common slope and reduces to a certified stable extension
// or a line bundle on the base surface.
StabilityCert certify_fibred_sum(const GeomPtr& x, const GeomPtr& s, const SheafExpr& e,
                                 const GradedClass& omega,
                                 const std::vector<StabilityCert>& summand_certs);

}  // namespace cyv
