#include "cyverify/stability.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cyv {

Rat degree_of(const GradedClass& c1, const GradedClass& omega) {
    return pairing_degree(c1, omega);
}

Rat slope_of(const SheafExpr& e, const GradedClass& omega) {
    int r = e.rank();
    if (r <= 0) throw std::runtime_error("slope needs positive rank");
    return degree_of(e.c1(), omega) / Rat(r);
}

namespace {

std::string coeff_string(const std::vector<std::string>& labels, const std::vector<Rat>& c) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (c[i] == Rat(0)) continue;
        if (!out.empty()) out += ";";
        out += labels[i] + ":" + to_string(c[i]);
    }
    return out.empty() ? "0" : out;
}

GradedClass class_of(const GeomPtr& g, const std::vector<Rat>& coeffs) {
    GradedClass c(g);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        c.add_coeff(2, static_cast<int>(i), coeffs[i]);
    return c;
}

SheafExpr term_expr(const GeomPtr& g, const NormalTerm& t) {
    SheafExpr e = SheafExpr::line(g, t.line, t.tor);
    for (const auto& a : t.atoms) e = e.tensor(SheafExpr::atom_bundle(g, a));
    if (!t.ideal_set.empty()) e = e.tensor_ideal(t.ideal_set, t.ideal_points);
    return e;
}

}  // namespace

std::string BoxCandidate::cls() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!out.empty()) out += ",";
        out += std::to_string(coeffs[i]);
    }
    if (flat) out += ",flat";
    return "(" + out + ")";
}

const char* verdict_name(StabilityCert::Verdict v) {
    switch (v) {
        case StabilityCert::Verdict::Stable: return "stable";
        case StabilityCert::Verdict::Unstable: return "unstable";
        case StabilityCert::Verdict::Polystable: return "polystable";
        default: return "inconclusive";
    }
}

std::string StabilityCert::to_string() const {
    std::ostringstream os;
    os << subject << " against " << polarization << ": " << verdict_name(verdict)
       << " (slope " << cyv::to_string(slope) << ")\n";
    for (const auto& s : steps) os << "  - " << s << "\n";
    if (box_checked > 0) {
        long long survivors = 0;
        for (const auto& t : threats)
            if (!t.killed) ++survivors;
        os << "  box radius " << box_radius << ": " << box_checked << " candidates, "
           << threats.size() << " at destabilizing slope, " << survivors
           << " unresolved\n";
        os << "  tail " << (tail_covered ? "closed by the degree split" : "open") << "\n";
    }
    for (const auto& a : assumptions) os << "  assuming: " << a << "\n";
    if (!witness.empty()) os << "  witness: " << witness << "\n";
    return os.str();
}

KillReason line_sections_die(const GeomPtr& g, const std::vector<Rat>& coeffs,
                             const GradedClass& omega, bool nontrivial_flat, int npts,
                             bool perp_proved) {
    GradedClass c = class_of(g, coeffs);
    for (const auto& lbl : g->nef) {
        Rat p = (c * GradedClass::basis_element(g, 2, lbl)).integrate();
        if (p < Rat(0))
            return {true, false, "pairs " + to_string(p) + " with the nef class " + lbl};
    }
    Rat deg = pairing_degree(c, omega);
    if (deg < Rat(0)) return {true, false, "degree " + to_string(deg) + " is negative"};
    bool trivial = c.is_zero();
    if (deg > Rat(0)) return {false, false, "degree " + to_string(deg) + " leaves room for sections"};
    if (trivial) {
        if (nontrivial_flat)
            return {true, false, "the flat twist of the trivial class has no sections"};
        if (npts > 0)
            return {true, false, "constant sections cannot vanish on the imposed points"};
        return {false, false, "the trivial class keeps its constant section"};
    }
    if (perp_proved)
        return {true, false, "nonzero degree-zero classes are never effective here"};
    return {true, true, "nonzero degree-zero class assumed not effective"};
}

PerpReport degree_zero_effectives(const GeomPtr& g, const GradedClass& omega) {
    PerpReport rep;
    const auto& labels = g->basis.at(2);
    std::size_t k = labels.size();
    std::vector<Rat> v(k);
    bool all_zero = true;
    for (std::size_t i = 0; i < k; ++i) {
        v[i] = pairing_degree(GradedClass::basis_element(g, 2, labels[i]), omega);
        if (v[i] != Rat(0)) all_zero = false;
    }
    if (all_zero) {
        rep.note = "the polarization pairs to zero with everything";
        return rep;
    }
    auto square = [&](const std::vector<Rat>& x) {
        GradedClass c = class_of(g, x);
        return (c * c).integrate();
    };
    if (k == 1) {
        rep.empty_proved = true;
        rep.note = "no nonzero class is orthogonal to the polarization";
        return rep;
    }
    if (k == 2) {
        // primitive generator of the orthogonal line
        long long a = v[1].numerator() * v[0].denominator();
        long long b = -v[0].numerator() * v[1].denominator();
        long long d = std::gcd(std::abs(a), std::abs(b));
        if (d > 0) {
            a /= d;
            b /= d;
        }
        std::vector<Rat> gen{Rat(a), Rat(b)};
        Rat q = square(gen);
        std::string cls = coeff_string(labels, gen);
        if (q < Rat(-2)) {
            rep.empty_proved = true;
            rep.note = "every degree-zero class is a multiple of " + cls + " with square " +
                       to_string(q) + ", below the floor for effective curve classes";
        } else {
            rep.obstacles.push_back(cls);
            rep.note = "the degree-zero generator " + cls + " has square " + to_string(q);
        }
        return rep;
    }
    // rank two or more orthogonal to the polarization: list the small-square
    // classes; the sweep cannot by itself rule out effectivity
    std::set<std::string> seen;
    const long long R = 4;
    std::vector<long long> x(k, -R);
    while (true) {
        bool nonzero = false;
        for (auto xi : x) nonzero |= xi != 0;
        if (nonzero) {
            Rat deg(0);
            std::vector<Rat> xr(k);
            for (std::size_t i = 0; i < k; ++i) {
                xr[i] = Rat(x[i]);
                deg += v[i] * xr[i];
            }
            if (deg == Rat(0) && square(xr) >= Rat(-2)) {
                std::string cls = coeff_string(labels, xr);
                if (seen.insert(cls).second) rep.obstacles.push_back(cls);
            }
        }
        std::size_t pos = 0;
        while (pos < k && x[pos] == R) x[pos++] = -R;
        if (pos == k) break;
        ++x[pos];
    }
    rep.note = "the orthogonal lattice has rank above one; the listed classes have square "
               "at least -2 and would each need a separate effectivity argument";
    return rep;
}

StabilityCert certify_extension(const GeomPtr& g, const Atom& a, const GradedClass& omega,
                                long long box_radius, bool parallel) {
    if (g->dim != 2) throw std::runtime_error("extension certificates live on surfaces");
    StabilityCert cert;
    cert.subject = a.key();
    cert.polarization = omega.to_string();
    cert.box_radius = box_radius;

    const auto& labels = g->basis.at(2);
    const std::size_t k = labels.size();
    GradedClass det = line_class(g, a.det);
    Rat dV = pairing_degree(det, omega);
    cert.slope = dV / Rat(2);

    cert.steps.push_back("extension of the ideal twist by the trivial bundle: " +
                         std::to_string(a.points) + " points on " + a.set +
                         ", determinant of degree " + to_string(dV));
    cert.steps.push_back(
        "a destabilizing line bundle maps nontrivially either to the trivial piece or to "
        "the twisted ideal piece");

    PerpReport perp = degree_zero_effectives(g, omega);
    cert.steps.push_back(perp.note);

    std::vector<Rat> v(k), detc(k);
    bool integral = true;
    for (std::size_t i = 0; i < k; ++i) {
        v[i] = pairing_degree(GradedClass::basis_element(g, 2, labels[i]), omega);
        integral = integral && is_integer(v[i]);
        auto it = a.det.find(labels[i]);
        detc[i] = it == a.det.end() ? Rat(0) : it->second;
    }

    const int nflat = g->torsion == TorsionKind::Z2Cube ? 2 : 1;
    const long long side = 2 * box_radius + 1;
    long long total = nflat;
    for (std::size_t i = 0; i < k; ++i) total *= side;
    cert.box_checked = total;

    auto evaluate = [&](long long idx) {
        BoxCandidate cand;
        cand.flat = nflat == 2 && (idx % nflat) == 1;
        long long rest = idx / nflat;
        cand.coeffs.assign(k, 0);
        for (std::size_t i = k; i-- > 0;) {
            cand.coeffs[i] = rest % side - box_radius;
            rest /= side;
        }
        cand.degree = Rat(0);
        for (std::size_t i = 0; i < k; ++i) cand.degree += v[i] * Rat(cand.coeffs[i]);
        bool threat = Rat(2) * cand.degree >= dV;
        if (!threat) return std::pair<bool, BoxCandidate>{false, cand};

        std::vector<Rat> inv(k), rem(k);
        for (std::size_t i = 0; i < k; ++i) {
            inv[i] = -Rat(cand.coeffs[i]);
            rem[i] = detc[i] - Rat(cand.coeffs[i]);
        }
        bool det_flat = !a.det_tor.is_trivial();
        KillReason first = line_sections_die(g, inv, omega, cand.flat, 0, perp.empty_proved);
        KillReason second = line_sections_die(g, rem, omega, det_flat != cand.flat,
                                              a.points, perp.empty_proved);
        cand.killed = first.died && second.died;
        cand.assumed = (first.died && first.needs_assumption) ||
                       (second.died && second.needs_assumption);
        if (cand.killed)
            cand.how = "trivial piece: " + first.reason + " / ideal piece: " + second.reason;
        else if (!first.died)
            cand.how = "unresolved against the trivial piece: " + first.reason;
        else
            cand.how = "unresolved against the ideal piece: " + second.reason;
        return std::pair<bool, BoxCandidate>{true, cand};
    };

    std::vector<std::pair<bool, BoxCandidate>> all(static_cast<std::size_t>(total));
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long idx = 0; idx < total; ++idx)
            all[static_cast<std::size_t>(idx)] = evaluate(idx);
    } else {
        for (long long idx = 0; idx < total; ++idx)
            all[static_cast<std::size_t>(idx)] = evaluate(idx);
    }

    bool survivor = false, used_assumption = false;
    for (auto& [is_threat, cand] : all) {
        if (!is_threat) continue;
        survivor |= !cand.killed;
        used_assumption |= cand.assumed;
        cert.threats.push_back(std::move(cand));
    }

    if (dV == Rat(1) && integral) {
        cert.tail_covered = true;
        cert.steps.push_back(
            "outside the box: a candidate of slope at least half the degree has positive "
            "degree, so its inverse pairs negatively and misses the trivial piece");
        cert.steps.push_back(
            "its difference from the determinant has degree at most zero: negative degree "
            "kills sections, and at degree zero the class is trivial (killed by the "
            "imposed points or the flat twist) or nonzero of degree zero");
        if (!perp.empty_proved) used_assumption = true;
    }
    if (used_assumption) {
        std::string obs;
        for (const auto& o : perp.obstacles) obs += (obs.empty() ? "" : ", ") + o;
        cert.assumptions.push_back(
            "no nonzero effective class of degree zero exists; unsettled classes: " +
            (obs.empty() ? std::string("none listed") : obs));
    }

    if (survivor)
        cert.verdict = StabilityCert::Verdict::Inconclusive;
    else if (cert.tail_covered)
        cert.verdict = StabilityCert::Verdict::Stable;
    else {
        cert.verdict = StabilityCert::Verdict::Inconclusive;
        cert.steps.push_back("the box is clean but the tail argument does not apply");
    }
    return cert;
}

StabilityCert assess_line_sum(const GeomPtr& g, const SheafExpr& e, const GradedClass& omega) {
    StabilityCert cert;
    cert.subject = e.key();
    cert.polarization = omega.to_string();
    std::vector<std::pair<Rat, std::string>> slopes;
    for (const auto& t : e.terms()) {
        if (t.is_sky || !t.atoms.empty() || !t.ideal_set.empty()) {
            cert.steps.push_back("a summand is not a line bundle; no verdict");
            return cert;
        }
        SheafExpr one = term_expr(g, t);
        slopes.push_back({degree_of(one.c1(), omega), one.key()});
    }
    Rat total(0);
    for (auto& [s, key] : slopes) total += s;
    cert.slope = total / Rat(static_cast<long long>(slopes.size()));
    auto mx = std::max_element(slopes.begin(), slopes.end(),
                               [](const auto& x, const auto& y) { return x.first < y.first; });
    if (mx->first > cert.slope) {
        cert.verdict = StabilityCert::Verdict::Unstable;
        cert.witness = mx->second;
        cert.steps.push_back("summand " + mx->second + " has slope " + to_string(mx->first) +
                             " above the average " + to_string(cert.slope));
        return cert;
    }
    cert.verdict = StabilityCert::Verdict::Polystable;
    cert.steps.push_back("all summands share slope " + to_string(cert.slope) +
                         " and line bundles are stable");
    return cert;
}

StabilityCert certify_fibred_sum(const GeomPtr& x, const GeomPtr& s, const SheafExpr& e,
                                 const GradedClass& omega,
                                 const std::vector<StabilityCert>& summand_certs) {
    StabilityCert cert;
    cert.subject = e.key();
    cert.polarization = omega.to_string();
    cert.slope = slope_of(e, omega);

    std::vector<std::pair<Rat, std::string>> slopes;
    for (const auto& t : e.terms()) {
        SheafExpr one = term_expr(x, t);
        slopes.push_back({slope_of(one, omega), one.key()});
    }
    auto mx = std::max_element(slopes.begin(), slopes.end(),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (mx->first != cert.slope) {
        cert.verdict = StabilityCert::Verdict::Unstable;
        cert.witness = mx->second;
        cert.steps.push_back("summand " + mx->second + " has slope " + to_string(mx->first) +
                             " above the common value " + to_string(cert.slope));
        return cert;
    }
    cert.steps.push_back("all summands share slope " + to_string(cert.slope));

    for (const auto& t : e.terms()) {
        auto d = fibre_decompose(t, x, s);
        if (!d) {
            cert.steps.push_back("a summand does not reduce to the base surface");
            return cert;
        }
        const auto& vterms = d->surface.terms();
        if (vterms.size() != 1) {
            cert.steps.push_back("a summand reduces to a sum on the base; no verdict");
            return cert;
        }
        if (vterms.front().atoms.empty()) {
            cert.steps.push_back("summand reduces to a line bundle on the base, which is stable");
            continue;
        }
        const Atom& atom = vterms.front().atoms.front();
        const StabilityCert* found = nullptr;
        for (const auto& sc : summand_certs)
            if (sc.subject == atom.key() && sc.verdict == StabilityCert::Verdict::Stable)
                found = &sc;
        if (!found) {
            cert.steps.push_back("no stability certificate covers the base piece " +
                                 atom.key());
            return cert;
        }
        cert.steps.push_back("summand reduces to the certified stable extension " +
                             atom.key());
        for (const auto& asm_line : found->assumptions)
            if (std::find(cert.assumptions.begin(), cert.assumptions.end(), asm_line) ==
                cert.assumptions.end())
                cert.assumptions.push_back(asm_line);
    }
    cert.assumptions.push_back(
        "for the chosen polarization, slope stability of each summand follows from "
        "stability of its base-surface reduction");
    cert.verdict = StabilityCert::Verdict::Polystable;
    return cert;
}

}  // namespace cyv
