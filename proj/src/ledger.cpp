#include "cyverify/ledger.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace cyv {

std::string Interval::to_string() const {
    if (is_exact()) return std::to_string(lo);
    std::string top = hi ? std::to_string(*hi) : "inf";
    return "[" + std::to_string(lo) + "," + top + "]";
}

namespace {

SheafExpr expr_from_term(const GeomPtr& g, const NormalTerm& t) {
    if (t.is_sky) return SheafExpr::skyscraper(g, t.sky_set, t.sky_length);
    SheafExpr e = SheafExpr::line(g, t.line, t.tor);
    for (const auto& a : t.atoms) e = e.tensor(SheafExpr::atom_bundle(g, a));
    if (!t.ideal_set.empty()) e = e.tensor_ideal(t.ideal_set, t.ideal_points);
    return e;
}

NormalTerm strip_ideal(const NormalTerm& t) {
    NormalTerm s = t;
    s.ideal_set.clear();
    s.ideal_points = 0;
    return s;
}

}  // namespace

Ledger::Ledger(GeomPtr g, GeomPtr base_surface)
    : geom_(std::move(g)), surface_(std::move(base_surface)) {
    if (!surface_) {
        if (geom_->dim != 2)
            throw LedgerError("a threefold ledger needs its base surface");
        surface_ = geom_;
    }
}

const GeomPtr& Ledger::geom_of(const SheafExpr& e) const {
    if (e.geom()->id == geom_->id) return geom_;
    if (e.geom()->id == surface_->id) return surface_;
    throw LedgerError("expression lives on " + geom_name(e.geom()->id) +
                      ", outside this ledger");
}

std::string Ledger::qualified_key(const SheafExpr& e) const {
    return geom_name(e.geom()->id) + "|" + e.key();
}

FactId Ledger::fid(const SheafExpr& e, int deg) const {
    if (deg < 0 || deg > e.geom()->dim)
        throw LedgerError("degree " + std::to_string(deg) + " out of range");
    return {qualified_key(e), deg};
}

Fact& Ledger::fact_ref(const FactId& f) { return facts_[f]; }

bool Ledger::narrow(const FactId& f, Interval by, const Cert& cert) {
    Fact& fact = facts_[f];
    bool changed = false;
    if (by.lo > fact.iv.lo) {
        fact.iv.lo = by.lo;
        fact.lo_cert = cert;
        changed = true;
    }
    if (by.hi && (!fact.iv.hi || *by.hi < *fact.iv.hi)) {
        fact.iv.hi = by.hi;
        fact.hi_cert = cert;
        changed = true;
    }
    if (fact.iv.hi && fact.iv.lo > *fact.iv.hi)
        throw LedgerError(f.to_string() + " is impossible: lower bound " +
                          std::to_string(fact.iv.lo) + " from " + fact.lo_cert.rule + " (" +
                          fact.lo_cert.detail + ") exceeds upper bound " +
                          std::to_string(*fact.iv.hi) + " from " + fact.hi_cert.rule + " (" +
                          fact.hi_cert.detail + ")");
    if (changed) dirty_ = true;
    return changed;
}

bool Ledger::narrow_rank(Chain& c, std::size_t i, Interval by) {
    Interval& r = c.ranks[i];
    bool changed = false;
    if (by.lo > r.lo) {
        r.lo = by.lo;
        changed = true;
    }
    if (by.hi && (!r.hi || *by.hi < *r.hi)) {
        r.hi = by.hi;
        changed = true;
    }
    if (r.hi && r.lo > *r.hi)
        throw LedgerError("sequence " + c.name + " cannot be exact: a map rank is forced into " +
                          "the empty range near position " + std::to_string(i));
    if (changed) dirty_ = true;
    return changed;
}

void Ledger::declare_points(const std::string& name, const PointDecl& d) {
    points_[name] = d;
    if (!replaying_) {
        Op op;
        op.kind = Op::Points;
        op.name = name;
        op.decl = d;
        log_.push_back(op);
    }
    dirty_ = true;
}

void Ledger::declare_section_carrier(const std::string& name, const SheafExpr& m) {
    std::vector<SheafExpr> queue{m};
    while (!queue.empty()) {
        SheafExpr e = queue.back();
        queue.pop_back();
        do_register(e, queue);
    }
    carriers_[name] = qualified_key(m);
    if (!replaying_) {
        Op op;
        op.kind = Op::Carrier;
        op.name = name;
        op.exprs = {m};
        log_.push_back(op);
    }
    dirty_ = true;
}

std::string Ledger::register_sheaf(const SheafExpr& e) {
    if (!replaying_ && !exprs_.count(qualified_key(e))) {
        Op op;
        op.kind = Op::Sheaf;
        op.exprs = {e};
        log_.push_back(op);
    }
    std::vector<SheafExpr> queue{e};
    while (!queue.empty()) {
        SheafExpr cur = queue.back();
        queue.pop_back();
        do_register(cur, queue);
    }
    return qualified_key(e);
}

void Ledger::axiom(const SheafExpr& e, int deg, Interval iv, const std::string& note) {
    register_sheaf(e);
    if (!replaying_) {
        Op op;
        op.kind = Op::Axiom;
        op.exprs = {e};
        op.deg = deg;
        op.iv = iv;
        op.note = note;
        log_.push_back(op);
    }
    narrow(fid(e, deg), iv, {"axiom", note});
    dirty_ = true;
}

void Ledger::axiom_acyclic(const SheafExpr& e, const std::string& note) {
    for (int d = 0; d <= e.geom()->dim; ++d) axiom(e, d, Interval::exact(0), note);
}

std::string Ledger::register_ses(const std::string& name, const SheafExpr& sub,
                                 const SheafExpr& mid, const SheafExpr& quot,
                                 const std::string& note) {
    if (!replaying_) {
        Op op;
        op.kind = Op::Ses;
        op.exprs = {sub, mid, quot};
        op.name = name;
        op.note = note;
        log_.push_back(op);
    }
    std::vector<SheafExpr> queue;
    add_chain(name, note, {sub, mid, quot}, queue);
    while (!queue.empty()) {
        SheafExpr cur = queue.back();
        queue.pop_back();
        do_register(cur, queue);
    }
    return name;
}

void Ledger::add_chain(const std::string& name, const std::string& note,
                       const std::vector<SheafExpr>& parts, std::vector<SheafExpr>& queue) {
    if (chain_index_.count(name)) return;
    const GeomPtr& g = geom_of(parts[1]);
    for (const auto& p : parts)
        if (geom_of(p)->id != g->id)
            throw LedgerError("sequence " + name + " mixes spaces");
    if (!(parts[0].chern_character() + parts[2].chern_character() ==
          parts[1].chern_character()))
        throw LedgerError("sequence " + name + " does not balance: character data of the " +
                          "middle differs from the sum of the ends");
    for (const auto& p : parts) queue.push_back(p);
    Chain c;
    c.name = name;
    c.note = note;
    int dim = g->dim;
    for (int d = 0; d <= dim; ++d)
        for (int j = 0; j < 3; ++j) c.entries.push_back({qualified_key(parts[j]), d});
    for (int j = 0; j < 3; ++j) c.entry_keys.push_back(parts[j].key());
    c.ranks.assign(c.entries.size() + 1, Interval::unknown());
    c.ranks.front() = Interval::exact(0);
    c.ranks.back() = Interval::exact(0);
    chain_index_[name] = chains_.size();
    chains_.push_back(std::move(c));
    dirty_ = true;
}

// degree against the nef classes: sections force every such pairing to be
// nonnegative, and strict positivity against an ample sum for a nonzero class
void Ledger::apply_degree_vanishing(const SheafExpr& e, const NormalTerm& t) {
    const GeomPtr& g = geom_of(e);
    GradedClass c1 = line_class(g, t.line);
    GradedClass amp(g);
    std::vector<GradedClass> nefs;
    for (const auto& lbl : g->nef) {
        nefs.push_back(GradedClass::basis_element(g, 2, lbl));
        amp += nefs.back();
    }
    std::vector<std::pair<std::string, Rat>> degs;
    if (g->dim == 2) {
        for (std::size_t i = 0; i < nefs.size(); ++i)
            degs.push_back({g->nef[i], (c1 * nefs[i]).integrate()});
    } else {
        for (std::size_t i = 0; i < nefs.size(); ++i)
            for (std::size_t j = i; j < nefs.size(); ++j)
                degs.push_back({g->nef[i] + "." + g->nef[j],
                                (c1 * nefs[i] * nefs[j]).integrate()});
    }
    Rat amp_deg = (c1 * pow(amp, g->dim - 1)).integrate();

    bool has_ideal = !t.ideal_set.empty();
    for (const auto& [lbl, d] : degs) {
        if (d < Rat(0)) {
            narrow(fid(e, 0), Interval::exact(0),
                   {"degree", "pairs " + to_string(d) + " with nef " + lbl});
            return;
        }
    }
    if (has_ideal) {
        // sections would be sections of the line factor vanishing at points;
        // at degree <= 0 the only candidates are constants, which do not vanish
        if (amp_deg <= Rat(0) && t.ideal_points > 0)
            narrow(fid(e, 0), Interval::exact(0),
                   {"degree", "nonpositive twist with " + std::to_string(t.ideal_points) +
                                  " imposed points"});
        return;
    }
    if (amp_deg == Rat(0) && (!c1.is_zero() || !t.tor.is_trivial()))
        narrow(fid(e, 0), Interval::exact(0),
               {"degree", "numerically trivial but not the structure sheaf"});
}

void Ledger::do_register(const SheafExpr& e, std::vector<SheafExpr>& queue) {
    std::string key = qualified_key(e);
    if (exprs_.count(key)) return;
    if (exprs_.size() > 20000) throw LedgerError("runaway registration cascade");
    exprs_.emplace(key, e);
    dirty_ = true;
    const GeomPtr& g = geom_of(e);
    int dim = g->dim;
    for (int d = 0; d <= dim; ++d) fact_ref({key, d});

    Rat chi = e.chi();
    if (chi.denominator() != 1)
        throw LedgerError("fractional Euler characteristic for " + key);
    ChiConstraint cc;
    cc.chi = chi.numerator();
    for (int d = 0; d <= dim; ++d) cc.dims.push_back({key, d});
    chis_.push_back(cc);

    if (e.terms().size() > 1) {
        std::map<std::string, std::pair<long long, SheafExpr>> grouped;
        for (const auto& t : e.terms()) {
            SheafExpr one = expr_from_term(g, t);
            auto [it, fresh] = grouped.try_emplace(one.key(), 1, one);
            if (!fresh) it->second.first += 1;
            if (fresh) queue.push_back(one);
        }
        for (int d = 0; d <= dim; ++d) {
            LinearLink l;
            l.target = {key, d};
            for (const auto& [k, cs] : grouped)
                l.terms.push_back({cs.first, fid(cs.second, d)});
            l.rule = "additivity";
            l.detail = "cohomology of a direct sum";
            linear_.push_back(l);
        }
        return;
    }

    const NormalTerm& t = e.terms().front();

    if (t.is_sky) {
        narrow({key, 0}, Interval::exact(t.sky_length), {"skyscraper", "length of the support"});
        for (int d = 1; d <= dim; ++d)
            narrow({key, d}, Interval::exact(0), {"skyscraper", "no higher cohomology"});
        return;
    }

    if (t.atoms.empty() && t.line.empty() && t.tor.is_trivial() && t.ideal_set.empty())
        narrow({key, 0}, Interval::exact(1), {"unit", "constants are the only global functions"});

    if (t.atoms.empty()) apply_degree_vanishing(e, t);

    if (dim == 2 && !t.ideal_set.empty()) {
        SheafExpr inner = expr_from_term(g, strip_ideal(t));
        SheafExpr fibre =
            SheafExpr::skyscraper(g, t.ideal_set, t.ideal_points * inner.rank());
        add_chain("eval:" + key, "restriction to the imposed points", {e, inner, fibre}, queue);
        if (t.atoms.size() == 1 && t.line.empty() && t.tor.is_trivial()) {
            IncidenceRule r;
            r.target = {key, 0};
            r.carrier_key = qualified_key(inner);
            r.z_set = t.ideal_set;
            r.zp_set = t.atoms.front().set;
            incidence_.push_back(r);
        }
        if (t.atoms.empty()) {
            IncidenceRule r;
            r.target = {key, 0};
            r.carrier_key = qualified_key(inner);
            r.z_set = t.ideal_set;
            incidence_.push_back(r);
        }
    }

    if (dim == 2 && t.ideal_set.empty()) {
        for (std::size_t i = 0; i < t.atoms.size(); ++i) {
            NormalTerm rest = t;
            rest.atoms.erase(rest.atoms.begin() + static_cast<long>(i));
            SheafExpr sub = expr_from_term(g, rest);
            const Atom& a = t.atoms[i];
            SheafExpr quot = sub.twist(a.det, a.det_tor).tensor_ideal(a.set, a.points);
            add_chain("serre[" + std::to_string(i) + "]:" + key,
                      "extension presentation of a rank-two factor", {sub, e, quot}, queue);
        }
    }

    if (dim == 3) {
        if (auto d = fibre_decompose(t, geom_, surface_)) {
            const SheafExpr& V = d->surface;
            long long n = d->n;
            auto surface_fact = [&](const SheafExpr& v, int k) -> std::optional<FactId> {
                if (k < 0 || k > surface_->dim) return std::nullopt;
                return fid(v, k);
            };
            if (geom_->torsion == TorsionKind::FreeChar) {
                queue.push_back(V);
                bool flat_nontrivial = (n == 0) && !d->tor.is_trivial();
                for (int k = 0; k <= 3; ++k) {
                    if (flat_nontrivial) {
                        narrow({key, k}, Interval::exact(0),
                               {"fibration", "nontrivial flat twist along the fibres"});
                        continue;
                    }
                    LinearLink l;
                    l.target = {key, k};
                    l.rule = "fibration";
                    l.detail = "product decomposition over the surface factor";
                    if (n > 0) {
                        if (auto f = surface_fact(V, k)) l.terms.push_back({n, *f});
                    } else if (n < 0) {
                        if (auto f = surface_fact(V, k - 1)) l.terms.push_back({-n, *f});
                    } else {
                        if (auto f = surface_fact(V, k)) l.terms.push_back({1, *f});
                        if (auto f = surface_fact(V, k - 1)) l.terms.push_back({1, *f});
                    }
                    linear_.push_back(l);
                }
            } else if (geom_->torsion == TorsionKind::Z2Cube) {
                int gexp = d->tor.gamma_exponent();
                SheafExpr Vg = V.twist({}, gexp ? gamma_char() : Torsion{});
                SheafExpr Vg1 = V.twist({}, gexp ? Torsion{} : gamma_char());
                SheafExpr V0 = V;
                SheafExpr V1 = V.twist({}, gamma_char());
                queue.push_back(V0);
                queue.push_back(V1);
                bool fib_triv = d->tor.fibre_trivial();
                for (int k = 0; k <= 3; ++k) {
                    if (n == 0 && !fib_triv) {
                        narrow({key, k}, Interval::exact(0),
                               {"fibration", "nontrivial flat twist along the fibres"});
                        continue;
                    }
                    if (n == 0) {
                        LinearLink l;
                        l.target = {key, k};
                        l.rule = "fibration";
                        l.detail = "pushforward and first derived pushforward of the "
                                   "structure sheaf";
                        if (auto f = surface_fact(Vg, k)) l.terms.push_back({1, *f});
                        if (auto f = surface_fact(Vg1, k - 1)) l.terms.push_back({1, *f});
                        linear_.push_back(l);
                        continue;
                    }
                    int shift = n < 0 ? 1 : 0;
                    auto fa = surface_fact(V0, k - shift);
                    auto fb = surface_fact(V1, k - shift);
                    if (!fa) {
                        narrow({key, k}, Interval::exact(0),
                               {"fibration", "no surface contribution in this degree"});
                        continue;
                    }
                    SplitLink s;
                    s.target = {key, k};
                    s.mult = n > 0 ? n : -n;
                    s.a = *fa;
                    s.b = *fb;
                    s.rule = "fibration";
                    s.detail = "pushforward splits into the two flat descent pieces in an "
                               "unknown proportion";
                    splits_.push_back(s);
                }
            }
        }
    }

    if (e.locally_free()) {
        SheafExpr partner =
            e.dual().twist({}, g->canonical_is_gamma ? gamma_char() : Torsion{});
        std::string pkey = qualified_key(partner);
        queue.push_back(partner);
        for (int d = 0; d <= dim; ++d) {
            std::pair<FactId, FactId> m{{key, d}, {pkey, dim - d}};
            std::pair<FactId, FactId> rev{{pkey, dim - d}, {key, d}};
            bool seen = false;
            for (const auto& mm : mirrors_)
                if (mm == m || mm == rev) seen = true;
            if (!seen) mirrors_.push_back(m);
        }
    }
}

bool Ledger::propagate_chain(Chain& c) {
    bool changed = false;
    bool local = true;
    const std::size_t m = c.entries.size();
    while (local) {
        local = false;
        for (std::size_t i = 0; i < m; ++i) {
            Interval d = facts_[c.entries[i]].iv;
            Interval& rin = c.ranks[i];
            Interval& rout = c.ranks[i + 1];
            if (d.hi) {
                local |= narrow_rank(c, i, Interval{0, d.hi});
                local |= narrow_rank(c, i + 1, Interval{0, d.hi});
            }
            // exactness at this entry: dim = rank in + rank out
            Interval sum{rin.lo + rout.lo,
                         (rin.hi && rout.hi) ? std::optional<long long>(*rin.hi + *rout.hi)
                                             : std::nullopt};
            bool fchanged = narrow(c.entries[i], sum,
                                   {"exact-sequence", c.name + " at position " +
                                                          std::to_string(i)});
            changed |= fchanged;
            local |= fchanged;
            d = facts_[c.entries[i]].iv;
            if (rout.hi)
                local |= narrow_rank(c, i, Interval{d.lo - *rout.hi, d.hi ? std::optional<long long>(*d.hi - rout.lo) : std::nullopt});
            else if (d.hi)
                local |= narrow_rank(c, i, Interval{0, *d.hi - rout.lo});
            if (rin.hi)
                local |= narrow_rank(c, i + 1, Interval{d.lo - *rin.hi, d.hi ? std::optional<long long>(*d.hi - rin.lo) : std::nullopt});
            else if (d.hi)
                local |= narrow_rank(c, i + 1, Interval{0, *d.hi - rin.lo});
        }
    }
    return changed;
}

bool Ledger::apply_linear(const LinearLink& l) {
    bool changed = false;
    long long lo_sum = 0;
    std::optional<long long> hi_sum = 0;
    for (const auto& [cf, f] : l.terms) {
        const Interval& iv = facts_[f].iv;
        lo_sum += cf * iv.lo;
        if (hi_sum && iv.hi)
            hi_sum = *hi_sum + cf * *iv.hi;
        else
            hi_sum.reset();
    }
    changed |= narrow(l.target, Interval{lo_sum, hi_sum}, {l.rule, l.detail});
    const Interval& tv = facts_[l.target].iv;
    for (const auto& [cf, f] : l.terms) {
        long long other_lo = 0;
        std::optional<long long> other_hi = 0;
        for (const auto& [cf2, f2] : l.terms) {
            if (&f2 == &f) continue;
            const Interval& iv = facts_[f2].iv;
            other_lo += cf2 * iv.lo;
            if (other_hi && iv.hi)
                other_hi = *other_hi + cf2 * *iv.hi;
            else
                other_hi.reset();
        }
        Interval bound = Interval::unknown();
        if (tv.hi) bound.hi = (*tv.hi - other_lo) / cf;
        if (other_hi) {
            long long num = tv.lo - *other_hi;
            long long q = num > 0 ? (num + cf - 1) / cf : 0;
            bound.lo = q;
        }
        changed |= narrow(f, bound, {l.rule, l.detail + " (solved for one part)"});
    }
    return changed;
}

bool Ledger::apply_split(const SplitLink& s) {
    const Interval& a = facts_[s.a].iv;
    const Interval& b = facts_[s.b].iv;
    Interval bound;
    bound.lo = s.mult * std::min(a.lo, b.lo);
    if (a.hi && b.hi) bound.hi = s.mult * std::max(*a.hi, *b.hi);
    return narrow(s.target, bound, {s.rule, s.detail});
}

bool Ledger::apply_chi(const ChiConstraint& c) {
    bool changed = false;
    for (std::size_t j = 0; j < c.dims.size(); ++j) {
        long long sign_j = (j % 2 == 0) ? 1 : -1;
        // dim_j = sign_j * chi - sum_{i != j} sign_j * sign_i * dim_i
        long long base = sign_j * c.chi;
        long long lo = base;
        std::optional<long long> hi = base;
        for (std::size_t i = 0; i < c.dims.size(); ++i) {
            if (i == j) continue;
            long long s = -sign_j * ((i % 2 == 0) ? 1 : -1);
            const Interval& iv = facts_[c.dims[i]].iv;
            if (s > 0) {
                lo += s * iv.lo;
                if (hi && iv.hi)
                    hi = *hi + s * *iv.hi;
                else
                    hi.reset();
            } else {
                if (iv.hi)
                    lo += s * *iv.hi;
                else
                    lo = std::numeric_limits<long long>::min() / 4;
                if (hi) hi = *hi + s * iv.lo;
            }
        }
        Interval bound;
        bound.lo = std::max<long long>(lo, 0);
        bound.hi = hi;
        if (bound.hi && *bound.hi < 0)
            throw LedgerError("characteristic completion forces a negative dimension at " +
                              c.dims[j].to_string());
        changed |= narrow(c.dims[j], bound,
                          {"chi-completion", "alternating sum equals the characteristic " +
                                                 std::to_string(c.chi)});
    }
    return changed;
}

bool Ledger::apply_incidence(const IncidenceRule& r) {
    auto zit = points_.find(r.z_set);
    if (zit == points_.end()) return false;
    const PointDecl& z = zit->second;
    bool changed = false;
    if (r.zp_set.empty()) {
        // points declared on the divisor of a named section carrier
        if (z.on_divisor_of.empty()) return false;
        auto cit = carriers_.find(z.on_divisor_of);
        if (cit == carriers_.end() || cit->second != r.carrier_key) return false;
        changed |= narrow(r.target, Interval{1, std::nullopt},
                          {"incidence", "a section vanishes on the divisor holding the points"});
        return changed;
    }
    bool contained = r.z_set == r.zp_set || z.inside.count(r.zp_set) > 0;
    bool apart = z.not_inside.count(r.zp_set) > 0;
    auto pit = points_.find(r.zp_set);
    if (!apart && pit != points_.end() && z.size > pit->second.size) apart = true;
    if (contained)
        changed |= narrow(r.target, Interval{1, std::nullopt},
                          {"incidence", "the canonical section vanishes on " + r.zp_set +
                                            " which contains " + r.z_set});
    const Interval& h0p = facts_[{r.carrier_key, 0}].iv;
    if (h0p == Interval::exact(1)) {
        if (contained)
            changed |= narrow(r.target, Interval::exact(1),
                              {"incidence", "only the canonical section is available"});
        else if (apart)
            changed |= narrow(r.target, Interval::exact(0),
                              {"incidence", "the only section misses part of " + r.z_set});
    }
    return changed;
}

bool Ledger::apply_mirror(const std::pair<FactId, FactId>& m) {
    bool changed = false;
    Interval a = facts_[m.first].iv;
    Interval b = facts_[m.second].iv;
    changed |= narrow(m.first, b, {"duality", "matched with " + m.second.to_string()});
    changed |= narrow(m.second, a, {"duality", "matched with " + m.first.to_string()});
    return changed;
}

bool Ledger::pass() {
    bool changed = false;
    for (auto& c : chains_) changed |= propagate_chain(c);
    for (const auto& l : linear_) changed |= apply_linear(l);
    for (const auto& s : splits_) changed |= apply_split(s);
    for (const auto& c : chis_) changed |= apply_chi(c);
    for (const auto& r : incidence_) changed |= apply_incidence(r);
    for (const auto& m : mirrors_) changed |= apply_mirror(m);
    return changed;
}

void Ledger::propagate() {
    if (!dirty_) return;
    int guard = 0;
    while (pass()) {
        if (++guard > 10000) throw LedgerError("propagation failed to settle");
    }
    dirty_ = false;
}

Interval Ledger::dims(const SheafExpr& e, int deg) {
    register_sheaf(e);
    propagate();
    return facts_[fid(e, deg)].iv;
}

const Fact& Ledger::fact(const SheafExpr& e, int deg) {
    register_sheaf(e);
    propagate();
    return facts_[fid(e, deg)];
}

std::string Ledger::explain(const SheafExpr& e, int deg) {
    const Fact& f = fact(e, deg);
    FactId id = fid(e, deg);
    std::ostringstream os;
    os << id.to_string() << " = " << f.iv.to_string() << "\n";
    os << "  lower bound " << f.iv.lo << ": " << f.lo_cert.rule;
    if (!f.lo_cert.detail.empty()) os << " -- " << f.lo_cert.detail;
    os << "\n";
    if (f.iv.hi) {
        os << "  upper bound " << *f.iv.hi << ": " << f.hi_cert.rule;
        if (!f.hi_cert.detail.empty()) os << " -- " << f.hi_cert.detail;
        os << "\n";
    } else {
        os << "  no upper bound derived\n";
    }
    return os.str();
}

Interval Ledger::chain_map_rank(const std::string& chain_name, int from) {
    propagate();
    auto it = chain_index_.find(chain_name);
    if (it == chain_index_.end()) throw LedgerError("no sequence named " + chain_name);
    const Chain& c = chains_[it->second];
    if (from < 0 || from + 1 >= static_cast<int>(c.ranks.size()))
        throw LedgerError("map position out of range in " + chain_name);
    return c.ranks[static_cast<std::size_t>(from) + 1];
}

std::optional<std::string> Ledger::find_chain(const SheafExpr& sub, const SheafExpr& mid,
                                              const SheafExpr& quot) const {
    std::vector<std::string> keys{sub.key(), mid.key(), quot.key()};
    for (const auto& c : chains_)
        if (c.entry_keys == keys) return c.name;
    return std::nullopt;
}

bool Ledger::replay_consistent() {
    Ledger fresh(geom_, surface_ == geom_ ? nullptr : surface_);
    fresh.replaying_ = true;
    for (const auto& op : log_) {
        switch (op.kind) {
            case Op::Sheaf: fresh.register_sheaf(op.exprs[0]); break;
            case Op::Axiom: fresh.axiom(op.exprs[0], op.deg, op.iv, op.note); break;
            case Op::Ses:
                fresh.register_ses(op.name, op.exprs[0], op.exprs[1], op.exprs[2], op.note);
                break;
            case Op::Points: fresh.declare_points(op.name, op.decl); break;
            case Op::Carrier: fresh.declare_section_carrier(op.name, op.exprs[0]); break;
        }
    }
    propagate();
    fresh.propagate();
    if (fresh.facts_.size() != facts_.size()) return false;
    for (const auto& [id, f] : facts_) {
        auto it = fresh.facts_.find(id);
        if (it == fresh.facts_.end() || !(it->second.iv == f.iv)) return false;
    }
    for (const auto& c : chains_) {
        auto it = fresh.chain_index_.find(c.name);
        if (it == fresh.chain_index_.end()) return false;
        const Chain& fc = fresh.chains_[it->second];
        for (std::size_t i = 0; i < c.ranks.size(); ++i)
            if (!(c.ranks[i] == fc.ranks[i])) return false;
    }
    return true;
}

}  // namespace cyv
