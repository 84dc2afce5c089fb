#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyverify/sheaf.hpp"

namespace cyv {

// Closed integer interval with an optional upper end; dimensions start life as
// [0, unbounded] and only ever shrink.
struct Interval {
    long long lo = 0;
    std::optional<long long> hi{};

    static Interval exact(long long v) { return {v, v}; }
    static Interval range(long long a, long long b) { return {a, b}; }
    static Interval unknown() { return {0, std::nullopt}; }
    bool is_exact() const { return hi && *hi == lo; }
    bool contains(long long v) const { return v >= lo && (!hi || v <= *hi); }
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
    std::string to_string() const;
};

struct FactId {
    std::string key;  // geometry-qualified sheaf key
    int deg = 0;
    bool operator<(const FactId& o) const {
        return key != o.key ? key < o.key : deg < o.deg;
    }
    bool operator==(const FactId& o) const { return key == o.key && deg == o.deg; }
    std::string to_string() const { return "h^" + std::to_string(deg) + "(" + key + ")"; }
};

// Why a bound holds.  Bounds carry the name of the narrowing rule and a short
// human-readable justification; chains are named so map ranks can be cited.
struct Cert {
    std::string rule;
    std::string detail;
};

struct Fact {
    Interval iv = Interval::unknown();
    Cert lo_cert{"default", "dimensions are nonnegative"};
    Cert hi_cert{"none", ""};
};

class LedgerError : public std::runtime_error {
  public:
    explicit LedgerError(const std::string& m) : std::runtime_error(m) {}
};

// Declared data about a named finite point configuration.
struct PointDecl {
    int size = 0;
    std::set<std::string> inside;      // declared supersets
    std::set<std::string> not_inside;  // declared non-containments
    std::string on_divisor_of;         // name of a section carrier whose divisor holds the points
};

// Interval store for sheaf cohomology dimensions.  Facts are narrowed to a
// least fixpoint by structural rules: long exact sequences with shared map
// ranks, duality mirrors, characteristic completion, degree vanishing,
// incidence of point sets, and fibration bookkeeping on the threefolds.
// Registration cascades: a bundle drags in its defining sequences, their
// members, duality partners, and base-surface reductions.
class Ledger {
  public:
    explicit Ledger(GeomPtr g, GeomPtr base_surface = nullptr);

    const GeomPtr& geom() const { return geom_; }
    const GeomPtr& surface() const { return surface_; }

    void declare_points(const std::string& name, const PointDecl& d);
    void declare_section_carrier(const std::string& name, const SheafExpr& m);

    std::string register_sheaf(const SheafExpr& e);
    void axiom(const SheafExpr& e, int deg, Interval iv, const std::string& note);
    void axiom_acyclic(const SheafExpr& e, const std::string& note);
    std::string register_ses(const std::string& name, const SheafExpr& sub,
                             const SheafExpr& mid, const SheafExpr& quot,
                             const std::string& note);

    void propagate();  // narrow to fixpoint; throws LedgerError on conflict

    Interval dims(const SheafExpr& e, int deg);
    const Fact& fact(const SheafExpr& e, int deg);
    std::string explain(const SheafExpr& e, int deg);

    // rank of the arrow leaving entry position `from` of a named sequence
    // (positions count H^0 of the subobject as 0)
    Interval chain_map_rank(const std::string& chain_name, int from);
    std::optional<std::string> find_chain(const SheafExpr& sub, const SheafExpr& mid,
                                          const SheafExpr& quot) const;

    std::size_t fact_count() const { return facts_.size(); }
    const std::map<FactId, Fact>& facts() const { return facts_; }

    // re-derives everything from the recorded axioms and declarations and
    // checks the fixpoint agrees
    bool replay_consistent();

    std::string qualified_key(const SheafExpr& e) const;

  private:
    struct Chain {
        std::string name;
        std::string note;
        std::vector<FactId> entries;
        std::vector<std::string> entry_keys;  // unqualified, for find_chain
        std::vector<Interval> ranks;          // ranks[i] = rank of arrow into entry i
    };
    struct LinearLink {  // target = sum of coeff * fact
        FactId target;
        std::vector<std::pair<long long, FactId>> terms;
        std::string rule, detail;
    };
    struct SplitLink {  // target = sum of `mult` picks from {a, b}
        FactId target;
        long long mult = 1;
        FactId a, b;
        std::string rule, detail;
    };
    struct ChiConstraint {
        std::vector<FactId> dims;  // degree 0..dim
        long long chi = 0;
    };
    struct IncidenceRule {
        FactId target;
        std::string carrier_key;  // qualified key of the section carrier
        std::string z_set;        // points imposed on the carrier's sections
        std::string zp_set;       // defining points of the carrier ("" for plain divisors)
    };
    struct Op {  // replay log
        enum Kind { Sheaf, Axiom, Ses, Points, Carrier } kind;
        std::vector<SheafExpr> exprs;
        std::string name, note;
        int deg = 0;
        Interval iv;
        PointDecl decl;
    };

    GeomPtr geom_, surface_;
    std::map<std::string, SheafExpr> exprs_;  // by qualified key
    std::map<FactId, Fact> facts_;
    std::vector<Chain> chains_;
    std::map<std::string, std::size_t> chain_index_;
    std::vector<LinearLink> linear_;
    std::vector<SplitLink> splits_;
    std::vector<ChiConstraint> chis_;
    std::vector<IncidenceRule> incidence_;
    std::vector<std::pair<FactId, FactId>> mirrors_;  // duality identifications
    std::map<std::string, PointDecl> points_;
    std::map<std::string, std::string> carriers_;  // name -> qualified key
    std::vector<Op> log_;
    bool dirty_ = true;
    bool replaying_ = false;

    const GeomPtr& geom_of(const SheafExpr& e) const;
    FactId fid(const SheafExpr& e, int deg) const;
    Fact& fact_ref(const FactId& f);
    bool narrow(const FactId& f, Interval by, const Cert& cert);
    bool narrow_rank(Chain& c, std::size_t i, Interval by);
    void do_register(const SheafExpr& e, std::vector<SheafExpr>& queue);
    void add_chain(const std::string& name, const std::string& note,
                   const std::vector<SheafExpr>& parts, std::vector<SheafExpr>& queue);
    void apply_degree_vanishing(const SheafExpr& e, const NormalTerm& t);
    bool pass();
    bool propagate_chain(Chain& c);
    bool apply_linear(const LinearLink& l);
    bool apply_split(const SplitLink& s);
    bool apply_chi(const ChiConstraint& c);
    bool apply_incidence(const IncidenceRule& r);
    bool apply_mirror(const std::pair<FactId, FactId>& m);
};

}  // namespace cyv
