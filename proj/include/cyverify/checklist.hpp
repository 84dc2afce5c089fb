#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyverify/ledger.hpp"
#include "cyverify/stability.hpp"

namespace cyv {

enum class CheckStatus { Pass, Fail, Open, Discrepancy, Info };
const char* status_name(CheckStatus s);

struct CheckResult {
    std::string id;
    CheckStatus status = CheckStatus::Open;
    std::string summary;
    std::vector<std::string> detail;
};

struct ChecklistReport {
    std::string title;
    std::vector<CheckResult> results;
    bool has(CheckStatus s) const;
    // 0 all pass/info, 1 any fail, 2 anything open (discrepancies escalate to
    // failures when the flag is set, otherwise count as open)
    int exit_code(bool discrepancy_fails) const;
    std::string to_string() const;
};

// Declared eigenvalue multiplicities of the two flat characters in the direct
// image of a fibre twist (quotient threefold only).
struct FibreSplit {
    long long plain = 0;
    long long twisted = 0;
};

// Certification of a triple product landing in the top cohomology of the
// trivial bundle.  The two factors cup through their wedge component and the
// contraction against its dual closes the product; the fibration distributes
// every class over base-surface pieces, and the verdict follows from the
// surviving distributions and the base-level section and duality facts.
struct PairingVerdict {
    enum class Status { Nonzero, Zero, Open };
    Status status = Status::Open;
    std::vector<std::string> routes;  // surviving surface-level recipes
    std::vector<std::string> axioms;
    std::vector<std::string> detail;
};
PairingVerdict certify_triple_coupling(Ledger& led, const GeomPtr& x, const GeomPtr& s,
                                       const SheafExpr& first, const SheafExpr& second,
                                       const std::map<std::string, FibreSplit>& splits);

// Exact degree-four bookkeeping for the complementary bundle demanded by the
// background consistency condition.
struct AnomalyNumbers {
    GradedClass c2x, c2sum, target;
    std::vector<std::pair<std::string, Rat>> nef_pairings;           // derived class
    std::vector<std::pair<std::string, Rat>> declared_nef_pairings;  // declared class
    std::map<std::string, Rat> twist;  // balancing twist found by the sweep
    Rat pure_coeff;                    // fibre-class coefficient of target + twist^2
    bool pure = false;
    std::map<std::string, Rat> rank3_twist;
    Rat rank3_coeff;
    bool rank3_pure = false;
    Rat positivity;           // target . polarization
    Rat declared_positivity;  // declared target . polarization (if declared)
    bool declared_matches = true;
    std::vector<std::string> notes;
};
AnomalyNumbers anomaly_numbers(const GeomPtr& x, const SheafExpr& E, const GradedClass& omega,
                               const std::optional<GradedClass>& declared_c2);

struct DeclaredDim {
    SheafExpr e;
    int deg = 0;
    long long value = 0;
    std::string label;
};

struct ThreefoldStudy {
    GeomPtr x, s;
    std::vector<SheafExpr> summands;           // rank-two pieces over the threefold
    std::map<std::string, PointDecl> points;   // named point configurations
    GradedClass omega;                         // threefold polarization
    GradedClass base_pol;                      // base polarization for the summand scans
    long long box_radius = 10;
    long long generations = 3;
    std::map<std::string, FibreSplit> splits;  // by summand key
    std::optional<GradedClass> declared_c2;    // stated class of the sum
    std::optional<Rat> declared_pure;          // stated coefficient after the balancing twist
    std::optional<Rat> declared_rank3;
    std::vector<DeclaredDim> declared_dims;  // stated counts to compare
    bool check_deformations = false;
    std::optional<std::string> partner_certificate;  // set when a search run settles it
};

// the nine-condition verification of an assembled threefold bundle
ChecklistReport run_threefold_checklist(const ThreefoldStudy& st);

// scene-level helpers for the surface studies
CheckResult check_dim(Ledger& led, const std::string& id, const SheafExpr& e, int deg,
                      const Interval& want);
CheckResult check_map_rank(Ledger& led, const std::string& id, const SheafExpr& sub,
                           const SheafExpr& mid, const SheafExpr& quot, int position,
                           const Interval& want, const std::string& meaning);
// The moving-zero argument: a two-dimensional section space whose members all
// meet the rigid sphere forces every composite against the second bundle to
// vanish somewhere, so no member of the pencil splits it off.
CheckResult check_pencil(Ledger& led, const std::string& id, const SheafExpr& pencil,
                         const SheafExpr& other, const SheafExpr& carrier);

}  // namespace cyv
