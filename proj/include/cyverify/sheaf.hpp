#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyverify/gradedclass.hpp"
#include "cyverify/rational.hpp"

namespace cyv {

// Flat twist data.  z2 holds the three order-two characters available on the
// quotient spaces (bits: 1 = a, 2 = b, 4 = g, where g is the one pulled back
// from the base surface); chars holds symbolic characters of the torus factor
// of the product threefold.  Both kinds are trivial on Chern data.
struct Torsion {
    int z2 = 0;
    std::map<std::string, int> chars;

    bool is_trivial() const;
    Torsion inverse() const;
    Torsion compose(const Torsion& o) const;
    bool fibre_trivial() const;  // restricts trivially to a torus fibre
    int gamma_exponent() const { return (z2 & 4) ? 1 : 0; }
    std::string key() const;
    bool operator==(const Torsion& o) const { return z2 == o.z2 && chars == o.chars; }
    bool operator<(const Torsion& o) const;
};

Torsion gamma_char();
Torsion z2_char(int bits);
Torsion free_char(const std::string& name, int exp = 1);

// Rank-two bundle presented as an extension of a twisted ideal sheaf by the
// structure sheaf: 0 -> O -> V -> det (x) I_Z -> 0.  Its second Chern class
// is the length of Z times the point class.
struct Atom {
    std::string set;                 // name of the point configuration Z
    int points = 0;                  // its length
    std::map<std::string, Rat> det;  // degree-2 coefficients of the determinant
    Torsion det_tor;

    std::string key() const;
    bool operator==(const Atom& o) const;
    bool operator<(const Atom& o) const;
};

// One indecomposable-looking tensor factor combination.  Normal form: the dual
// of a rank-two piece is rewritten as the piece twisted by its inverse
// determinant, so duals never appear explicitly.  A term is either a twisted
// bundle (with an optional ideal-sheaf factor) or a skyscraper.
struct NormalTerm {
    bool is_sky = false;
    std::string sky_set;
    int sky_length = 0;

    std::vector<Atom> atoms;         // sorted, at most two
    std::map<std::string, Rat> line; // degree-2 coefficients of the line factor
    Torsion tor;
    std::string ideal_set;           // nonempty: tensored with the ideal sheaf of that set
    int ideal_points = 0;

    int rank() const;
    bool locally_free() const { return !is_sky && ideal_set.empty(); }
    std::string key() const;
    bool operator<(const NormalTerm& o) const { return key() < o.key(); }
};

// Finite formal direct sum of normal terms over a fixed geometry.  All the
// Chern-level arithmetic is exact.
class SheafExpr {
  public:
    SheafExpr() = default;
    explicit SheafExpr(GeomPtr g) : geom_(std::move(g)) {}

    static SheafExpr structure(GeomPtr g);
    static SheafExpr line(GeomPtr g, const std::map<std::string, Rat>& c1, Torsion t = {});
    static SheafExpr atom_bundle(GeomPtr g, Atom a);
    static SheafExpr ideal(GeomPtr g, const std::string& set, int pts);
    static SheafExpr skyscraper(GeomPtr g, const std::string& set, int length);

    const GeomPtr& geom() const { return geom_; }
    const std::vector<NormalTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    SheafExpr tensor(const SheafExpr& o) const;
    SheafExpr direct_sum(const SheafExpr& o) const;
    SheafExpr dual() const;  // requires every term locally free
    SheafExpr twist(const std::map<std::string, Rat>& c1, Torsion t = {}) const;
    SheafExpr tensor_ideal(const std::string& set, int pts) const;
    // transport to a space whose ring contains the same labels
    SheafExpr pull_to(GeomPtr target) const;

    bool locally_free() const;
    int rank() const;
    std::string key() const;
    bool operator==(const SheafExpr& o) const { return key() == o.key(); }

    GradedClass chern_character() const;
    GradedClass total_chern() const;
    GradedClass c1() const;
    GradedClass c2() const;
    Rat chi() const;  // Riemann-Roch against the Todd class

    std::string to_string() const { return key(); }

  private:
    GeomPtr geom_;
    std::vector<NormalTerm> terms_;
    void push_term(NormalTerm t);
    void normalize();
};

GradedClass line_class(const GeomPtr& g, const std::map<std::string, Rat>& coeffs);
GradedClass todd_class(const GeomPtr& g);

// splits an expression term over a threefold into its base-surface content,
// the fibre-direction twist, and the flat character
struct FibreDecomp {
    SheafExpr surface;  // over the base surface geometry
    long long n = 0;    // coefficient of the fibre-meeting divisor
    Torsion tor;
};
std::optional<FibreDecomp> fibre_decompose(const NormalTerm& t, const GeomPtr& threefold,
                                           const GeomPtr& surface);

// Named environment for the textual expression syntax:
//   o(-1,1)  oT(3)  gamma  char(a)  dual(E)  pull(A)  serre2(det=..., pts=ZA)
//   ideal(ZA)  sky(ZA,2)  products with '*', sums with '+', parentheses.
struct ExprContext {
    GeomPtr geom;                             // target of the parse
    GeomPtr surface;                          // base surface for pull(...)
    std::map<std::string, SheafExpr> named;   // declared bundles and lines
    std::map<std::string, int> point_sets;    // declared point configurations
};

SheafExpr parse_sheaf_expr(const ExprContext& ctx, const std::string& text);

}  // namespace cyv
