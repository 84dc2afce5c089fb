#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyverify/rational.hpp"

namespace cyv {

// The ambient spaces form a fixed menagerie: two surfaces, their elliptic
// threefolds, and one auxiliary covering surface used by fixtures.
enum class GeomId { S1, S2, X1, X2, K3Cover };

std::string geom_name(GeomId id);

// Flat line bundles are tracked separately from rational classes.  Which
// group they form depends on the space.
enum class TorsionKind {
    None,      // simply connected surface
    FreeChar,  // characters pulled up from the elliptic factor, symbolic
    Z2Cube     // (Z/2)^3 generated by alpha, beta, gamma
};

// A cohomology ring presented by finite bases in each even degree with an
// explicit multiplication table.  Entries are exact rationals.  The top
// degree has a single basis element normalised to integrate to 1.
class Geometry {
  public:
    GeomId id;
    int dim = 2;  // complex dimension
    // basis[d] lists the labels in (real) degree 2..2*dim; degree 0 is implicit.
    std::map<int, std::vector<std::string>> basis;
    // mul[{da, ia, db, ib}] = coefficients in degree da+db (empty vector == 0).
    std::map<std::tuple<int, int, int, int>, std::vector<Rat>> mul_table;

    Rat chi_O;                       // Euler characteristic of the trivial bundle
    std::vector<Rat> c2_tangent;     // degree-4 coefficients
    std::vector<std::string> nef;    // labels of degree-2 classes known to be nef
    // threefolds fibre over a surface in elliptic curves; this degree-2 class
    // meets each fibre once (empty on surfaces)
    std::string fibre_label;
    TorsionKind torsion = TorsionKind::None;
    bool canonical_is_gamma = false;  // true only for the Enriques surface
    std::string pi1;                  // fundamental group, human readable
    std::string h1;                   // first integral homology, human readable

    int basis_size(int deg) const;
    int find_label(int deg, const std::string& label) const;  // -1 if absent
    const std::vector<Rat>* lookup_mul(int da, int ia, int db, int ib) const;
};

using GeomPtr = std::shared_ptr<const Geometry>;

// Element of the even cohomology ring with rational coefficients.
class GradedClass {
  public:
    GradedClass() = default;
    explicit GradedClass(GeomPtr g) : geom_(std::move(g)) {}

    static GradedClass scalar(GeomPtr g, const Rat& r);
    static GradedClass basis_element(GeomPtr g, int deg, const std::string& label);

    const GeomPtr& geom() const { return geom_; }
    Rat coeff(int deg, int idx) const;
    Rat coeff(int deg, const std::string& label) const;
    void set_coeff(int deg, int idx, const Rat& v);
    void add_coeff(int deg, int idx, const Rat& v);

    bool is_zero() const;
    bool zero_in_degree(int deg) const;
    GradedClass part(int deg) const;  // projection to one degree

    GradedClass operator+(const GradedClass& o) const;
    GradedClass operator-(const GradedClass& o) const;
    GradedClass operator*(const Rat& r) const;
    GradedClass operator*(const GradedClass& o) const;  // ring product
    GradedClass& operator+=(const GradedClass& o);
    bool operator==(const GradedClass& o) const;

    // Coefficient of the top-degree basis element; lower-degree parts do not
    // contribute.
    Rat integrate() const;

    std::string to_string() const;

  private:
    GeomPtr geom_;
    std::map<int, std::vector<Rat>> coeffs_;
    void ensure(int deg);
    friend GradedClass mul_impl(const GradedClass&, const GradedClass&);
};

GradedClass pow(const GradedClass& c, int n);

// degree of a divisor class against a polarisation: D . Omega^(dim-1).
Rat pairing_degree(const GradedClass& divisor, const GradedClass& polarization);

// Geometry builders.  All tables were cross-checked against independent
// computations frozen in the test suite.
GeomPtr make_S1();
// The Enriques sublattice carries <w1, w2>; when with_sphere is set a third
// generator C with C.C = -2 is adjoined, with configurable pairings.
GeomPtr make_S2(bool with_sphere = false, Rat c_dot_w1 = Rat(0), Rat c_dot_w2 = Rat(1));
GeomPtr make_X1();
GeomPtr make_X2(bool with_sphere = false, Rat c_dot_w1 = Rat(0), Rat c_dot_w2 = Rat(1));
GeomPtr make_K3_cover();  // double cover of P1 x P1, used as a consistency fixture

// Plain-text fixture round trip for the intersection tables.
std::string serialize_geometry(const Geometry& g);
GeomPtr parse_geometry(const std::string& text);

}  // namespace cyv
