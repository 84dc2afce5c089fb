#include "cyverify/gradedclass.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cyv {

std::string geom_name(GeomId id) {
    switch (id) {
        case GeomId::S1: return "S1";
        case GeomId::S2: return "S2";
        case GeomId::X1: return "X1";
        case GeomId::X2: return "X2";
        case GeomId::K3Cover: return "K3Cover";
    }
    return "?";
}

int Geometry::basis_size(int deg) const {
    if (deg == 0) return 1;
    auto it = basis.find(deg);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

int Geometry::find_label(int deg, const std::string& label) const {
    auto it = basis.find(deg);
    if (it == basis.end()) return -1;
    for (std::size_t i = 0; i < it->second.size(); ++i)
        if (it->second[i] == label) return static_cast<int>(i);
    return -1;
}

const std::vector<Rat>* Geometry::lookup_mul(int da, int ia, int db, int ib) const {
    auto it = mul_table.find({da, ia, db, ib});
    return it == mul_table.end() ? nullptr : &it->second;
}

GradedClass GradedClass::scalar(GeomPtr g, const Rat& r) {
    GradedClass c(std::move(g));
    if (r != Rat(0)) c.set_coeff(0, 0, r);
    return c;
}

GradedClass GradedClass::basis_element(GeomPtr g, int deg, const std::string& label) {
    int idx = g->find_label(deg, label);
    if (idx < 0) throw std::invalid_argument("no basis element '" + label + "' in degree " +
                                             std::to_string(deg) + " on " + geom_name(g->id));
    GradedClass c(std::move(g));
    c.set_coeff(deg, idx, Rat(1));
    return c;
}

void GradedClass::ensure(int deg) {
    if (coeffs_.count(deg)) return;
    coeffs_[deg] = std::vector<Rat>(static_cast<std::size_t>(geom_->basis_size(deg)), Rat(0));
}

Rat GradedClass::coeff(int deg, int idx) const {
    auto it = coeffs_.find(deg);
    if (it == coeffs_.end()) return Rat(0);
    if (idx < 0 || idx >= static_cast<int>(it->second.size())) return Rat(0);
    return it->second[static_cast<std::size_t>(idx)];
}

Rat GradedClass::coeff(int deg, const std::string& label) const {
    return coeff(deg, geom_->find_label(deg, label));
}

void GradedClass::set_coeff(int deg, int idx, const Rat& v) {
    ensure(deg);
    coeffs_[deg].at(static_cast<std::size_t>(idx)) = v;
}

void GradedClass::add_coeff(int deg, int idx, const Rat& v) {
    ensure(deg);
    coeffs_[deg].at(static_cast<std::size_t>(idx)) += v;
}

bool GradedClass::is_zero() const {
    for (const auto& [deg, v] : coeffs_)
        for (const auto& r : v)
            if (r != Rat(0)) return false;
    return true;
}

bool GradedClass::zero_in_degree(int deg) const {
    auto it = coeffs_.find(deg);
    if (it == coeffs_.end()) return true;
    for (const auto& r : it->second)
        if (r != Rat(0)) return false;
    return true;
}

GradedClass GradedClass::part(int deg) const {
    GradedClass out(geom_);
    auto it = coeffs_.find(deg);
    if (it != coeffs_.end()) out.coeffs_[deg] = it->second;
    return out;
}

GradedClass GradedClass::operator+(const GradedClass& o) const {
    GradedClass out = *this;
    out += o;
    return out;
}

GradedClass& GradedClass::operator+=(const GradedClass& o) {
    if (!geom_) geom_ = o.geom_;
    for (const auto& [deg, v] : o.coeffs_) {
        ensure(deg);
        for (std::size_t i = 0; i < v.size(); ++i) coeffs_[deg][i] += v[i];
    }
    return *this;
}

GradedClass GradedClass::operator-(const GradedClass& o) const {
    return *this + o * Rat(-1);
}

GradedClass GradedClass::operator*(const Rat& r) const {
    GradedClass out = *this;
    for (auto& [deg, v] : out.coeffs_)
        for (auto& c : v) c *= r;
    return out;
}

GradedClass GradedClass::operator*(const GradedClass& o) const {
    const Geometry& g = *geom_;
    GradedClass out(geom_);
    int top = 2 * g.dim;
    for (const auto& [da, va] : coeffs_) {
        for (const auto& [db, vb] : o.coeffs_) {
            if (da + db > top) continue;
            for (std::size_t ia = 0; ia < va.size(); ++ia) {
                if (va[ia] == Rat(0)) continue;
                for (std::size_t ib = 0; ib < vb.size(); ++ib) {
                    if (vb[ib] == Rat(0)) continue;
                    Rat f = va[ia] * vb[ib];
                    if (da == 0) {
                        out.add_coeff(db, static_cast<int>(ib), f);
                    } else if (db == 0) {
                        out.add_coeff(da, static_cast<int>(ia), f);
                    } else {
                        const auto* row = g.lookup_mul(da, static_cast<int>(ia), db,
                                                       static_cast<int>(ib));
                        if (!row) continue;
                        for (std::size_t k = 0; k < row->size(); ++k)
                            if ((*row)[k] != Rat(0))
                                out.add_coeff(da + db, static_cast<int>(k), f * (*row)[k]);
                    }
                }
            }
        }
    }
    return out;
}

bool GradedClass::operator==(const GradedClass& o) const {
    return (*this - o).is_zero();
}

Rat GradedClass::integrate() const {
    return coeff(2 * geom_->dim, 0);
}

std::string GradedClass::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [deg, v] : coeffs_) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == Rat(0)) continue;
            Rat c = v[i];
            if (first) {
                if (c < Rat(0)) { os << "-"; c = -c; }
            } else {
                os << (c < Rat(0) ? " - " : " + ");
                if (c < Rat(0)) c = -c;
            }
            std::string label = deg == 0 ? "" : geom_->basis.at(deg)[i];
            if (c != Rat(1) || label.empty()) {
                os << cyv::to_string(c);
                if (!label.empty()) os << " ";
            }
            os << label;
            first = false;
        }
    }
    if (first) return "0";
    return os.str();
}

GradedClass pow(const GradedClass& c, int n) {
    GradedClass out = GradedClass::scalar(c.geom(), Rat(1));
    for (int i = 0; i < n; ++i) out = out * c;
    return out;
}

Rat pairing_degree(const GradedClass& divisor, const GradedClass& polarization) {
    const int d = divisor.geom()->dim;
    return (divisor * pow(polarization, d - 1)).integrate();
}

namespace {

// Builder helper: registers a symmetric product entry.
void set_mul(Geometry& g, int da, const std::string& a, int db, const std::string& b,
             const std::vector<std::pair<Rat, std::string>>& value) {
    int ia = g.find_label(da, a), ib = g.find_label(db, b);
    if (ia < 0 || ib < 0) throw std::logic_error("set_mul: unknown label");
    std::vector<Rat> row(static_cast<std::size_t>(g.basis_size(da + db)), Rat(0));
    for (const auto& [c, lbl] : value) {
        int k = g.find_label(da + db, lbl);
        if (k < 0) throw std::logic_error("set_mul: unknown target label " + lbl);
        row[static_cast<std::size_t>(k)] += c;
    }
    g.mul_table[{da, ia, db, ib}] = row;
    g.mul_table[{db, ib, da, ia}] = row;
}

// Any pair not explicitly registered would trip an assert in tests, so the
// builders fill every product of positive-degree basis elements.
void fill_zero_products(Geometry& g) {
    for (const auto& [da, ba] : g.basis) {
        for (const auto& [db, bb] : g.basis) {
            if (da + db > 2 * g.dim) continue;
            for (int ia = 0; ia < static_cast<int>(ba.size()); ++ia)
                for (int ib = 0; ib < static_cast<int>(bb.size()); ++ib)
                    if (!g.mul_table.count({da, ia, db, ib}))
                        g.mul_table[{da, ia, db, ib}] =
                            std::vector<Rat>(static_cast<std::size_t>(g.basis_size(da + db)),
                                             Rat(0));
        }
    }
}

std::vector<Rat> deg4_coeffs(const Geometry& g, const std::vector<std::pair<Rat, std::string>>& v) {
    std::vector<Rat> row(static_cast<std::size_t>(g.basis_size(4)), Rat(0));
    for (const auto& [c, lbl] : v) {
        int k = g.find_label(4, lbl);
        if (k < 0) throw std::logic_error("bad c2 label " + lbl);
        row[static_cast<std::size_t>(k)] += c;
    }
    return row;
}

}  // namespace

GeomPtr make_S1() {
    auto g = std::make_shared<Geometry>();
    g->id = GeomId::S1;
    g->dim = 2;
    g->basis[2] = {"w1", "w2"};
    g->basis[4] = {"pt"};
    set_mul(*g, 2, "w1", 2, "w1", {});
    set_mul(*g, 2, "w1", 2, "w2", {{Rat(3), "pt"}});
    set_mul(*g, 2, "w2", 2, "w2", {{Rat(2), "pt"}});
    fill_zero_products(*g);
    g->chi_O = Rat(2);
    g->c2_tangent = deg4_coeffs(*g, {{Rat(24), "pt"}});
    g->nef = {"w1", "w2"};
    g->torsion = TorsionKind::None;
    g->canonical_is_gamma = false;
    g->pi1 = "1";
    g->h1 = "0";
    return g;
}

GeomPtr make_S2(bool with_sphere, Rat c_dot_w1, Rat c_dot_w2) {
    auto g = std::make_shared<Geometry>();
    g->id = GeomId::S2;
    g->dim = 2;
    g->basis[2] = {"w1", "w2"};
    if (with_sphere) g->basis[2].push_back("C");
    g->basis[4] = {"pt"};
    set_mul(*g, 2, "w1", 2, "w1", {});
    set_mul(*g, 2, "w2", 2, "w2", {});
    set_mul(*g, 2, "w1", 2, "w2", {{Rat(1), "pt"}});
    if (with_sphere) {
        set_mul(*g, 2, "C", 2, "C", {{Rat(-2), "pt"}});
        set_mul(*g, 2, "C", 2, "w1", {{c_dot_w1, "pt"}});
        set_mul(*g, 2, "C", 2, "w2", {{c_dot_w2, "pt"}});
    }
    fill_zero_products(*g);
    g->chi_O = Rat(1);
    g->c2_tangent = deg4_coeffs(*g, {{Rat(12), "pt"}});
    g->nef = {"w1", "w2"};
    g->torsion = TorsionKind::Z2Cube;
    g->canonical_is_gamma = true;
    g->pi1 = "Z/2";
    g->h1 = "Z/2";
    return g;
}

GeomPtr make_X1() {
    auto g = std::make_shared<Geometry>();
    g->id = GeomId::X1;
    g->dim = 3;
    g->basis[2] = {"w1", "w2", "wT"};
    g->basis[4] = {"T", "wT.w1", "wT.w2"};
    g->basis[6] = {"pt"};
    // surface part multiplies through the S1 table, landing on the fibre class
    set_mul(*g, 2, "w1", 2, "w1", {});
    set_mul(*g, 2, "w1", 2, "w2", {{Rat(3), "T"}});
    set_mul(*g, 2, "w2", 2, "w2", {{Rat(2), "T"}});
    set_mul(*g, 2, "wT", 2, "wT", {});
    set_mul(*g, 2, "wT", 2, "w1", {{Rat(1), "wT.w1"}});
    set_mul(*g, 2, "wT", 2, "w2", {{Rat(1), "wT.w2"}});
    set_mul(*g, 2, "wT", 4, "T", {{Rat(1), "pt"}});
    set_mul(*g, 2, "w1", 4, "T", {});
    set_mul(*g, 2, "w2", 4, "T", {});
    set_mul(*g, 2, "w1", 4, "wT.w1", {});
    set_mul(*g, 2, "w2", 4, "wT.w1", {{Rat(3), "pt"}});
    set_mul(*g, 2, "w1", 4, "wT.w2", {{Rat(3), "pt"}});
    set_mul(*g, 2, "w2", 4, "wT.w2", {{Rat(2), "pt"}});
    set_mul(*g, 2, "wT", 4, "wT.w1", {});
    set_mul(*g, 2, "wT", 4, "wT.w2", {});
    fill_zero_products(*g);
    g->chi_O = Rat(0);
    g->c2_tangent = deg4_coeffs(*g, {{Rat(24), "T"}});
    g->nef = {"w1", "w2", "wT"};
    g->torsion = TorsionKind::FreeChar;
    g->canonical_is_gamma = false;
    g->fibre_label = "wT";
    g->pi1 = "Z^2";
    g->h1 = "Z^2";
    return g;
}

GeomPtr make_X2(bool with_sphere, Rat c_dot_w1, Rat c_dot_w2) {
    auto g = std::make_shared<Geometry>();
    g->id = GeomId::X2;
    g->dim = 3;
    g->basis[2] = {"w1", "w2"};
    if (with_sphere) g->basis[2].push_back("C");
    g->basis[2].push_back("S");
    g->basis[4] = {"T", "S.w1", "S.w2"};
    if (with_sphere) g->basis[4].push_back("S.C");
    g->basis[6] = {"pt"};

    auto surf = make_S2(with_sphere, c_dot_w1, c_dot_w2);
    const auto& labels = surf->basis.at(2);
    // pulled-back surface classes multiply through the base table onto the
    // fibre class; the section S squares to zero (its normal bundle is flat).
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i; j < labels.size(); ++j) {
            Rat v = surf->lookup_mul(2, static_cast<int>(i), 2, static_cast<int>(j))->at(0);
            set_mul(*g, 2, labels[i], 2, labels[j], v == Rat(0)
                        ? std::vector<std::pair<Rat, std::string>>{}
                        : std::vector<std::pair<Rat, std::string>>{{v, "T"}});
        }
        set_mul(*g, 2, "S", 2, labels[i], {{Rat(1), "S." + labels[i]}});
        set_mul(*g, 2, labels[i], 4, "T", {});
        for (std::size_t j = 0; j < labels.size(); ++j) {
            Rat v = surf->lookup_mul(2, static_cast<int>(i), 2, static_cast<int>(j))->at(0);
            set_mul(*g, 2, labels[i], 4, "S." + labels[j],
                    v == Rat(0) ? std::vector<std::pair<Rat, std::string>>{}
                                : std::vector<std::pair<Rat, std::string>>{{v, "pt"}});
        }
    }
    set_mul(*g, 2, "S", 2, "S", {});
    set_mul(*g, 2, "S", 4, "T", {{Rat(1), "pt"}});
    for (const auto& l : labels) set_mul(*g, 2, "S", 4, "S." + l, {});
    fill_zero_products(*g);

    g->chi_O = Rat(0);
    g->c2_tangent = deg4_coeffs(*g, {{Rat(12), "T"}});
    g->nef = {"w1", "w2", "S"};
    g->torsion = TorsionKind::Z2Cube;
    // the involution acts by -1 on both the holomorphic 2-form of the cover
    // and the 1-form of the fibre, so the 3-form descends
    g->canonical_is_gamma = false;
    g->fibre_label = "S";
    g->pi1 = "<a,b,g | ab=ba, gag^-1=a^-1, gbg^-1=b^-1, g^2=1>";
    g->h1 = "(Z/2)^3";
    return g;
}

GeomPtr make_K3_cover() {
    auto g = std::make_shared<Geometry>();
    g->id = GeomId::K3Cover;
    g->dim = 2;
    g->basis[2] = {"w1", "w2"};
    g->basis[4] = {"pt"};
    set_mul(*g, 2, "w1", 2, "w1", {});
    set_mul(*g, 2, "w2", 2, "w2", {});
    set_mul(*g, 2, "w1", 2, "w2", {{Rat(2), "pt"}});
    fill_zero_products(*g);
    g->chi_O = Rat(2);
    g->c2_tangent = deg4_coeffs(*g, {{Rat(24), "pt"}});
    g->nef = {"w1", "w2"};
    g->torsion = TorsionKind::None;
    g->pi1 = "1";
    g->h1 = "0";
    return g;
}

std::string serialize_geometry(const Geometry& g) {
    std::ostringstream os;
    os << "geometry " << geom_name(g.id) << "\n";
    os << "dim " << g.dim << "\n";
    os << "chiO " << to_string(g.chi_O) << "\n";
    os << "torsion "
       << (g.torsion == TorsionKind::None
               ? "none"
               : g.torsion == TorsionKind::FreeChar ? "freechar" : "z2cube")
       << "\n";
    os << "canonical " << (g.canonical_is_gamma ? "gamma" : "trivial") << "\n";
    if (!g.fibre_label.empty()) os << "fibre " << g.fibre_label << "\n";
    os << "pi1 " << g.pi1 << "\n";
    os << "h1 " << g.h1 << "\n";
    for (const auto& [deg, labels] : g.basis) {
        os << "basis " << deg;
        for (const auto& l : labels) os << " " << l;
        os << "\n";
    }
    os << "c2tangent";
    for (std::size_t i = 0; i < g.c2_tangent.size(); ++i)
        os << " " << to_string(g.c2_tangent[i]) << " " << g.basis.at(4)[i];
    os << "\n";
    os << "nef";
    for (const auto& n : g.nef) os << " " << n;
    os << "\n";
    for (const auto& [key, row] : g.mul_table) {
        auto [da, ia, db, ib] = key;
        if (std::tie(da, ia) > std::tie(db, ib)) continue;
        bool nonzero = false;
        for (const auto& r : row)
            if (r != Rat(0)) nonzero = true;
        if (!nonzero) continue;
        os << "mul " << da << " " << g.basis.at(da)[static_cast<std::size_t>(ia)] << " " << db
           << " " << g.basis.at(db)[static_cast<std::size_t>(ib)] << " =";
        for (std::size_t k = 0; k < row.size(); ++k)
            if (row[k] != Rat(0))
                os << " " << to_string(row[k]) << " " << g.basis.at(da + db)[k];
        os << "\n";
    }
    return os.str();
}

GeomPtr parse_geometry(const std::string& text) {
    auto g = std::make_shared<Geometry>();
    std::istringstream in(text);
    std::string line;
    std::vector<std::tuple<int, std::string, int, std::string, std::string>> muls;
    std::string c2line, nefline;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "geometry") {
            std::string name;
            ls >> name;
            if (name == "S1") g->id = GeomId::S1;
            else if (name == "S2") g->id = GeomId::S2;
            else if (name == "X1") g->id = GeomId::X1;
            else if (name == "X2") g->id = GeomId::X2;
            else if (name == "K3Cover") g->id = GeomId::K3Cover;
            else throw std::invalid_argument("unknown geometry name " + name);
        } else if (key == "dim") {
            ls >> g->dim;
        } else if (key == "chiO") {
            std::string v;
            ls >> v;
            g->chi_O = parse_rat(v);
        } else if (key == "torsion") {
            std::string v;
            ls >> v;
            g->torsion = v == "none" ? TorsionKind::None
                       : v == "freechar" ? TorsionKind::FreeChar
                                         : TorsionKind::Z2Cube;
        } else if (key == "canonical") {
            std::string v;
            ls >> v;
            g->canonical_is_gamma = (v == "gamma");
        } else if (key == "fibre") {
            ls >> g->fibre_label;
        } else if (key == "pi1") {
            std::getline(ls, g->pi1);
            if (!g->pi1.empty() && g->pi1[0] == ' ') g->pi1.erase(0, 1);
        } else if (key == "h1") {
            std::getline(ls, g->h1);
            if (!g->h1.empty() && g->h1[0] == ' ') g->h1.erase(0, 1);
        } else if (key == "basis") {
            int deg;
            ls >> deg;
            std::string lbl;
            while (ls >> lbl) g->basis[deg].push_back(lbl);
        } else if (key == "c2tangent") {
            std::getline(ls, c2line);
        } else if (key == "nef") {
            std::getline(ls, nefline);
        } else if (key == "mul") {
            int da, db;
            std::string a, b, eq, rest;
            ls >> da >> a >> db >> b >> eq;
            std::getline(ls, rest);
            muls.emplace_back(da, a, db, b, rest);
        } else {
            throw std::invalid_argument("unknown fixture key: " + key);
        }
    }
    auto parse_combo = [&](int deg, const std::string& s) {
        std::vector<std::pair<Rat, std::string>> out;
        std::istringstream cs(s);
        std::string coeff, lbl;
        while (cs >> coeff >> lbl) out.emplace_back(parse_rat(coeff), lbl);
        (void)deg;
        return out;
    };
    for (const auto& [da, a, db, b, rest] : muls) set_mul(*g, da, a, db, b, parse_combo(da + db, rest));
    fill_zero_products(*g);
    g->c2_tangent = deg4_coeffs(*g, parse_combo(4, c2line));
    {
        std::istringstream ns(nefline);
        std::string lbl;
        while (ns >> lbl) g->nef.push_back(lbl);
    }
    return g;
}

}  // namespace cyv
