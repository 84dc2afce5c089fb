#include "cyverify/sheaf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cyv {

namespace {

void erase_zeros(std::map<std::string, Rat>& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second == Rat(0) ? m.erase(it) : std::next(it);
}

void erase_zeros(std::map<std::string, int>& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second == 0 ? m.erase(it) : std::next(it);
}

std::string coeff_key(const std::map<std::string, Rat>& m) {
    std::string out;
    for (const auto& [k, v] : m) {
        if (v == Rat(0)) continue;
        if (!out.empty()) out += ";";
        out += k + ":" + to_string(v);
    }
    return out;
}

std::map<std::string, Rat> add_maps(const std::map<std::string, Rat>& a,
                                    const std::map<std::string, Rat>& b, Rat scale_b = Rat(1)) {
    auto out = a;
    for (const auto& [k, v] : b) out[k] += v * scale_b;
    erase_zeros(out);
    return out;
}

}  // namespace

bool Torsion::is_trivial() const {
    if (z2 != 0) return false;
    for (const auto& [k, v] : chars)
        if (v != 0) return false;
    return true;
}

Torsion Torsion::inverse() const {
    Torsion t = *this;  // the z2 part is its own inverse
    for (auto& [k, v] : t.chars) v = -v;
    erase_zeros(t.chars);
    return t;
}

Torsion Torsion::compose(const Torsion& o) const {
    Torsion t;
    t.z2 = z2 ^ o.z2;
    t.chars = chars;
    for (const auto& [k, v] : o.chars) t.chars[k] += v;
    erase_zeros(t.chars);
    return t;
}

bool Torsion::fibre_trivial() const {
    if (z2 & 3) return false;
    for (const auto& [k, v] : chars)
        if (v != 0) return false;
    return true;
}

std::string Torsion::key() const {
    std::string out;
    if (z2 & 1) out += "a";
    if (z2 & 2) out += (out.empty() ? "" : ".") + std::string("b");
    if (z2 & 4) out += (out.empty() ? "" : ".") + std::string("g");
    for (const auto& [k, v] : chars) {
        if (v == 0) continue;
        if (!out.empty()) out += ".";
        out += k + (v == 1 ? "" : "^" + std::to_string(v));
    }
    return out;
}

bool Torsion::operator<(const Torsion& o) const {
    if (z2 != o.z2) return z2 < o.z2;
    return chars < o.chars;
}

Torsion gamma_char() { return z2_char(4); }

Torsion z2_char(int bits) {
    Torsion t;
    t.z2 = bits & 7;
    return t;
}

Torsion free_char(const std::string& name, int exp) {
    Torsion t;
    if (exp != 0) t.chars[name] = exp;
    return t;
}

std::string Atom::key() const {
    std::string out = "V{Z=" + set + "(" + std::to_string(points) + "),det=" + coeff_key(det);
    if (!det_tor.is_trivial()) out += ",chi=" + det_tor.key();
    return out + "}";
}

bool Atom::operator==(const Atom& o) const {
    return set == o.set && points == o.points && det == o.det && det_tor == o.det_tor;
}

bool Atom::operator<(const Atom& o) const { return key() < o.key(); }

int NormalTerm::rank() const {
    if (is_sky) return 0;
    return 1 << atoms.size();
}

std::string NormalTerm::key() const {
    if (is_sky) return "Sky{" + sky_set + "," + std::to_string(sky_length) + "}";
    std::vector<std::string> parts;
    for (const auto& a : atoms) parts.push_back(a.key());
    std::string lk = coeff_key(line);
    if (!lk.empty()) parts.push_back("O{" + lk + "}");
    if (!tor.is_trivial()) parts.push_back("chi{" + tor.key() + "}");
    if (!ideal_set.empty())
        parts.push_back("I{" + ideal_set + "(" + std::to_string(ideal_points) + ")}");
    if (parts.empty()) return "O";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
}

void SheafExpr::push_term(NormalTerm t) {
    if (!t.is_sky) {
        erase_zeros(t.line);
        erase_zeros(t.tor.chars);
        for (auto& a : t.atoms) erase_zeros(a.det);
        std::sort(t.atoms.begin(), t.atoms.end());
        if (t.atoms.size() > 2)
            throw std::invalid_argument("tensor products beyond two rank-two factors are not supported");
    }
    terms_.push_back(std::move(t));
}

void SheafExpr::normalize() {
    std::sort(terms_.begin(), terms_.end());
}

SheafExpr SheafExpr::structure(GeomPtr g) {
    SheafExpr e(std::move(g));
    e.push_term(NormalTerm{});
    return e;
}

SheafExpr SheafExpr::line(GeomPtr g, const std::map<std::string, Rat>& c1, Torsion t) {
    for (const auto& [lbl, v] : c1)
        if (g->find_label(2, lbl) < 0)
            throw std::invalid_argument("unknown divisor label " + lbl + " on " + geom_name(g->id));
    SheafExpr e(g);
    NormalTerm term;
    term.line = c1;
    term.tor = std::move(t);
    e.push_term(std::move(term));
    return e;
}

SheafExpr SheafExpr::atom_bundle(GeomPtr g, Atom a) {
    for (const auto& [lbl, v] : a.det)
        if (g->find_label(2, lbl) < 0)
            throw std::invalid_argument("unknown divisor label " + lbl + " in determinant");
    SheafExpr e(std::move(g));
    NormalTerm term;
    term.atoms.push_back(std::move(a));
    e.push_term(std::move(term));
    return e;
}

SheafExpr SheafExpr::ideal(GeomPtr g, const std::string& set, int pts) {
    SheafExpr e(std::move(g));
    NormalTerm term;
    term.ideal_set = set;
    term.ideal_points = pts;
    e.push_term(std::move(term));
    return e;
}

SheafExpr SheafExpr::skyscraper(GeomPtr g, const std::string& set, int length) {
    SheafExpr e(std::move(g));
    NormalTerm term;
    term.is_sky = true;
    term.sky_set = set;
    term.sky_length = length;
    e.push_term(std::move(term));
    return e;
}

SheafExpr SheafExpr::tensor(const SheafExpr& o) const {
    SheafExpr out(geom_);
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            if (a.is_sky && b.is_sky)
                throw std::invalid_argument("product of two torsion sheaves is not supported");
            if (a.is_sky || b.is_sky) {
                const NormalTerm& sky = a.is_sky ? a : b;
                const NormalTerm& vb = a.is_sky ? b : a;
                if (!vb.ideal_set.empty())
                    throw std::invalid_argument("restriction of a non-locally-free term");
                NormalTerm t;
                t.is_sky = true;
                t.sky_set = sky.sky_set;
                t.sky_length = sky.sky_length * vb.rank();
                out.push_term(std::move(t));
                continue;
            }
            if (!a.ideal_set.empty() && !b.ideal_set.empty())
                throw std::invalid_argument("product of two ideal factors is not supported");
            NormalTerm t;
            t.atoms = a.atoms;
            t.atoms.insert(t.atoms.end(), b.atoms.begin(), b.atoms.end());
            t.line = add_maps(a.line, b.line);
            t.tor = a.tor.compose(b.tor);
            t.ideal_set = a.ideal_set.empty() ? b.ideal_set : a.ideal_set;
            t.ideal_points = a.ideal_set.empty() ? b.ideal_points : a.ideal_points;
            out.push_term(std::move(t));
        }
    }
    out.normalize();
    return out;
}

SheafExpr SheafExpr::direct_sum(const SheafExpr& o) const {
    SheafExpr out(geom_);
    out.terms_ = terms_;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    out.normalize();
    return out;
}

SheafExpr SheafExpr::dual() const {
    SheafExpr out(geom_);
    for (const auto& t : terms_) {
        if (!t.locally_free())
            throw std::domain_error("dual of a non-locally-free term: " + t.key());
        NormalTerm d;
        d.atoms = t.atoms;
        d.line = add_maps({}, t.line, Rat(-1));
        d.tor = t.tor.inverse();
        for (const auto& a : t.atoms) {
            d.line = add_maps(d.line, a.det, Rat(-1));
            d.tor = d.tor.compose(a.det_tor.inverse());
        }
        out.push_term(std::move(d));
    }
    out.normalize();
    return out;
}

SheafExpr SheafExpr::twist(const std::map<std::string, Rat>& c1, Torsion t) const {
    return tensor(line(geom_, c1, std::move(t)));
}

SheafExpr SheafExpr::tensor_ideal(const std::string& set, int pts) const {
    return tensor(ideal(geom_, set, pts));
}

SheafExpr SheafExpr::pull_to(GeomPtr target) const {
    SheafExpr out(target);
    for (const auto& t : terms_) {
        if (t.is_sky) throw std::invalid_argument("pullback of a torsion sheaf");
        for (const auto& [lbl, v] : t.line)
            if (target->find_label(2, lbl) < 0)
                throw std::invalid_argument("label " + lbl + " missing on " + geom_name(target->id));
        for (const auto& a : t.atoms)
            for (const auto& [lbl, v] : a.det)
                if (target->find_label(2, lbl) < 0)
                    throw std::invalid_argument("label " + lbl + " missing on " +
                                                geom_name(target->id));
        out.push_term(t);
    }
    out.normalize();
    return out;
}

bool SheafExpr::locally_free() const {
    for (const auto& t : terms_)
        if (!t.locally_free()) return false;
    return true;
}

int SheafExpr::rank() const {
    int r = 0;
    for (const auto& t : terms_) r += t.rank();
    return r;
}

std::string SheafExpr::key() const {
    std::vector<std::string> keys;
    for (const auto& t : terms_) keys.push_back(t.key());
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? " (+) " : "") + keys[i];
    return out.empty() ? "0" : out;
}

GradedClass line_class(const GeomPtr& g, const std::map<std::string, Rat>& coeffs) {
    GradedClass c(g);
    for (const auto& [lbl, v] : coeffs) {
        int idx = g->find_label(2, lbl);
        if (idx < 0) throw std::invalid_argument("unknown divisor label " + lbl);
        c.add_coeff(2, idx, v);
    }
    return c;
}

GradedClass todd_class(const GeomPtr& g) {
    GradedClass td = GradedClass::scalar(g, Rat(1));
    if (g->dim == 2) {
        td.add_coeff(4, 0, g->chi_O);
    } else {
        for (std::size_t i = 0; i < g->c2_tangent.size(); ++i)
            td.add_coeff(4, static_cast<int>(i), g->c2_tangent[i] / 12);
    }
    return td;
}

namespace {

GradedClass exp_class(const GeomPtr& g, const GradedClass& m) {
    GradedClass out = GradedClass::scalar(g, Rat(1)) + m + (m * m) * Rat(1, 2);
    if (g->dim >= 3) out += (m * m * m) * Rat(1, 6);
    return out;
}

GradedClass point_like_class(const GeomPtr& g) {
    // dual of a point on a surface, of the fibre on a threefold: this is where
    // the second Chern class of a pulled-back bundle lives
    return GradedClass::basis_element(g, 4, g->basis.at(4).front());
}

GradedClass top_class(const GeomPtr& g) {
    return GradedClass::basis_element(g, 2 * g->dim, g->basis.at(2 * g->dim).front());
}

GradedClass term_ch(const GeomPtr& g, const NormalTerm& t) {
    if (t.is_sky) return top_class(g) * Rat(t.sky_length);
    GradedClass ch = exp_class(g, line_class(g, t.line));
    for (const auto& a : t.atoms) {
        GradedClass d = line_class(g, a.det);
        GradedClass atom_ch = GradedClass::scalar(g, Rat(2)) + d + (d * d) * Rat(1, 2) -
                              point_like_class(g) * Rat(a.points);
        ch = ch * atom_ch;
    }
    if (!t.ideal_set.empty())
        ch = ch * (GradedClass::scalar(g, Rat(1)) - top_class(g) * Rat(t.ideal_points));
    return ch;
}

}  // namespace

GradedClass SheafExpr::chern_character() const {
    GradedClass ch(geom_);
    for (const auto& t : terms_) ch += term_ch(geom_, t);
    return ch;
}

GradedClass SheafExpr::total_chern() const {
    GradedClass ch = chern_character();
    GradedClass one = GradedClass::scalar(geom_, Rat(1));
    GradedClass c1 = ch.part(2);
    GradedClass c2 = (c1 * c1) * Rat(1, 2) - ch.part(4);
    GradedClass total = one + c1 + c2;
    if (geom_->dim >= 3) {
        GradedClass c3 = ch.part(6) * Rat(2) - (c1 * c1 * c1) * Rat(1, 3) + c1 * c2;
        total += c3;
    }
    return total;
}

GradedClass SheafExpr::c1() const { return chern_character().part(2); }

GradedClass SheafExpr::c2() const { return total_chern().part(4); }

Rat SheafExpr::chi() const {
    return (chern_character() * todd_class(geom_)).integrate();
}

std::optional<FibreDecomp> fibre_decompose(const NormalTerm& t, const GeomPtr& threefold,
                                           const GeomPtr& surface) {
    if (t.is_sky || !t.ideal_set.empty()) return std::nullopt;
    FibreDecomp out;
    out.tor = t.tor;
    NormalTerm s;
    s.atoms = t.atoms;
    for (const auto& [lbl, v] : t.line) {
        if (lbl == threefold->fibre_label) {
            if (v.denominator() != 1) return std::nullopt;
            out.n = v.numerator();
        } else {
            if (surface->find_label(2, lbl) < 0) return std::nullopt;
            s.line[lbl] = v;
        }
    }
    for (const auto& a : s.atoms)
        for (const auto& [lbl, v] : a.det)
            if (surface->find_label(2, lbl) < 0) return std::nullopt;
    // rebuild through the public constructors to keep the normal form honest
    SheafExpr built = SheafExpr::line(surface, s.line);
    for (const auto& a : s.atoms) built = built.tensor(SheafExpr::atom_bundle(surface, a));
    out.surface = built;
    return out;
}

// ---------------------------------------------------------------------------
// expression syntax

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind = End;
    std::string text;
    long long value = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) {}
    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::End, "", 0};
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            return {Token::Ident, s_.substr(start, pos_ - start), 0};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
            std::size_t start = pos_;
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Token t{Token::Number, s_.substr(start, pos_ - start), 0};
            t.value = std::stoll(t.text);
            return t;
        }
        ++pos_;
        return {Token::Punct, std::string(1, c), 0};
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

class ExprParser {
  public:
    ExprParser(const ExprContext& ctx, const std::string& text) : ctx_(ctx), lex_(text) {
        advance();
    }

    SheafExpr parse() {
        SheafExpr e = parse_sum(ctx_.geom);
        expect_end();
        return e;
    }

  private:
    const ExprContext& ctx_;
    Lexer lex_;
    Token cur_;

    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("sheaf expression: " + msg);
    }

    void expect_punct(const std::string& p) {
        if (cur_.kind != Token::Punct || cur_.text != p) fail("expected '" + p + "'");
        advance();
    }

    void expect_end() {
        if (cur_.kind != Token::End) fail("trailing input at '" + cur_.text + "'");
    }

    bool accept_punct(const std::string& p) {
        if (cur_.kind == Token::Punct && cur_.text == p) {
            advance();
            return true;
        }
        return false;
    }

    long long expect_number() {
        if (cur_.kind != Token::Number) fail("expected integer, got '" + cur_.text + "'");
        long long v = cur_.value;
        advance();
        return v;
    }

    std::string expect_ident() {
        if (cur_.kind != Token::Ident) fail("expected name, got '" + cur_.text + "'");
        std::string s = cur_.text;
        advance();
        return s;
    }

    SheafExpr parse_sum(const GeomPtr& g) {
        SheafExpr e = parse_product(g);
        while (accept_punct("+")) e = e.direct_sum(parse_product(g));
        return e;
    }

    SheafExpr parse_product(const GeomPtr& g) {
        SheafExpr e = parse_primary(g);
        while (accept_punct("*")) e = e.tensor(parse_primary(g));
        return e;
    }

    void check_char_allowed(const GeomPtr& g, const Torsion& t) {
        if (t.z2 != 0 && g->torsion != TorsionKind::Z2Cube)
            fail("order-two characters do not exist on " + geom_name(g->id));
        if ((t.z2 & 3) && g->dim != 3)
            fail("fibre characters do not exist on " + geom_name(g->id));
        if (!t.chars.empty() && g->torsion != TorsionKind::FreeChar)
            fail("torus characters do not exist on " + geom_name(g->id));
    }

    SheafExpr parse_primary(const GeomPtr& g) {
        if (accept_punct("(")) {
            SheafExpr e = parse_sum(g);
            expect_punct(")");
            return e;
        }
        if (cur_.kind != Token::Ident) fail("expected expression, got '" + cur_.text + "'");
        std::string name = expect_ident();
        if (name == "O") return SheafExpr::structure(g);
        if (name == "o") {
            expect_punct("(");
            std::vector<long long> coeffs;
            coeffs.push_back(expect_number());
            while (accept_punct(",")) coeffs.push_back(expect_number());
            expect_punct(")");
            const auto& labels = g->basis.at(2);
            if (coeffs.size() > labels.size()) fail("too many twist coefficients");
            std::map<std::string, Rat> c1;
            for (std::size_t i = 0; i < coeffs.size(); ++i) c1[labels[i]] = Rat(coeffs[i]);
            return SheafExpr::line(g, c1);
        }
        if (name == "oT") {
            if (g->fibre_label.empty()) fail("oT twist needs a fibred space");
            expect_punct("(");
            long long n = expect_number();
            expect_punct(")");
            return SheafExpr::line(g, {{g->fibre_label, Rat(n)}});
        }
        if (name == "gamma" || name == "alpha" || name == "beta") {
            Torsion t = z2_char(name == "alpha" ? 1 : name == "beta" ? 2 : 4);
            check_char_allowed(g, t);
            return SheafExpr::line(g, {}, t);
        }
        if (name == "char") {
            expect_punct("(");
            std::string cn = expect_ident();
            expect_punct(")");
            Torsion t = free_char(cn);
            check_char_allowed(g, t);
            return SheafExpr::line(g, {}, t);
        }
        if (name == "dual") {
            expect_punct("(");
            SheafExpr e = parse_sum(g);
            expect_punct(")");
            return e.dual();
        }
        if (name == "pull") {
            if (!ctx_.surface) fail("pull(...) needs a base surface");
            expect_punct("(");
            SheafExpr e = parse_sum(ctx_.surface);
            expect_punct(")");
            return e.pull_to(g);
        }
        if (name == "serre2") {
            expect_punct("(");
            if (expect_ident() != "det") fail("serre2 wants det=...");
            expect_punct("=");
            SheafExpr det = parse_sum(g);
            expect_punct(",");
            if (expect_ident() != "pts") fail("serre2 wants pts=...");
            expect_punct("=");
            std::string set = expect_ident();
            expect_punct(")");
            if (det.terms().size() != 1 || !det.terms().front().atoms.empty() ||
                det.terms().front().is_sky)
                fail("serre2 determinant must be a line bundle");
            auto it = ctx_.point_sets.find(set);
            if (it == ctx_.point_sets.end()) fail("unknown point configuration " + set);
            Atom a;
            a.set = set;
            a.points = it->second;
            a.det = det.terms().front().line;
            a.det_tor = det.terms().front().tor;
            return SheafExpr::atom_bundle(g, a);
        }
        if (name == "ideal") {
            expect_punct("(");
            std::string set = expect_ident();
            expect_punct(")");
            auto it = ctx_.point_sets.find(set);
            if (it == ctx_.point_sets.end()) fail("unknown point configuration " + set);
            return SheafExpr::ideal(g, set, it->second);
        }
        if (name == "sky") {
            expect_punct("(");
            std::string set = expect_ident();
            expect_punct(",");
            long long len = expect_number();
            expect_punct(")");
            return SheafExpr::skyscraper(g, set, static_cast<int>(len));
        }
        auto it = ctx_.named.find(name);
        if (it == ctx_.named.end()) fail("unknown name " + name);
        if (it->second.geom() != g) {
            if (ctx_.surface && it->second.geom() == ctx_.surface) {
                fail("name " + name + " lives on the base surface; wrap it in pull(...)");
            }
            fail("name " + name + " belongs to a different space");
        }
        return it->second;
    }
};

}  // namespace

SheafExpr parse_sheaf_expr(const ExprContext& ctx, const std::string& text) {
    return ExprParser(ctx, text).parse();
}

}  // namespace cyv
