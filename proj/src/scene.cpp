#include "cyverify/scene.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cyverify/stability.hpp"

namespace cyv {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

struct Parser {
    Scene sc;
    ThreefoldStudy study;
    std::map<std::string, int> point_sets;
    std::map<std::string, std::size_t> sequences;  // name -> index into sc.ops
    bool has_study = false;
    bool study_omega_set = false;
    bool base_pol_set = false;
    bool polarization_set = false;
    int lineno = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw SceneError("line " + std::to_string(lineno) + ": " + msg);
    }

    void need(bool cond, const std::string& msg) const {
        if (!cond) fail(msg);
    }

    void need_geometry() const {
        if (!sc.geom) fail("declare the geometry before anything that uses it");
    }

    static std::string join(const std::vector<std::string>& v, std::size_t from,
                            std::size_t to) {
        std::string out;
        for (std::size_t i = from; i < to && i < v.size(); ++i) {
            if (!out.empty()) out += " ";
            out += v[i];
        }
        return out;
    }

    long long parse_int(const std::string& t) const {
        try {
            std::size_t p = 0;
            long long v = std::stoll(t, &p);
            if (p != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            fail("expected an integer, got '" + t + "'");
        }
    }

    Rat parse_rat(const std::string& t) const {
        auto slash = t.find('/');
        if (slash == std::string::npos) return Rat(parse_int(t));
        return Rat(parse_int(t.substr(0, slash)), parse_int(t.substr(slash + 1)));
    }

    int parse_deg(const std::string& t) const {
        bool ok = t.size() >= 2 && t[0] == 'h';
        for (std::size_t i = 1; ok && i < t.size(); ++i)
            ok = std::isdigit(static_cast<unsigned char>(t[i])) != 0;
        if (!ok) fail("expected a degree like h0 or h2, got '" + t + "'");
        return std::stoi(t.substr(1));
    }

    SheafExpr parse_expr(const std::string& text, bool on_surface) {
        need_geometry();
        ExprContext ctx;
        if (on_surface) {
            need(sc.surface != nullptr, "this scene has no separate base surface");
            ctx.geom = sc.surface;
        } else {
            ctx.geom = sc.geom;
            ctx.surface = sc.surface;
        }
        ctx.named = sc.named;
        ctx.point_sets = point_sets;
        try {
            return parse_sheaf_expr(ctx, text);
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    GradedClass parse_divisor(const std::string& text, bool on_surface) {
        SheafExpr e = parse_expr(text, on_surface);
        if (e.terms().size() != 1 || !e.terms().front().atoms.empty() ||
            e.terms().front().is_sky || !e.terms().front().ideal_set.empty())
            fail("expected a line bundle expression, got " + e.to_string());
        if (!e.terms().front().tor.is_trivial())
            fail("a polarization cannot carry a flat character");
        return line_class(on_surface ? sc.surface : sc.geom, e.terms().front().line);
    }

    // Interval written as one number (exact) or two (a range); returns the
    // index of the first token after it
    std::size_t parse_interval(const std::vector<std::string>& t, std::size_t at,
                               Interval& out) {
        need(at < t.size(), "expected a dimension value");
        long long lo = parse_int(t[at]);
        std::size_t next = at + 1;
        long long hi = lo;
        if (next < t.size() && (std::isdigit(static_cast<unsigned char>(t[next][0])) ||
                                (t[next].size() > 1 && t[next][0] == '-'))) {
            hi = parse_int(t[next]);
            ++next;
        }
        out = Interval::range(lo, hi);
        return next;
    }

    void do_geometry(const std::vector<std::string>& t) {
        need(!sc.geom, "geometry already declared");
        need(t.size() >= 2, "geometry wants a space name");
        bool sphere = t.size() >= 3 && t[2] == "sphere";
        need(t.size() <= (sphere ? std::size_t(3) : std::size_t(2)),
             "unexpected trailing words after the geometry");
        const std::string& g = t[1];
        if (g == "S1") {
            sc.geom = make_S1();
        } else if (g == "S2") {
            sc.geom = make_S2(sphere);
        } else if (g == "X1") {
            sc.geom = make_X1();
            sc.surface = make_S1();
        } else if (g == "X2") {
            sc.geom = make_X2(sphere);
            sc.surface = make_S2(sphere);
        } else if (g == "K3Cover") {
            sc.geom = make_K3_cover();
        } else {
            fail("unknown geometry " + g);
        }
        if (sphere && g != "S2" && g != "X2")
            fail("only the Enriques-type spaces take the sphere variant");
    }

    void do_points(const std::vector<std::string>& t) {
        need(t.size() >= 3, "points wants a name and a size");
        SceneOp op;
        op.kind = SceneOp::Points;
        op.name = t[1];
        op.decl.size = static_cast<int>(parse_int(t[2]));
        std::size_t i = 3;
        while (i < t.size()) {
            need(i + 1 < t.size(), "points modifier '" + t[i] + "' wants a name");
            if (t[i] == "inside") {
                op.decl.inside.insert(t[i + 1]);
            } else if (t[i] == "apart") {
                op.decl.not_inside.insert(t[i + 1]);
            } else if (t[i] == "on") {
                op.decl.on_divisor_of = t[i + 1];
            } else {
                fail("unknown points modifier '" + t[i] + "'");
            }
            i += 2;
        }
        need(!point_sets.count(op.name), "point configuration " + op.name + " already declared");
        point_sets[op.name] = op.decl.size;
        sc.ops.push_back(op);
    }

    void do_named(const std::vector<std::string>& t, bool on_surface, bool line_only) {
        need(t.size() == 3, "expected: <name> <expression>");
        need(!sc.named.count(t[1]), "name " + t[1] + " already defined");
        SheafExpr e = parse_expr(t[2], on_surface);
        if (line_only) {
            const bool is_line = e.terms().size() == 1 && e.terms().front().atoms.empty() &&
                                 !e.terms().front().is_sky &&
                                 e.terms().front().ideal_set.empty();
            need(is_line, "line declarations must name a line bundle");
        }
        sc.named[t[1]] = std::move(e);
    }

    void do_carrier(const std::vector<std::string>& t, bool on_surface) {
        need(t.size() == 3, "carrier wants a name and a line expression");
        SceneOp op;
        op.kind = SceneOp::Carrier;
        op.name = t[1];
        op.exprs.push_back(parse_expr(t[2], on_surface));
        need(op.exprs[0].terms().size() == 1 && op.exprs[0].terms().front().atoms.empty(),
             "a section carrier must be a line bundle");
        sc.ops.push_back(op);
    }

    void do_axiom(const std::vector<std::string>& t, bool on_surface) {
        need(t.size() >= 4, "axiom wants a degree, an expression, a value and a note");
        SceneOp op;
        if (t[1] == "acyclic") {
            op.kind = SceneOp::Acyclic;
            op.exprs.push_back(parse_expr(t[2], on_surface));
            need(t.size() >= 5 && t[3] == "note", "axiom acyclic wants: <expr> note <words>");
            op.note = join(t, 4, t.size());
        } else {
            op.kind = SceneOp::Axiom;
            op.deg = parse_deg(t[1]);
            op.exprs.push_back(parse_expr(t[2], on_surface));
            std::size_t after = parse_interval(t, 3, op.iv);
            need(after < t.size() && t[after] == "note" && after + 1 < t.size(),
                 "an axiom must end with: note <words>");
            op.note = join(t, after + 1, t.size());
        }
        sc.ops.push_back(op);
    }

    void do_sequence(const std::vector<std::string>& t, bool on_surface) {
        need(t.size() >= 7 && t[5] == "note",
             "sequence wants: <name> <sub> <mid> <quot> note <words>");
        need(!sequences.count(t[1]), "sequence " + t[1] + " already declared");
        SceneOp op;
        op.kind = SceneOp::Sequence;
        op.name = t[1];
        op.exprs.push_back(parse_expr(t[2], on_surface));
        op.exprs.push_back(parse_expr(t[3], on_surface));
        op.exprs.push_back(parse_expr(t[4], on_surface));
        op.note = join(t, 6, t.size());
        sequences[op.name] = sc.ops.size();
        sc.ops.push_back(op);
    }

    void do_register(const std::vector<std::string>& t, bool on_surface) {
        need(t.size() == 2, "register wants one expression");
        SceneOp op;
        op.kind = SceneOp::Register;
        op.exprs.push_back(parse_expr(t[1], on_surface));
        sc.ops.push_back(op);
    }

    void do_check(const std::vector<std::string>& t, bool on_surface) {
        need(t.size() >= 3, "check wants a kind and arguments");
        CheckSpec ck;
        const std::string& kind = t[1];
        if (kind == "dim") {
            need(t.size() >= 5, "check dim wants: h<k> <expr> <lo> [<hi>]");
            ck.kind = CheckSpec::Dim;
            ck.deg = parse_deg(t[2]);
            ck.exprs.push_back(parse_expr(t[3], on_surface));
            std::size_t after = parse_interval(t, 4, ck.want);
            need(after == t.size(), "unexpected trailing words after the dimension");
            ck.id = join(t, 1, t.size());
        } else if (kind == "chi") {
            need(t.size() == 4, "check chi wants: <expr> <value>");
            ck.kind = CheckSpec::Chi;
            ck.exprs.push_back(parse_expr(t[2], on_surface));
            ck.chi_want = parse_rat(t[3]);
            ck.id = join(t, 1, t.size());
        } else if (kind == "rank") {
            need(t.size() >= 6, "check rank wants: <sequence> <position> <want> meaning <words>");
            auto it = sequences.find(t[2]);
            need(it != sequences.end(), "unknown sequence " + t[2]);
            ck.kind = CheckSpec::Rank;
            ck.exprs = sc.ops[it->second].exprs;
            ck.position = static_cast<int>(parse_int(t[3]));
            std::size_t after = parse_interval(t, 4, ck.want);
            need(after < t.size() && t[after] == "meaning" && after + 1 < t.size(),
                 "check rank must end with: meaning <words>");
            ck.meaning = join(t, after + 1, t.size());
            ck.id = join(t, 1, after);
        } else if (kind == "pencil") {
            need(t.size() == 5, "check pencil wants: <pencil> <other> <carrier>");
            ck.kind = CheckSpec::Pencil;
            ck.exprs.push_back(parse_expr(t[2], on_surface));
            ck.exprs.push_back(parse_expr(t[3], on_surface));
            ck.exprs.push_back(parse_expr(t[4], on_surface));
            ck.id = join(t, 1, t.size());
        } else if (kind == "stable") {
            need(t.size() == 5, "check stable wants: <expr> <box> <omega>");
            ck.kind = CheckSpec::Stable;
            ck.exprs.push_back(parse_expr(t[2], on_surface));
            ck.box = parse_int(t[3]);
            ck.omega = parse_divisor(t[4], on_surface);
            ck.id = join(t, 1, t.size());
        } else {
            fail("unknown check kind '" + kind + "'");
        }
        sc.checks.push_back(std::move(ck));
    }

    void do_reference(const std::vector<std::string>& t) {
        need(t.size() >= 3, "reference wants a key and some words");
        sc.references.emplace_back(t[1], join(t, 2, t.size()));
    }

    void do_study(const std::vector<std::string>& t) {
        need_geometry();
        need(sc.geom->dim == 3, "bundle studies live on the fibred threefolds");
        need(t.size() >= 2, "study wants a sub-directive");
        const std::string& what = t[1];
        has_study = true;
        if (what == "summand") {
            need(t.size() == 3, "study summand wants one expression");
            study.summands.push_back(parse_expr(t[2], false));
        } else if (what == "omega") {
            need(t.size() == 3, "study omega wants a line expression");
            study.omega = parse_divisor(t[2], false);
            study_omega_set = true;
        } else if (what == "base-omega") {
            need(t.size() == 3, "study base-omega wants a line expression");
            study.base_pol = parse_divisor(t[2], true);
            base_pol_set = true;
        } else if (what == "box") {
            need(t.size() == 3, "study box wants a radius");
            study.box_radius = parse_int(t[2]);
        } else if (what == "generations") {
            need(t.size() == 3, "study generations wants a count");
            study.generations = parse_int(t[2]);
        } else if (what == "split") {
            need(t.size() == 5, "study split wants: <summand-name> <plain> <twisted>");
            auto it = sc.named.find(t[2]);
            need(it != sc.named.end(), "unknown name " + t[2]);
            study.splits[it->second.key()] =
                FibreSplit{parse_int(t[3]), parse_int(t[4])};
        } else if (what == "declared-c2") {
            need(t.size() >= 4 && t.size() % 2 == 0,
                 "study declared-c2 wants value-label pairs");
            GradedClass c(sc.geom);
            for (std::size_t i = 2; i + 1 < t.size(); i += 2) {
                int idx = sc.geom->find_label(4, t[i + 1]);
                need(idx >= 0, "unknown degree-four label " + t[i + 1]);
                c.add_coeff(4, idx, parse_rat(t[i]));
            }
            study.declared_c2 = c;
        } else if (what == "declared-pure") {
            need(t.size() == 3, "study declared-pure wants a value");
            study.declared_pure = parse_rat(t[2]);
        } else if (what == "declared-rank3") {
            need(t.size() == 3, "study declared-rank3 wants a value");
            study.declared_rank3 = parse_rat(t[2]);
        } else if (what == "declared-dim") {
            need(t.size() >= 7 && t[5] == "label",
                 "study declared-dim wants: h<k> <expr> <value> label <words>");
            DeclaredDim d;
            d.deg = parse_deg(t[2]);
            d.e = parse_expr(t[3], true);
            d.value = parse_int(t[4]);
            d.label = join(t, 6, t.size());
            study.declared_dims.push_back(std::move(d));
        } else if (what == "deformations") {
            need(t.size() == 2, "study deformations takes no arguments");
            study.check_deformations = true;
        } else if (what == "partner") {
            need(t.size() >= 3, "study partner wants a description");
            study.partner_certificate = join(t, 2, t.size());
        } else {
            fail("unknown study directive '" + what + "'");
        }
    }

    bool carrier_matches(const GradedClass& cls) const {
        for (const auto& op : sc.ops) {
            if (op.kind != SceneOp::Carrier) continue;
            const auto& term = op.exprs[0].terms().front();
            GradedClass c = line_class(op.exprs[0].geom(), term.line);
            if (c.coeff(2, 0) == cls.coeff(2, 0) && c == cls) return true;
        }
        return false;
    }

    // An extension of a twisted ideal sheaf by the structure sheaf only yields
    // a locally free bundle when no section of the adjoint-twisted determinant
    // can separate the chosen points.  Accept the three situations where that
    // is forced; refuse everything else rather than construct a doubtful atom.
    void check_atom(const Atom& a, const GeomPtr& s) const {
        GradedClass cls(s);
        for (const auto& [lbl, v] : a.det) {
            int idx = s->find_label(2, lbl);
            if (idx < 0)
                throw SceneError("atom determinant label " + lbl +
                                 " does not exist on " + geom_name(s->id));
            cls.add_coeff(2, idx, v);
        }
        if (cls.is_zero()) return;  // constants, or a flat character without sections
        for (const auto& nf : s->nef)
            if ((cls * GradedClass::basis_element(s, 2, nf)).integrate() < Rat(0))
                return;  // negative degree against a nef class: no sections at all
        Torsion twisted = a.det_tor;
        if (s->canonical_is_gamma) twisted = twisted.compose(gamma_char());
        if (!twisted.is_trivial() && (cls * cls).integrate() < Rat(0) &&
            carrier_matches(cls))
            return;  // flat twist of a rigid curve class carried by a declared divisor
        throw SceneError("the extension data for point set " + a.set +
                         " cannot be certified: sections of its adjoint twist may "
                         "separate the points");
    }

    void validate_atoms() const {
        auto scan = [&](const SheafExpr& e) {
            GeomPtr host = e.geom()->dim == 2 ? e.geom() : sc.surface;
            if (!host) return;
            for (const auto& t : e.terms())
                for (const auto& a : t.atoms) check_atom(a, host);
        };
        for (const auto& [name, e] : sc.named) scan(e);
        for (const auto& op : sc.ops)
            for (const auto& e : op.exprs) scan(e);
        for (const auto& ck : sc.checks)
            for (const auto& e : ck.exprs) scan(e);
        if (sc.study) {
            for (const auto& e : sc.study->summands) scan(e);
            for (const auto& d : sc.study->declared_dims) scan(d.e);
        }
    }

    Scene finish() {
        if (!sc.geom) throw SceneError("the scene never declared a geometry");
        if (has_study) {
            if (sc.geom->dim != 3)
                throw SceneError("a bundle study needs a fibred threefold");
            study.x = sc.geom;
            study.s = sc.surface;
            for (const auto& op : sc.ops)
                if (op.kind == SceneOp::Points) study.points[op.name] = op.decl;
            if (!study_omega_set) {
                if (!polarization_set)
                    throw SceneError("a bundle study needs a polarization or study omega");
                study.omega = sc.polarization;
            }
            if (!base_pol_set)
                throw SceneError("a bundle study needs base-omega for the surface pieces");
            if (study.summands.empty())
                throw SceneError("a bundle study needs at least one summand");
            sc.study = study;
        }
        validate_atoms();
        return std::move(sc);
    }
};

CheckResult run_chi_check(const CheckSpec& ck) {
    CheckResult r;
    r.id = ck.id;
    Rat got = ck.exprs[0].chi();
    if (got == ck.chi_want) {
        r.status = CheckStatus::Pass;
        r.summary = "holomorphic euler characteristic " + to_string(got);
    } else {
        r.status = CheckStatus::Fail;
        r.summary = "holomorphic euler characteristic " + to_string(got) +
                    " differs from the demanded " + to_string(ck.chi_want);
    }
    return r;
}

CheckResult run_stable_check(const CheckSpec& ck) {
    CheckResult r;
    r.id = ck.id;
    const SheafExpr& e = ck.exprs[0];
    bool all_lines = true;
    for (const auto& t : e.terms())
        if (!t.atoms.empty() || t.is_sky || !t.ideal_set.empty()) all_lines = false;

    StabilityCert cert;
    if (all_lines && e.terms().size() > 1) {
        cert = assess_line_sum(e.geom(), e, ck.omega);
    } else if (e.terms().size() == 1 && e.terms().front().atoms.size() == 1 &&
               e.terms().front().ideal_set.empty() && !e.terms().front().is_sky) {
        cert = certify_extension(e.geom(), e.terms().front().atoms.front(), ck.omega,
                                 ck.box, false);
    } else {
        r.status = CheckStatus::Open;
        r.summary = "no certification route for this shape";
        return r;
    }

    switch (cert.verdict) {
        case StabilityCert::Verdict::Stable:
        case StabilityCert::Verdict::Polystable:
            r.status = CheckStatus::Pass;
            break;
        case StabilityCert::Verdict::Unstable:
            r.status = CheckStatus::Fail;
            break;
        default:
            r.status = CheckStatus::Open;
            break;
    }
    r.summary = std::string(verdict_name(cert.verdict)) + " for " + cert.subject;
    for (const auto& s : cert.steps) r.detail.push_back(s);
    for (const auto& a : cert.assumptions) r.detail.push_back("assumes " + a);
    if (cert.box_checked > 0)
        r.detail.push_back("scanned " + std::to_string(cert.box_checked) +
                           " classes in the coefficient box of radius " +
                           std::to_string(cert.box_radius) + "; tail " +
                           (cert.tail_covered ? "closed" : "open"));
    if (!cert.witness.empty()) r.detail.push_back("witness: " + cert.witness);
    return r;
}

}  // namespace

Scene load_scene(const std::string& text) {
    Parser p;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++p.lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::vector<std::string> t = tokenize(raw);
        if (t.empty()) continue;

        std::string head = t[0];
        bool on_surface = false;
        if (head.rfind("surface-", 0) == 0) {
            on_surface = true;
            head = head.substr(8);
        }
        if (head == "scene") {
            p.sc.title = Parser::join(t, 1, t.size());
        } else if (head == "geometry") {
            p.do_geometry(t);
        } else if (head == "polarization") {
            p.need(t.size() == 2, "polarization wants one line expression");
            p.sc.polarization = p.parse_divisor(t[1], on_surface);
            p.polarization_set = true;
        } else if (head == "points") {
            p.do_points(t);
        } else if (head == "line") {
            p.do_named(t, on_surface, true);
        } else if (head == "bundle") {
            p.do_named(t, on_surface, false);
        } else if (head == "carrier") {
            p.do_carrier(t, on_surface);
        } else if (head == "axiom") {
            p.do_axiom(t, on_surface);
        } else if (head == "sequence") {
            p.do_sequence(t, on_surface);
        } else if (head == "register") {
            p.do_register(t, on_surface);
        } else if (head == "check") {
            p.do_check(t, on_surface);
        } else if (head == "reference") {
            p.do_reference(t);
        } else if (head == "study") {
            p.do_study(t);
        } else {
            p.fail("unknown directive '" + t[0] + "'");
        }
    }
    return p.finish();
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError("cannot open scene file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_scene(buf.str());
    } catch (const SceneError& e) {
        throw SceneError(path + ": " + e.what());
    }
}

std::string resolve_scene_path(const std::string& name) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    std::vector<std::string> tried{name};
    if (fs::exists(name + ".scene")) return name + ".scene";
    tried.push_back(name + ".scene");
    if (const char* dir = std::getenv("CYVERIFY_SCENE_DIR")) {
        fs::path base(dir);
        for (const std::string& cand : {name, name + ".scene"}) {
            fs::path p = base / cand;
            if (fs::exists(p)) return p.string();
            tried.push_back(p.string());
        }
    }
    std::string msg = "scene not found; tried";
    for (const auto& t : tried) msg += " " + t;
    throw SceneError(msg);
}

Ledger build_ledger(const Scene& sc) {
    Ledger led(sc.geom, sc.surface);
    for (const auto& op : sc.ops) {
        switch (op.kind) {
            case SceneOp::Points:
                led.declare_points(op.name, op.decl);
                break;
            case SceneOp::Carrier:
                led.declare_section_carrier(op.name, op.exprs[0]);
                break;
            case SceneOp::Axiom:
                led.axiom(op.exprs[0], op.deg, op.iv, op.note);
                break;
            case SceneOp::Acyclic:
                led.axiom_acyclic(op.exprs[0], op.note);
                break;
            case SceneOp::Sequence:
                led.register_ses(op.name, op.exprs[0], op.exprs[1], op.exprs[2], op.note);
                break;
            case SceneOp::Register:
                led.register_sheaf(op.exprs[0]);
                break;
        }
    }
    return led;
}

ChecklistReport run_scene_checks(const Scene& sc) {
    ChecklistReport rep;
    rep.title = sc.title;
    Ledger led = build_ledger(sc);
    for (const auto& ck : sc.checks) {
        switch (ck.kind) {
            case CheckSpec::Dim:
                rep.results.push_back(check_dim(led, ck.id, ck.exprs[0], ck.deg, ck.want));
                break;
            case CheckSpec::Rank:
                rep.results.push_back(check_map_rank(led, ck.id, ck.exprs[0], ck.exprs[1],
                                                     ck.exprs[2], ck.position, ck.want,
                                                     ck.meaning));
                break;
            case CheckSpec::Chi:
                rep.results.push_back(run_chi_check(ck));
                break;
            case CheckSpec::Pencil:
                rep.results.push_back(
                    check_pencil(led, ck.id, ck.exprs[0], ck.exprs[1], ck.exprs[2]));
                break;
            case CheckSpec::Stable:
                rep.results.push_back(run_stable_check(ck));
                break;
        }
    }
    for (const auto& [key, text] : sc.references) {
        CheckResult r;
        r.id = key;
        r.status = CheckStatus::Info;
        r.summary = text;
        rep.results.push_back(std::move(r));
    }
    return rep;
}

ChecklistReport run_scene_checklist(const Scene& sc) {
    if (!sc.study) throw SceneError("this scene declares no bundle study");
    ChecklistReport rep = run_threefold_checklist(*sc.study);
    if (!sc.title.empty()) rep.title = sc.title;
    return rep;
}

}  // namespace cyv
