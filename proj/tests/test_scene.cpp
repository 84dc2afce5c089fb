#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cyverify/scene.hpp"

using namespace cyv;

namespace {

Scene bundled(const std::string& name) {
    return load_scene_file(resolve_scene_path(name));
}

const CheckResult& row(const ChecklistReport& rep, const std::string& id) {
    for (const auto& r : rep.results)
        if (r.id == id) return r;
    static CheckResult missing;
    FAIL("no result with id ", id);
    return missing;
}

bool mentions(const CheckResult& r, const std::string& needle) {
    for (const auto& d : r.detail)
        if (d.find(needle) != std::string::npos) return true;
    return false;
}

template <typename F>
std::string error_of(F&& f) {
    try {
        f();
    } catch (const SceneError& e) {
        return e.what();
    }
    return "";
}

void require_green(const ChecklistReport& rep) {
    for (const auto& r : rep.results) {
        bool green = r.status == CheckStatus::Pass || r.status == CheckStatus::Info;
        CHECK_MESSAGE(green, r.id, " [", status_name(r.status), "] ", r.summary);
    }
    CHECK(rep.exit_code(false) == 0);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Everything the parse produced, flattened for equality comparison.
std::string fingerprint(const Scene& sc) {
    std::ostringstream o;
    o << sc.title << '\n';
    o << geom_name(sc.geom->id) << '\n';
    o << (sc.surface ? geom_name(sc.surface->id) : std::string("-")) << '\n';
    o << sc.polarization.to_string() << '\n';
    for (const auto& [k, v] : sc.named) o << "name " << k << " = " << v.key() << '\n';
    for (const auto& op : sc.ops) {
        o << "op " << static_cast<int>(op.kind) << ' ' << op.name << " deg" << op.deg << ' '
          << op.iv.to_string() << " note:" << op.note << " size" << op.decl.size << " on:"
          << op.decl.on_divisor_of;
        for (const auto& s : op.decl.inside) o << " in:" << s;
        for (const auto& s : op.decl.not_inside) o << " apart:" << s;
        for (const auto& e : op.exprs) o << ' ' << e.key();
        o << '\n';
    }
    for (const auto& ck : sc.checks) {
        o << "check " << static_cast<int>(ck.kind) << ' ' << ck.id << " deg" << ck.deg << " pos"
          << ck.position << ' ' << ck.want.to_string() << " chi" << to_string(ck.chi_want)
          << " box" << ck.box << " meaning:" << ck.meaning;
        for (const auto& e : ck.exprs) o << ' ' << e.key();
        if (ck.kind == CheckSpec::Stable) o << " omega:" << ck.omega.to_string();
        o << '\n';
    }
    for (const auto& [k, w] : sc.references) o << "ref " << k << ": " << w << '\n';
    o << (sc.study ? "study" : "no-study") << '\n';
    return o.str();
}

// whitespace, indentation, blank lines, and comments are all inert
std::string perturb(const std::string& text, std::mt19937& rng) {
    std::uniform_int_distribution<int> pct(0, 99);
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (pct(rng) < 20) out += "# noise " + std::to_string(pct(rng)) + "\n";
        if (pct(rng) < 15) out += "   \n";
        std::string l = line;
        if (pct(rng) < 30) l = "    " + l;
        if (pct(rng) < 30) {
            std::string wide;
            for (char c : l) {
                wide += c;
                if (c == ' ') wide += ' ';
            }
            l = wide;
        }
        if (pct(rng) < 25) l += "   ";
        if (pct(rng) < 15) l += " # trailing remark";
        out += l + "\n";
    }
    if (pct(rng) < 50) out += "\n# postscript\n";
    return out;
}

const char* kProbe =
    "scene A tiny probe\n"
    "geometry S1\n"
    "polarization o(0,1)\n"
    "points Z 2\n"
    "line L o(1,-1)\n"
    "bundle V serre2(det=L,pts=Z)\n"
    "axiom h0 V*dual(V) 1 note stable bundles are simple\n"
    "check dim h0 V 1\n"
    "check chi V 0\n"
    "reference probe a two-point extension on the K3 surface\n";

}  // namespace

TEST_CASE("scene files resolve by bare name through the environment") {
    REQUIRE(std::getenv("CYVERIFY_SCENE_DIR") != nullptr);
    std::string path = resolve_scene_path("k3_torus_product");
    CHECK(path.size() > 6);
    CHECK(path.substr(path.size() - 6) == ".scene");
    CHECK(std::filesystem::exists(path));
    CHECK(resolve_scene_path(path) == path);
    CHECK(resolve_scene_path("enriques_pencil.scene") != "");
    CHECK(error_of([] { resolve_scene_path("no_such_scene_anywhere"); })
              .find("scene not found") != std::string::npos);
    CHECK(error_of([] { load_scene_file("/no/such/file.scene"); })
              .find("cannot open scene file") != std::string::npos);
}

TEST_CASE("a scene parses into its declared pieces") {
    Scene sc = load_scene(kProbe);
    CHECK(sc.title == "A tiny probe");
    REQUIRE(sc.geom != nullptr);
    CHECK(sc.geom->id == GeomId::S1);
    CHECK(sc.surface == nullptr);
    CHECK(sc.named.count("L") == 1);
    CHECK(sc.named.count("V") == 1);
    REQUIRE(sc.ops.size() == 2);
    CHECK(sc.ops[0].kind == SceneOp::Points);
    CHECK(sc.ops[0].name == "Z");
    CHECK(sc.ops[0].decl.size == 2);
    CHECK(sc.ops[1].kind == SceneOp::Axiom);
    CHECK(sc.ops[1].note == "stable bundles are simple");
    REQUIRE(sc.checks.size() == 2);
    CHECK(sc.checks[0].id == "dim h0 V 1");
    CHECK(sc.checks[1].id == "chi V 0");
    REQUIRE(sc.references.size() == 1);
    CHECK(sc.references[0].first == "probe");
    CHECK(!sc.study.has_value());

    auto rep = run_scene_checks(sc);
    REQUIRE(rep.results.size() == 3);
    require_green(rep);
    CHECK(row(rep, "chi V 0").summary.find("0") != std::string::npos);
    CHECK(row(rep, "probe").status == CheckStatus::Info);
}

TEST_CASE("the loader refuses malformed scenes with the offending line") {
    auto bad = [](const std::string& text) {
        return error_of([&] { load_scene(text); });
    };

    std::string e = bad("scene x\ngeometry S1\npolarization o(0,1)\nfrobnicate everything\n");
    CHECK(e.find("line 4") != std::string::npos);
    CHECK(e.find("unknown directive") != std::string::npos);

    CHECK(bad("scene x\nbundle V o(1,0)\n").find("declare the geometry before") !=
          std::string::npos);
    CHECK(bad("scene x\ngeometry S9\n").find("unknown geometry S9") != std::string::npos);
    CHECK(bad("scene x\ngeometry S1 sphere\n").find("only the Enriques-type spaces") !=
          std::string::npos);
    CHECK(bad("scene x\ngeometry S1\ngeometry S2\n").find("geometry already declared") !=
          std::string::npos);
    CHECK(bad("scene x\ngeometry S1\npoints Z 1\npoints Z 2\n").find("already declared") !=
          std::string::npos);
    CHECK(bad("scene x\ngeometry S1\naxiom h0 o(0,1) 1\n")
              .find("an axiom must end with: note <words>") != std::string::npos);
    CHECK(bad("scene x\ngeometry S1\ncheck rank quux 2 1 meaning words\n")
              .find("unknown sequence quux") != std::string::npos);
    CHECK(bad("scene x\ngeometry S1\ncheck vibes o(0,1) 1\n")
              .find("unknown check kind 'vibes'") != std::string::npos);
    CHECK(bad("scene x\ngeometry S1\nstudy summand o(0,1)\n")
              .find("bundle studies live on the fibred threefolds") != std::string::npos);
    CHECK(bad("scene x\ngeometry X1\nstudy summand oT(1)\n")
              .find("needs a polarization") != std::string::npos);
    CHECK(bad("scene x\ngeometry X1\npolarization o(0,1,1)\nstudy summand oT(1)\n")
              .find("base-omega") != std::string::npos);
    CHECK(bad("scene x\n").find("never declared a geometry") != std::string::npos);
}

TEST_CASE("extension data that cannot be certified is refused") {
    std::string e = error_of([] {
        load_scene(
            "scene x\n"
            "geometry S1\n"
            "points Z 2\n"
            "bundle V serre2(det=o(0,1),pts=Z)\n");
    });
    CHECK(e.find("cannot be certified") != std::string::npos);
    CHECK(e.find("Z") != std::string::npos);
}

TEST_CASE("the product threefold scene passes every default check") {
    Scene sc = bundled("k3_torus_product");
    REQUIRE(sc.study.has_value());
    CHECK(sc.geom->id == GeomId::X1);
    REQUIRE(sc.surface != nullptr);
    CHECK(sc.surface->id == GeomId::S1);

    auto rep = run_scene_checks(sc);
    CHECK(rep.results.size() == 17);
    require_green(rep);
    CHECK(row(rep, "dim h1 E 6").status == CheckStatus::Pass);
    CHECK(row(rep, "dim h2 E 9").status == CheckStatus::Pass);
    CHECK(row(rep, "rank splice 2 2").status == CheckStatus::Pass);
    const auto& st = row(rep, "stable Astar 8 o(0,1)");
    CHECK(st.status == CheckStatus::Pass);
    CHECK(mentions(st, "tail closed"));
}

TEST_CASE("the quotient threefold scene passes every default check") {
    Scene sc = bundled("enriques_quotient");
    REQUIRE(sc.study.has_value());
    CHECK(sc.geom->id == GeomId::X2);
    REQUIRE(sc.surface != nullptr);
    CHECK(sc.surface->id == GeomId::S2);

    auto rep = run_scene_checks(sc);
    CHECK(rep.results.size() == 14);
    require_green(rep);
    CHECK(row(rep, "dim h1 E 3").status == CheckStatus::Pass);
    CHECK(row(rep, "dim h1 Astar*Bstar 4").status == CheckStatus::Pass);
}

TEST_CASE("the pencil scene passes every default check") {
    Scene sc = bundled("enriques_pencil");
    CHECK(!sc.study.has_value());

    auto rep = run_scene_checks(sc);
    CHECK(rep.results.size() == 10);
    require_green(rep);
    const auto& p = row(rep, "pencil W V Ls");
    CHECK(p.status == CheckStatus::Pass);
    CHECK(p.summary.find("pencil") != std::string::npos);
    const auto& st = row(rep, "stable V 6 o(1,1)");
    CHECK(st.status == CheckStatus::Pass);
    CHECK(mentions(st, "assumes"));
    CHECK(mentions(st, "degree zero"));
}

TEST_CASE("the product scene checklist flags the stated sign and nothing else") {
    Scene sc = bundled("k3_torus_product");
    auto rep = run_scene_checklist(sc);
    CHECK(rep.title == "Rank-four construction on the K3 times torus product");
    REQUIRE(rep.results.size() == 9);
    CHECK(row(rep, "fundamental-group").status == CheckStatus::Pass);
    CHECK(row(rep, "determinant").status == CheckStatus::Pass);
    CHECK(row(rep, "generations").status == CheckStatus::Pass);
    CHECK(row(rep, "polystability").status == CheckStatus::Pass);
    CHECK(row(rep, "families").status == CheckStatus::Pass);
    CHECK(row(rep, "coupling").status == CheckStatus::Pass);
    CHECK(row(rep, "deformations").status == CheckStatus::Info);
    CHECK(mentions(row(rep, "deformations"), "against stated 12"));
    const auto& bal = row(rep, "degree-balance");
    CHECK(bal.status == CheckStatus::Discrepancy);
    CHECK(mentions(bal, "derived 6, declared -6"));
    CHECK(row(rep, "partner-bundle").status == CheckStatus::Open);
    CHECK(rep.exit_code(false) == 2);
    CHECK(rep.exit_code(true) == 1);
}

TEST_CASE("the quotient scene checklist balances and stays open on the partner") {
    Scene sc = bundled("enriques_quotient");
    auto rep = run_scene_checklist(sc);
    REQUIRE(rep.results.size() == 9);
    CHECK(row(rep, "fundamental-group").status == CheckStatus::Pass);
    CHECK(row(rep, "polystability").status == CheckStatus::Pass);
    const auto& fam = row(rep, "families");
    CHECK(fam.status == CheckStatus::Pass);
    CHECK(fam.summary == "first cohomology 3");
    CHECK(row(rep, "coupling").status == CheckStatus::Pass);
    CHECK(row(rep, "degree-balance").status == CheckStatus::Pass);
    CHECK(row(rep, "partner-bundle").status == CheckStatus::Open);
    CHECK(rep.exit_code(false) == 2);
}

TEST_CASE("a scene without a study refuses the checklist") {
    Scene sc = bundled("enriques_pencil");
    CHECK(error_of([&] { run_scene_checklist(sc); }).find("declares no bundle study") !=
          std::string::npos);
}

TEST_CASE("ledger replay stays consistent for scene builds") {
    for (const char* name : {"k3_torus_product", "enriques_quotient", "enriques_pencil"}) {
        Scene sc = bundled(name);
        Ledger led = build_ledger(sc);
        for (const auto& [key, e] : sc.named) {
            led.register_sheaf(e);
            for (int k = 0; k <= e.geom()->dim; ++k) led.dims(e, k);
        }
        CHECK_MESSAGE(led.replay_consistent(), name);
    }
}

TEST_CASE("formatting and comments never change the parse") {
    std::string base = slurp(resolve_scene_path("enriques_pencil"));
    std::string want = fingerprint(load_scene(base));
    std::mt19937 rng(20260823u);
    for (int i = 0; i < 1000; ++i) {
        std::string got = fingerprint(load_scene(perturb(base, rng)));
        CHECK(got == want);
    }
}

TEST_CASE("repeated runs of a scene give identical reports") {
    Scene sc = bundled("enriques_pencil");
    auto a = run_scene_checks(sc).to_string();
    auto b = run_scene_checks(sc).to_string();
    CHECK(a == b);
    CHECK(!a.empty());
}
