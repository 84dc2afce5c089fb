#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyverify/checklist.hpp"
#include "cyverify/ledger.hpp"

namespace cyv {

class SceneError : public std::runtime_error {
  public:
    explicit SceneError(const std::string& m) : std::runtime_error(m) {}
};

// One replayable declaration from a scene file.  Declarations are kept in file
// order and fed to a fresh ledger every time the scene runs, so results never
// depend on leftover state.
struct SceneOp {
    enum Kind { Points, Carrier, Axiom, Acyclic, Sequence, Register } kind = Register;
    std::string name;  // point set, carrier, or sequence name
    std::string note;
    PointDecl decl;
    std::vector<SheafExpr> exprs;  // carrier/axiom/register: one; sequence: sub, mid, quot
    int deg = 0;
    Interval iv;
};

struct CheckSpec {
    enum Kind { Dim, Rank, Chi, Pencil, Stable } kind = Dim;
    std::string id;  // built from the scene line, used in reports
    std::vector<SheafExpr> exprs;
    int deg = 0;
    int position = 0;
    Interval want;
    Rat chi_want;
    GradedClass omega;  // for stability checks
    long long box = 8;
    std::string meaning;
};

// Parsed scene: a geometry, named sheaf expressions, ledger declarations, a
// default list of checks that are expected to pass, free-form reference notes,
// and optionally the data of a full bundle study on a fibred threefold.
struct Scene {
    std::string title;
    GeomPtr geom;
    GeomPtr surface;  // base of the fibration on threefold scenes
    GradedClass polarization;
    std::map<std::string, SheafExpr> named;
    std::vector<SceneOp> ops;
    std::vector<CheckSpec> checks;
    std::vector<std::pair<std::string, std::string>> references;
    std::optional<ThreefoldStudy> study;
};

Scene load_scene(const std::string& text);
Scene load_scene_file(const std::string& path);

// bare names resolve against CYVERIFY_SCENE_DIR, with or without the .scene
// suffix, when the literal path does not exist
std::string resolve_scene_path(const std::string& name);

// replays every declaration of the scene into a fresh ledger
Ledger build_ledger(const Scene& sc);

// runs the scene's default checks; reference notes are appended as info rows
ChecklistReport run_scene_checks(const Scene& sc);

// runs the full nine-condition study; throws SceneError when the scene has none
ChecklistReport run_scene_checklist(const Scene& sc);

}  // namespace cyv
