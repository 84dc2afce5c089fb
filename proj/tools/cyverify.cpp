#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cyverify/report.hpp"
#include "cyverify/scene.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of bundle constructions on fibred Calabi-Yau threefolds"};
    app.require_subcommand(1);

    std::string scene_name, out_path, checkpoint;
    bool checklist = false, strict = false, as_json = false, parallel = false;
    long long box = 8, limit = 0;
    int rank_max = 3;

    CLI::App* verify = app.add_subcommand("verify", "run the checks a scene declares");
    verify->add_option("scene", scene_name, "scene file, or a bare name resolved against CYVERIFY_SCENE_DIR")
        ->required();
    verify->add_flag("--checklist", checklist,
                     "run the full bundle study instead of the scene's default checks");
    verify->add_flag("--strict-discrepancy", strict,
                     "count discrepancies as failures in the exit code");
    verify->add_flag("--json", as_json, "emit json instead of text");
    verify->add_option("--out", out_path, "write the report to this file instead of stdout");

    CLI::App* search = app.add_subcommand(
        "search", "scan for a polystable partner bundle complementing the scene's study");
    search->add_option("scene", scene_name, "scene file with a bundle study")->required();
    search->add_option("--box", box, "coefficient box radius for divisor classes");
    search->add_option("--rank-max", rank_max, "3 adds the spectator-line shape");
    search->add_option("--limit", limit, "stop after this many candidates");
    search->add_option("--checkpoint", checkpoint, "progress file for interrupt and resume");
    search->add_flag("--parallel", parallel, "evaluate candidate chunks with OpenMP");
    search->add_flag("--json", as_json, "emit json instead of text");
    search->add_option("--out", out_path, "write the result to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        cyv::Scene sc = cyv::load_scene_file(cyv::resolve_scene_path(scene_name));
        if (verify->parsed()) {
            cyv::ChecklistReport rep =
                checklist ? cyv::run_scene_checklist(sc) : cyv::run_scene_checks(sc);
            emit(as_json ? cyv::render_json(rep) : cyv::render_text(rep), out_path);
            return rep.exit_code(strict);
        }

        if (!sc.study) throw cyv::SceneError("this scene declares no bundle study to search for");
        const cyv::ThreefoldStudy& st = *sc.study;
        cyv::SheafExpr sum = st.summands.front();
        for (std::size_t i = 1; i < st.summands.size(); ++i)
            sum = sum.direct_sum(st.summands[i]);
        cyv::AnomalyNumbers nums = cyv::anomaly_numbers(st.x, sum, st.omega, std::nullopt);

        cyv::SearchConfig cfg;
        cfg.x = st.x;
        cfg.s = st.s;
        cfg.target = nums.target;
        cfg.omega = st.omega;
        cfg.box = box;
        cfg.rank_max = rank_max;
        cfg.limit = limit;
        cfg.checkpoint = checkpoint;
        cfg.parallel = parallel;

        cyv::SearchResult res = cyv::run_search(cfg);
        emit(as_json ? cyv::render_search_json(res) : cyv::render_search_text(res), out_path);
        return res.certified > 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
