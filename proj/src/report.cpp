#include "cyverify/report.hpp"

#include "json.hpp"

namespace cyv {

namespace {

using nlohmann::json;

CheckStatus status_from(const std::string& name) {
    if (name == "pass") return CheckStatus::Pass;
    if (name == "fail") return CheckStatus::Fail;
    if (name == "open") return CheckStatus::Open;
    if (name == "discrepancy") return CheckStatus::Discrepancy;
    if (name == "info") return CheckStatus::Info;
    throw ReportError("unknown status name '" + name + "'");
}

json must_parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ReportError(std::string("malformed json: ") + e.what());
    }
}

}  // namespace

std::string render_text(const ChecklistReport& rep) { return rep.to_string(); }

std::string render_json(const ChecklistReport& rep) {
    json j;
    j["title"] = rep.title;
    json rows = json::array();
    for (const auto& r : rep.results) {
        json row;
        row["id"] = r.id;
        row["status"] = status_name(r.status);
        row["summary"] = r.summary;
        row["detail"] = r.detail;
        rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    return j.dump(2) + "\n";
}

ChecklistReport parse_report_json(const std::string& text) {
    json j = must_parse(text);
    try {
        ChecklistReport rep;
        rep.title = j.at("title").get<std::string>();
        for (const auto& row : j.at("results")) {
            CheckResult r;
            r.id = row.at("id").get<std::string>();
            r.status = status_from(row.at("status").get<std::string>());
            r.summary = row.at("summary").get<std::string>();
            r.detail = row.at("detail").get<std::vector<std::string>>();
            rep.results.push_back(std::move(r));
        }
        return rep;
    } catch (const json::exception& e) {
        throw ReportError(std::string("report json misses a field: ") + e.what());
    }
}

std::string render_search_text(const SearchResult& res) { return res.to_string(); }

std::string render_search_json(const SearchResult& res) {
    json j;
    j["total"] = res.total;
    j["first_index"] = res.first_index;
    j["examined"] = res.examined;
    j["complete"] = res.complete;
    j["certified"] = res.certified;
    json killed = json::object();
    for (const auto& [name, n] : res.kill_counts) killed[name] = n;
    j["killed"] = std::move(killed);
    json survivors = json::array();
    for (const auto& c : res.survivors) {
        json row;
        row["index"] = c.index;
        row["template"] = c.templ;
        row["coeffs"] = c.coeffs;
        row["class"] = c.cls;
        row["survives"] = c.survives;
        row["stable_certified"] = c.stable_certified;
        row["screen"] = c.screen;
        row["fate"] = c.fate;
        survivors.push_back(std::move(row));
    }
    j["survivors"] = std::move(survivors);
    return j.dump(2) + "\n";
}

SearchResult parse_search_json(const std::string& text) {
    json j = must_parse(text);
    try {
        SearchResult res;
        res.total = j.at("total").get<long long>();
        res.first_index = j.at("first_index").get<long long>();
        res.examined = j.at("examined").get<long long>();
        res.complete = j.at("complete").get<bool>();
        res.certified = j.at("certified").get<long long>();
        for (const auto& [name, n] : j.at("killed").items())
            res.kill_counts[name] = n.get<long long>();
        for (const auto& row : j.at("survivors")) {
            Candidate c;
            c.index = row.at("index").get<long long>();
            c.templ = row.at("template").get<std::string>();
            c.coeffs = row.at("coeffs").get<std::vector<long long>>();
            c.cls = row.at("class").get<std::string>();
            c.survives = row.at("survives").get<bool>();
            c.stable_certified = row.at("stable_certified").get<bool>();
            c.screen = row.at("screen").get<std::string>();
            c.fate = row.at("fate").get<std::string>();
            res.survivors.push_back(std::move(c));
        }
        return res;
    } catch (const json::exception& e) {
        throw ReportError(std::string("search json misses a field: ") + e.what());
    }
}

}  // namespace cyv
