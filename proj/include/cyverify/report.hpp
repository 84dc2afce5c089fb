#pragma once

#include <stdexcept>
#include <string>

#include "cyverify/checklist.hpp"
#include "cyverify/search.hpp"

namespace cyv {

class ReportError : public std::runtime_error {
  public:
    explicit ReportError(const std::string& m) : std::runtime_error(m) {}
};

// Canonical renderings of the two result types.  The json form is stable
// across runs: object keys are emitted sorted with two-space indentation, so
// byte comparison against frozen outputs is meaningful.
std::string render_text(const ChecklistReport& rep);
std::string render_json(const ChecklistReport& rep);
ChecklistReport parse_report_json(const std::string& text);

std::string render_search_text(const SearchResult& res);
std::string render_search_json(const SearchResult& res);
SearchResult parse_search_json(const std::string& text);

}  // namespace cyv
