#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rhlab/grid.hpp"
#include "rhlab/indices.hpp"
#include "rhlab/weights.hpp"

namespace rhlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct CaseResult {
    std::string name;
    bool pass = true;
    bool asserted = true;  // reported-only cases do not affect the verdict
    Json details = Json::object();
};

struct TheoremReport {
    std::string id;
    std::string corpus;
    std::vector<CaseResult> cases;

    // Conjunction over asserted cases.
    bool pass() const;
    void append(const TheoremReport& other, const std::string& prefix = {});
};

Json to_json(const ClassConstant& c, int dim);
Json to_json(const IndexEstimate& e, int dim);
Json to_json(const TheoremReport& r);

// Finite doubles as numbers; +-inf and NaN as strings so reports stay valid JSON.
Json number(double v);

}  // namespace rhlab
