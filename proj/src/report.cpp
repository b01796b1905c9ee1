#include "rhlab/report.hpp"

#include <cmath>

namespace rhlab {

bool TheoremReport::pass() const {
    for (const auto& c : cases)
        if (c.asserted && !c.pass) return false;
    return true;
}

void TheoremReport::append(const TheoremReport& other, const std::string& prefix) {
    for (auto c : other.cases) {
        if (!prefix.empty()) c.name = prefix + "/" + c.name;
        cases.push_back(std::move(c));
    }
}

Json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json to_json(const ClassConstant& c, int dim) {
    Json j;
    j["kind"] = std::string(to_string(c.kind));
    if (c.p) j["p"] = *c.p;
    if (c.q) j["q"] = *c.q;
    j["value"] = number(c.value);
    j["witness"] = c.witness.to_string(dim);
    j["cube_policy"] = c.cube_policy;
    return j;
}

Json to_json(const IndexEstimate& e, int dim) {
    Json j;
    j["delta_hat"] = number(e.delta_hat);
    if (e.has_lambda) j["lambda_hat"] = number(e.lambda_hat);
    j["delta_cap"] = number(e.delta_cap);
    j["cap"] = e.cap;
    j["gamma"] = e.gamma;
    j["gamma_cap"] = e.gamma_cap;
    j["beta"] = e.beta;
    j["q"] = e.q;
    j["L"] = e.level;
    j["resolution"] = number(e.resolution);
    j["witness"] = {{"cube", e.witness.cube.to_string(dim)}, {"s", number(e.witness.s)}, {"t", number(e.witness.t)}};
    j["certificate"] = {{"ai_at_cap", number(e.ai_at_cap)}, {"ai_above_cap", number(e.ai_above_cap)}};
    j["monotone"] = e.monotone;
    j["extrapolated"] = e.extrapolated;
    return j;
}

Json to_json(const TheoremReport& r) {
    Json j;
    j["id"] = r.id;
    j["corpus"] = r.corpus;
    j["pass"] = r.pass();
    Json cases = Json::array();
    for (const auto& c : r.cases) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["asserted"] = c.asserted;
        cj["details"] = c.details;
        cases.push_back(std::move(cj));
    }
    j["cases"] = std::move(cases);
    return j;
}

}  // namespace rhlab
