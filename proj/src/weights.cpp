#include "weights.hpp"

#include "errors.hpp"

#include <json.hpp>

#include <cmath>

namespace slising {

EdgeWeightVector EdgeWeightVector::from_json(const EmbeddedGraph& g, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("weights JSON parse error: ") + e.what());
    }
    try {
        EdgeWeightVector w = uniform(g, j.value("default", 0.0));
        if (j.contains("overrides"))
            for (const auto& o : j.at("overrides")) {
                const int u = g.vertex_by_external(o.at("u").get<std::int64_t>());
                const int v = g.vertex_by_external(o.at("v").get<std::int64_t>());
                const int e = g.find_edge(u, v);
                if (e < 0) throw InputError("weight override names a non-edge");
                w[e] = o.at("w").get<double>();
            }
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("weights JSON schema error: ") + e.what());
    }
}

double EdgeWeightVector::sup_norm() const {
    double m = 0.0;
    for (double x : w_) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace slising
