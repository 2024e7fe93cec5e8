#include "isoslice/constants.hpp"

#include <map>
#include <stdexcept>

namespace isoslice {

const Constants& Constants::defaults() {
    static const Constants c;
    return c;
}

namespace {

std::map<std::string, double Constants::*> field_map() {
    return {
        {"c_alpha", &Constants::c_alpha},
        {"c_near_origin", &Constants::c_near_origin},
        {"c3_quasi", &Constants::c3_quasi},
        {"c1_tail", &Constants::c1_tail},
        {"lem23_ratio_lo", &Constants::lem23_ratio_lo},
        {"lem23_ratio_hi", &Constants::lem23_ratio_hi},
        {"lt_lo", &Constants::lt_lo},
        {"lt_hi", &Constants::lt_hi},
        {"dg_alpha_factor", &Constants::dg_alpha_factor},
        {"ball_dg_max", &Constants::ball_dg_max},
        {"mass_sq_mprime_max", &Constants::mass_sq_mprime_max},
        {"overlap_min", &Constants::overlap_min},
        {"quasi_l_lo", &Constants::quasi_l_lo},
        {"quasi_l_hi", &Constants::quasi_l_hi},
        {"proj_cube_dg_max", &Constants::proj_cube_dg_max},
        {"lem51_factor", &Constants::lem51_factor},
        {"lem22_spread_max", &Constants::lem22_spread_max},
        {"lem41_spread_max", &Constants::lem41_spread_max},
        {"quasi_vs_convex_factor", &Constants::quasi_vs_convex_factor},
    };
}

}  // namespace

void Constants::apply_overrides(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("constants: overrides must be an object");
    auto fields = field_map();
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto f = fields.find(it.key());
        if (f == fields.end())
            throw std::invalid_argument("constants: unknown key '" + it.key() + "'");
        this->*(f->second) = it.value().get<double>();
    }
}

nlohmann::ordered_json Constants::to_json() const {
    nlohmann::ordered_json j;
    for (const auto& [name, ptr] : field_map()) j[name] = this->*ptr;
    return j;
}

}  // namespace isoslice
