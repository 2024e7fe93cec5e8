#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace isoslice {

/// Structured record of one verification or pipeline run.
struct Report {
    std::string id;       // check identifier (e.g. "lem-2.4", "thm-1.2")
    std::string subject;  // body/density the check ran on
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    nlohmann::ordered_json measured = nlohmann::ordered_json::object();
    nlohmann::ordered_json constants = nlohmann::ordered_json::object();
    bool pass = false;
    std::string note;

    nlohmann::ordered_json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

/// Flat RFC-4180 CSV for a set of reports: one row per (id, subject), the
/// union of measured keys as columns, rows sorted by (id, subject).
std::string reports_to_csv(const std::vector<Report>& reports);

}  // namespace isoslice
