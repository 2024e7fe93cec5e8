#include "isoslice/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace isoslice {

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["subject"] = subject;
    j["inputs"] = inputs;
    j["measured"] = measured;
    j["constants"] = constants;
    j["pass"] = pass;
    j["note"] = note;
    return j;
}

Report Report::from_json(const nlohmann::json& j) {
    Report r;
    r.id = j.at("id").get<std::string>();
    r.subject = j.at("subject").get<std::string>();
    r.inputs = j.value("inputs", nlohmann::json::object());
    r.measured = j.value("measured", nlohmann::json::object());
    r.constants = j.value("constants", nlohmann::json::object());
    r.pass = j.at("pass").get<bool>();
    r.note = j.value("note", "");
    return r;
}

namespace {

std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string number_to_csv(const nlohmann::json& v) {
    if (v.is_number() || v.is_boolean()) return v.dump();
    if (v.is_string()) return csv_escape(v.get<std::string>());
    return csv_escape(v.dump());
}

// Flattens {"a": 1, "b": {"value": v, ...}} into a=1, b=v, b.std_error=...
void flatten_measured(const nlohmann::json& measured,
                      std::map<std::string, nlohmann::json>& row) {
    for (auto it = measured.begin(); it != measured.end(); ++it) {
        if (it.value().is_object() && it.value().contains("value")) {
            row[it.key()] = it.value().at("value");
            if (it.value().contains("std_error"))
                row[it.key() + ".std_error"] = it.value().at("std_error");
        } else {
            row[it.key()] = it.value();
        }
    }
}

}  // namespace

std::string reports_to_csv(const std::vector<Report>& reports) {
    std::vector<std::map<std::string, nlohmann::json>> rows;
    std::set<std::string> metric_cols;
    std::vector<const Report*> sorted;
    for (const auto& r : reports) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const Report* a, const Report* b) {
        return std::tie(a->id, a->subject) < std::tie(b->id, b->subject);
    });
    for (const auto* r : sorted) {
        std::map<std::string, nlohmann::json> row;
        flatten_measured(r->measured, row);
        for (const auto& [k, v] : row) {
            (void)v;
            metric_cols.insert(k);
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream os;
    os << "id,subject,pass";
    for (const auto& c : metric_cols) os << "," << csv_escape(c);
    os << "\r\n";
    for (size_t i = 0; i < sorted.size(); ++i) {
        os << csv_escape(sorted[i]->id) << "," << csv_escape(sorted[i]->subject) << ","
           << (sorted[i]->pass ? "true" : "false");
        for (const auto& c : metric_cols) {
            os << ",";
            auto it = rows[i].find(c);
            if (it != rows[i].end()) os << number_to_csv(it->second);
        }
        os << "\r\n";
    }
    return os.str();
}

}  // namespace isoslice
