#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "totref/linalg.hpp"
#include "totref/matrix.hpp"

namespace totref {

using Json = nlohmann::ordered_json;

inline Json to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(e.to_string());
    return out;
}

inline Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        out.push_back(std::move(row));
    }
    return out;
}

inline Json to_json(const Grading& g) { return Json{{"rows", g.rows}, {"cols", g.cols}}; }

inline std::string scope_string(SliceMode mode, int bound) {
    if (mode == SliceMode::Whole) return "exhaustive";
    if (mode == SliceMode::Degree) return "per-degree D=" + std::to_string(bound);
    return "filtration D=" + std::to_string(bound);
}

inline Json to_json(const ExactnessCertificate& c) {
    Json j{{"pass", c.pass}, {"mode", mode_name(c.mode)}};
    if (c.mode != SliceMode::Whole) j["bound"] = c.bound;
    Json slices = Json::array();
    for (const auto& s : c.slices) {
        Json r;
        if (s.degree) r["degree"] = *s.degree;
        r["kernel_length"] = s.kernel_length;
        r["image_length"] = s.image_length;
        r["equal"] = s.equal;
        slices.push_back(std::move(r));
    }
    j["slices"] = std::move(slices);
    if (c.witness) j["witness"] = to_json(*c.witness);
    if (c.mode == SliceMode::Filtration) j["warning"] = "truncated computation; negatives are inconclusive";
    return j;
}

/// Outcome of a verification: a list of named checks plus free-form data.
/// The verdict is "pass" when every check passes, "inconclusive" when the
/// only failures are marked inconclusive, otherwise "fail".
struct VerificationReport {
    std::string paper_ref;
    std::string scope = "exhaustive";
    struct Check {
        std::string name;
        bool pass = false;
        bool inconclusive = false;
        Json detail;
    };
    std::vector<Check> checks;
    Json data = Json::object();
    std::vector<std::string> notes;

    VerificationReport() = default;
    explicit VerificationReport(std::string ref, std::string sc = "exhaustive")
        : paper_ref(std::move(ref)), scope(std::move(sc)) {}

    bool add(std::string name, bool pass, Json detail = nullptr) {
        checks.push_back({std::move(name), pass, false, std::move(detail)});
        return pass;
    }
    bool add_inconclusive(std::string name, bool pass, Json detail = nullptr) {
        checks.push_back({std::move(name), pass, !pass, std::move(detail)});
        return pass;
    }
    bool add(std::string name, const ExactnessCertificate& cert) {
        if (cert.mode == SliceMode::Filtration && !cert.pass) return add_inconclusive(std::move(name), false, totref::to_json(cert));
        return add(std::move(name), cert.pass, totref::to_json(cert));
    }
    /// Folds a sub-report in as a single check.
    bool add(std::string name, const VerificationReport& sub) {
        std::string v = sub.verdict();
        checks.push_back({std::move(name), v == "pass", v == "inconclusive", sub.to_json()});
        return v == "pass";
    }

    std::string verdict() const {
        bool inconclusive = false;
        for (const auto& c : checks) {
            if (c.pass) continue;
            if (!c.inconclusive) return "fail";
            inconclusive = true;
        }
        return inconclusive ? "inconclusive" : "pass";
    }
    bool passed() const { return verdict() == "pass"; }

    Json to_json() const {
        Json j{{"paper_ref", paper_ref}, {"verdict", verdict()}, {"scope", scope}};
        Json cs = Json::array();
        for (const auto& c : checks) {
            Json e{{"name", c.name}, {"pass", c.pass}};
            if (c.inconclusive) e["inconclusive"] = true;
            if (!c.detail.is_null()) e["detail"] = c.detail;
            cs.push_back(std::move(e));
        }
        j["checks"] = std::move(cs);
        if (!data.empty()) j["data"] = data;
        if (!notes.empty()) j["notes"] = notes;
        return j;
    }
};

}  // namespace totref
