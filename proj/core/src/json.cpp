#include "modeset/json.hpp"

#include "modeset/error.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>

namespace modeset {
namespace {

nlohmann::json number_or_null(double v)
{
    if (std::isfinite(v)) return v;
    return nullptr;
}

double read_end(const nlohmann::json& v, double if_null)
{
    if (v.is_null()) return if_null;
    if (!v.is_number()) throw DomainError("interval endpoints must be numbers or null");
    return v.get<double>();
}

} // namespace

std::string to_json(const ConfidenceSet& set, double alpha, std::string_view method)
{
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& iv : set.intervals()) {
        intervals.push_back({number_or_null(iv.lo), number_or_null(iv.hi)});
    }
    nlohmann::json doc;
    doc["intervals"] = std::move(intervals);
    doc["width"] = number_or_null(set.width());
    doc["alpha"] = alpha;
    doc["method"] = std::string(method);
    return doc.dump();
}

SerializedSet from_json(std::string_view text)
{
    const auto doc = nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw DomainError("confidence set JSON is malformed");
    if (!doc.contains("intervals") || !doc["intervals"].is_array()) {
        throw DomainError("confidence set JSON lacks an intervals array");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<Interval> raw;
    for (const auto& pair : doc["intervals"]) {
        if (!pair.is_array() || pair.size() != 2) throw DomainError("each interval must be a [lo, hi] pair");
        raw.push_back({read_end(pair[0], -inf), read_end(pair[1], inf)});
    }
    SerializedSet out{make_confidence_set(std::move(raw)), 0.0, {}};
    if (doc.contains("alpha") && doc["alpha"].is_number()) out.alpha = doc["alpha"].get<double>();
    if (doc.contains("method") && doc["method"].is_string()) out.method = doc["method"].get<std::string>();
    return out;
}

} // namespace modeset
