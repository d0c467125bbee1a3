#include "netbn/format.hpp"

#include <charconv>
#include <cstdio>

#include "netbn/error.hpp"

namespace netbn {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw Error("cannot format value");
    return std::string(buf, ptr);
}

std::string format_fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string render_assignment(const Assignment& a, const std::vector<EventId>& events) {
    std::string out = "{";
    bool first = true;
    for (const auto& e : events) {
        if (!a.contains(e.index)) continue;
        if (!first) out += ", ";
        first = false;
        out += "'" + e.label + "': '" + (a.at(e.index) ? "1" : "0") + "'";
    }
    out += "}";
    return out;
}

std::string render_verdict(const std::optional<FailureId>& failure) {
    return failure ? "Failure " + failure->label : "invalid event";
}

std::string render_prediction(const Assignment& full, const std::vector<EventId>& events,
                              const std::optional<FailureId>& failure) {
    return render_assignment(full, events) + " --> " + render_verdict(failure);
}

std::string cpt_csv(const Model& model) {
    std::string out = "event,parents,config,p0,p1,filler\n";
    for (const auto& table : model.net.cpts) {
        std::string parents;
        for (std::size_t p = 0; p < table.parents.size(); ++p) {
            if (p > 0) parents += ';';
            parents += model.matrix.events()[static_cast<std::size_t>(table.parents[p]) - 1]
                           .label;
        }
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            std::string config;
            for (std::size_t p = 0; p < table.parents.size(); ++p)
                config += ((i >> (table.parents.size() - 1 - p)) & std::size_t{1})
                              ? '1'
                              : '0';
            const CptRow& row = table.rows[i];
            out += model.matrix.events()[static_cast<std::size_t>(table.node) - 1].label;
            out += ',' + parents + ',' + config + ',' + format_fixed6(row.p0) + ',' +
                   format_fixed6(row.p1) + ',' + (row.filler ? "1" : "0") + '\n';
        }
    }
    return out;
}

}  // namespace netbn
