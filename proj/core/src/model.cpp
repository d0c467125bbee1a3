#include "netbn/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "netbn/error.hpp"

namespace netbn {

bool Assignment::at(int event_index) const {
    auto it = values_.find(event_index);
    if (it == values_.end())
        throw ValidationError("assignment has no value for event index " +
                              std::to_string(event_index));
    return it->second;
}

EventFailureMatrix::EventFailureMatrix(std::vector<std::string> event_labels,
                                       std::vector<std::string> failure_labels,
                                       std::vector<std::vector<std::uint8_t>> entries)
    : entries_(std::move(entries)) {
    if (event_labels.empty()) throw ValidationError("matrix has no events");
    if (failure_labels.empty()) throw ValidationError("matrix has no failures");
    if (entries_.size() != failure_labels.size())
        throw ValidationError("matrix has " + std::to_string(entries_.size()) +
                              " rows for " + std::to_string(failure_labels.size()) +
                              " failures");

    for (std::size_t r = 0; r < entries_.size(); ++r) {
        const auto& row = entries_[r];
        if (row.size() != event_labels.size())
            throw ValidationError("row " + std::to_string(r + 1) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(event_labels.size()));
        bool any = false;
        for (auto v : row) {
            if (v > 1) throw ValidationError("matrix entries must be 0 or 1");
            any = any || v == 1;
        }
        if (!any)
            throw ValidationError("row " + std::to_string(r + 1) +
                                  " triggers no events");
        for (std::size_t p = 0; p < r; ++p)
            if (entries_[p] == row)
                throw ValidationError("rows " + std::to_string(p + 1) + " and " +
                                      std::to_string(r + 1) +
                                      " have identical signatures");
    }

    events_.reserve(event_labels.size());
    for (std::size_t i = 0; i < event_labels.size(); ++i)
        events_.push_back({static_cast<int>(i + 1), std::move(event_labels[i])});
    failures_.reserve(failure_labels.size());
    for (std::size_t i = 0; i < failure_labels.size(); ++i)
        failures_.push_back({static_cast<int>(i + 1), std::move(failure_labels[i])});
}

bool EventFailureMatrix::entry(int failure_index, int event_index) const {
    return row(failure_index).at(static_cast<std::size_t>(event_index) - 1) == 1;
}

const std::vector<std::uint8_t>& EventFailureMatrix::row(int failure_index) const {
    if (failure_index < 1 || failure_index > failure_count())
        throw ValidationError("failure index " + std::to_string(failure_index) +
                              " out of range");
    return entries_[static_cast<std::size_t>(failure_index) - 1];
}

std::optional<EventId> EventFailureMatrix::find_event(const std::string& label) const {
    for (const auto& e : events_)
        if (e.label == label) return e;
    return std::nullopt;
}

std::optional<FailureId> EventFailureMatrix::find_failure(const std::string& label) const {
    for (const auto& f : failures_)
        if (f.label == label) return f;
    return std::nullopt;
}

void EventFailureMatrix::require_failure(const FailureId& f) const {
    if (f.index < 1 || f.index > failure_count() ||
        failures_[static_cast<std::size_t>(f.index) - 1].label != f.label)
        throw ValidationError("unknown failure '" + f.label + "'");
}

void EventFailureMatrix::require_event(const EventId& e) const {
    if (e.index < 1 || e.index > event_count() ||
        events_[static_cast<std::size_t>(e.index) - 1].label != e.label)
        throw ValidationError("unknown event '" + e.label + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // Trim surrounding spaces; labels and bits never contain commas.
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

EventFailureMatrix parse_matrix(const std::string& text, const std::string& source_name) {
    std::stringstream in(text);
    std::string line;
    int lineno = 0;

    std::vector<std::string> event_labels;
    bool have_header = false;
    std::vector<std::string> failure_labels;
    std::vector<std::vector<std::uint8_t>> entries;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string stripped = line;
        auto b = stripped.find_first_not_of(" \t");
        if (b == std::string::npos || stripped[b] == '#') continue;

        auto cells = split_csv(line);
        if (!have_header) {
            if (cells.size() < 2 || cells[0] != "failure")
                throw ParseError(source_name, lineno,
                                 "expected header 'failure,<event>,...'");
            for (std::size_t i = 1; i < cells.size(); ++i) {
                if (cells[i].empty())
                    throw ParseError(source_name, lineno, "empty event label");
                event_labels.push_back(cells[i]);
            }
            have_header = true;
            continue;
        }

        if (cells.size() != event_labels.size() + 1)
            throw ParseError(source_name, lineno,
                             "row has " + std::to_string(cells.size() - 1) +
                                 " entries, expected " +
                                 std::to_string(event_labels.size()));
        if (cells[0].empty())
            throw ParseError(source_name, lineno, "empty failure label");

        std::vector<std::uint8_t> row;
        row.reserve(event_labels.size());
        bool any = false;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            if (cells[i] == "0") {
                row.push_back(0);
            } else if (cells[i] == "1") {
                row.push_back(1);
                any = true;
            } else {
                throw ParseError(source_name, lineno,
                                 "entry '" + cells[i] + "' is not 0 or 1");
            }
        }
        if (!any)
            throw ParseError(source_name, lineno,
                             "failure '" + cells[0] + "' triggers no events");
        for (std::size_t p = 0; p < entries.size(); ++p)
            if (entries[p] == row)
                throw ParseError(source_name, lineno,
                                 "signature duplicates failure '" +
                                     failure_labels[p] + "'");

        failure_labels.push_back(cells[0]);
        entries.push_back(std::move(row));
    }

    if (!have_header) throw ParseError(source_name, 0, "missing header row");
    if (entries.empty()) throw ParseError(source_name, 0, "matrix has no failure rows");

    return EventFailureMatrix(std::move(event_labels), std::move(failure_labels),
                              std::move(entries));
}

Assignment failure_signature(const EventFailureMatrix& m, const FailureId& f) {
    m.require_failure(f);
    Assignment a;
    for (const auto& e : m.events()) a.set(e.index, m.entry(f.index, e.index));
    return a;
}

std::vector<EventId> event_sequence(const EventFailureMatrix& m, const FailureId& f) {
    m.require_failure(f);
    std::vector<EventId> seq;
    for (const auto& e : m.events())
        if (m.entry(f.index, e.index)) seq.push_back(e);
    return seq;
}

std::vector<EventId> start_states(const EventFailureMatrix& m) {
    std::set<int> seen;
    std::vector<EventId> out;
    for (const auto& f : m.failures()) {
        auto seq = event_sequence(m, f);
        if (!seq.empty() && seen.insert(seq.front().index).second)
            out.push_back(seq.front());
    }
    std::sort(out.begin(), out.end(),
              [](const EventId& a, const EventId& b) { return a.index < b.index; });
    return out;
}

}  // namespace netbn
