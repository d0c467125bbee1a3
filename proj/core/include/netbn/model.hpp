#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace netbn {

// One log event. `index` is the 1-based column position in the
// event-failure matrix; column order is temporal precedence.
struct EventId {
    int index = 0;
    std::string label;

    friend bool operator==(const EventId&, const EventId&) = default;
};

// One failure. `index` is the 1-based row position in the matrix; rows are
// ranked by occurrence frequency, row i at least as frequent as row i+1.
struct FailureId {
    int index = 0;
    std::string label;

    friend bool operator==(const FailureId&, const FailureId&) = default;
};

// Partial or full map from event index to occurred (1) / not occurred (0).
class Assignment {
public:
    Assignment() = default;

    void set(int event_index, bool value) { values_[event_index] = value; }
    bool contains(int event_index) const { return values_.count(event_index) > 0; }
    bool at(int event_index) const;
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::map<int, bool> values_;
};

// Binary failure-signature matrix. Row f lists which events must occur for
// failure f; rows are unique, each row has at least one 1.
class EventFailureMatrix {
public:
    EventFailureMatrix(std::vector<std::string> event_labels,
                       std::vector<std::string> failure_labels,
                       std::vector<std::vector<std::uint8_t>> entries);

    int event_count() const { return static_cast<int>(events_.size()); }
    int failure_count() const { return static_cast<int>(failures_.size()); }

    const std::vector<EventId>& events() const { return events_; }
    const std::vector<FailureId>& failures() const { return failures_; }

    // 1-based indices.
    bool entry(int failure_index, int event_index) const;
    const std::vector<std::uint8_t>& row(int failure_index) const;

    std::optional<EventId> find_event(const std::string& label) const;
    std::optional<FailureId> find_failure(const std::string& label) const;

    // Throws ValidationError when the id does not belong to this matrix.
    void require_failure(const FailureId& f) const;
    void require_event(const EventId& e) const;

private:
    std::vector<EventId> events_;
    std::vector<FailureId> failures_;
    std::vector<std::vector<std::uint8_t>> entries_;
};

// Parses the CSV matrix file format: header `failure,<E-label>,...`, then
// one `<F-label>,0|1,...` row per failure. Throws ParseError with the
// offending line; distinct messages for malformed row length, non-binary
// entries, duplicate rows and all-zero rows.
EventFailureMatrix parse_matrix(const std::string& text,
                                const std::string& source_name = "<matrix>");

// Full assignment equal to row f of the matrix.
Assignment failure_signature(const EventFailureMatrix& m, const FailureId& f);

// Events with entry 1 in row f, in ascending column order.
std::vector<EventId> event_sequence(const EventFailureMatrix& m, const FailureId& f);

// First event of each failure's sequence, deduplicated, ascending.
std::vector<EventId> start_states(const EventFailureMatrix& m);

}  // namespace netbn
