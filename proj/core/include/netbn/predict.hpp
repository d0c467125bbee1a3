#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netbn/infer.hpp"
#include "netbn/model.hpp"

namespace netbn {

// Full event vector: evidence values, then the inferred query values, then
// 0 for every remaining event.
Assignment assemble_prediction(const Assignment& evidence, const Assignment& inferred,
                               const std::vector<EventId>& events);

// Matrix row equal to the full vector, if any. Rows are unique, so at most
// one can match; no match means the vector names no known failure.
std::optional<FailureId> match_failure(const EventFailureMatrix& m,
                                       const Assignment& full);

struct Prediction {
    QueryResult query;
    Assignment prediction;  // full vector over every event
    std::optional<FailureId> failure;
};

// Infers the query events given the evidence and matches the assembled
// vector against the matrix.
Prediction predict_failure(const Model& model, const Assignment& evidence,
                           const std::vector<int>& query);

// Incremental prediction over a live event stream. Observed events are
// evidence (value 1); the query after each observation covers the events
// that could still arrive, i.e. those after the newest observed column.
// Events already passed over are treated as absent by assembly.
class Session {
public:
    explicit Session(const Model& model);

    // Returns the verdict after incorporating the observation. Repeated
    // observations of the same event do not change the state. Throws
    // ValidationError for unknown labels.
    Prediction observe(const std::string& event_label,
                       const std::string& timestamp = "");
    Prediction observe(const EventId& event, const std::string& timestamp = "");

    // Verdict for the current state without a new observation.
    Prediction current() const;

    void reset();

    const Assignment& observed() const { return evidence_; }
    const std::vector<std::pair<std::string, std::string>>& history() const {
        return history_;  // (timestamp, label) in arrival order
    }

    // Set when the first observation is not the first event of any
    // failure sequence; the stream may have been joined mid-failure.
    bool start_state_warning() const { return start_state_warning_; }

private:
    const Model* model_;
    Assignment evidence_;
    int max_observed_ = 0;
    bool start_state_warning_ = false;
    std::vector<std::pair<std::string, std::string>> history_;
};

}  // namespace netbn
