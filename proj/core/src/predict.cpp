#include "netbn/predict.hpp"

#include <algorithm>

#include "netbn/error.hpp"

namespace netbn {

Assignment assemble_prediction(const Assignment& evidence, const Assignment& inferred,
                               const std::vector<EventId>& events) {
    Assignment full;
    for (const auto& e : events) {
        if (evidence.contains(e.index)) {
            full.set(e.index, evidence.at(e.index));
        } else if (inferred.contains(e.index)) {
            full.set(e.index, inferred.at(e.index));
        } else {
            full.set(e.index, false);
        }
    }
    return full;
}

std::optional<FailureId> match_failure(const EventFailureMatrix& m,
                                       const Assignment& full) {
    if (static_cast<int>(full.size()) != m.event_count())
        throw ValidationError("prediction covers " + std::to_string(full.size()) +
                              " of " + std::to_string(m.event_count()) + " events");
    for (const auto& f : m.failures()) {
        bool match = true;
        for (const auto& e : m.events())
            if (full.at(e.index) != m.entry(f.index, e.index)) {
                match = false;
                break;
            }
        if (match) return f;
    }
    return std::nullopt;
}

Prediction predict_failure(const Model& model, const Assignment& evidence,
                           const std::vector<int>& query) {
    Prediction p;
    p.query = map_query(model.net, query, evidence);
    p.prediction =
        assemble_prediction(evidence, p.query.assignment, model.matrix.events());
    p.failure = match_failure(model.matrix, p.prediction);
    return p;
}

Session::Session(const Model& model) : model_(&model) {}

Prediction Session::observe(const std::string& event_label,
                            const std::string& timestamp) {
    auto event = model_->matrix.find_event(event_label);
    if (!event) throw ValidationError("unknown event '" + event_label + "'");
    return observe(*event, timestamp);
}

Prediction Session::observe(const EventId& event, const std::string& timestamp) {
    model_->matrix.require_event(event);
    if (evidence_.empty()) {
        auto starts = start_states(model_->matrix);
        start_state_warning_ =
            std::none_of(starts.begin(), starts.end(),
                         [&](const EventId& s) { return s.index == event.index; });
    }
    bool is_new = !evidence_.contains(event.index);
    evidence_.set(event.index, true);
    max_observed_ = std::max(max_observed_, event.index);
    if (is_new) history_.emplace_back(timestamp, event.label);
    return current();
}

Prediction Session::current() const {
    if (evidence_.empty())
        throw ValidationError("session has no observations");
    std::vector<int> query;
    for (const auto& e : model_->matrix.events())
        if (e.index > max_observed_) query.push_back(e.index);
    return predict_failure(*model_, evidence_, query);
}

void Session::reset() {
    evidence_ = Assignment();
    max_observed_ = 0;
    start_state_warning_ = false;
    history_.clear();
}

}  // namespace netbn
