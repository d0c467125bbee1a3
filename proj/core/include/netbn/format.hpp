#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netbn/augment.hpp"
#include "netbn/model.hpp"

namespace netbn {

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

// Fixed six fractional digits, the table style used by every
// operator-facing number.
std::string format_fixed6(double value);

// Event map as a Python-style dict, ascending index order, labels quoted:
// {'E2': '1', 'E3': '0'}. Only events present in the assignment appear.
std::string render_assignment(const Assignment& a, const std::vector<EventId>& events);

// `Failure <label>` or `invalid event`.
std::string render_verdict(const std::optional<FailureId>& failure);

// `<full vector dict> --> <verdict>` on one line.
std::string render_prediction(const Assignment& full, const std::vector<EventId>& events,
                              const std::optional<FailureId>& failure);

// All tables as CSV: event,parents,config,p0,p1,filler. parents is
// ;-joined labels, config the parent bits in the same order, filler rows
// marked 1. Probabilities at six fractional digits.
std::string cpt_csv(const Model& model);

}  // namespace netbn
