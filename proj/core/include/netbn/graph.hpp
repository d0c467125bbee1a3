#pragma once

#include <string>
#include <vector>

#include "netbn/model.hpp"

namespace netbn {

// Directed acyclic dependency structure over the matrix events. Node order
// equals event column order; every edge points from a lower index to a
// higher one, so the structure is acyclic by construction.
class EventDag {
public:
    explicit EventDag(std::vector<EventId> nodes);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<EventId>& nodes() const { return nodes_; }
    const EventId& node(int index) const;

    // Parent indices of `index`, ascending. Empty for root nodes.
    const std::vector<int>& parents(int index) const;

    // Adds parent -> child. Throws ValidationError when parent >= child
    // (would break temporal precedence) or either index is out of range.
    void add_edge(int parent, int child);

    std::vector<std::pair<int, int>> edges() const;

private:
    std::vector<EventId> nodes_;
    std::vector<std::vector<int>> parents_;
};

// Sliding-window structure: parents of E_i are the `window` immediately
// preceding events that exist. window must be >= 1.
EventDag window_dag(const std::vector<EventId>& events, int window = 2);

// Structure from an explicit edge list, one `parent child` pair per line
// (1-based indices, `#` comments allowed). Throws ParseError on malformed
// lines and ValidationError on backward or out-of-range edges.
EventDag edges_dag(const std::vector<EventId>& events, const std::string& text,
                   const std::string& source_name = "<edges>");

}  // namespace netbn
