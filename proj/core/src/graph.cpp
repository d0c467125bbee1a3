#include "netbn/graph.hpp"

#include <algorithm>
#include <sstream>

#include "netbn/error.hpp"

namespace netbn {

EventDag::EventDag(std::vector<EventId> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw ValidationError("structure has no nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].index != static_cast<int>(i + 1))
            throw ValidationError("node " + std::to_string(i + 1) +
                                  " has index " + std::to_string(nodes_[i].index));
    parents_.resize(nodes_.size());
}

const EventId& EventDag::node(int index) const {
    if (index < 1 || index > node_count())
        throw ValidationError("node index " + std::to_string(index) + " out of range");
    return nodes_[static_cast<std::size_t>(index) - 1];
}

const std::vector<int>& EventDag::parents(int index) const {
    if (index < 1 || index > node_count())
        throw ValidationError("node index " + std::to_string(index) + " out of range");
    return parents_[static_cast<std::size_t>(index) - 1];
}

void EventDag::add_edge(int parent, int child) {
    if (parent < 1 || parent > node_count())
        throw ValidationError("parent index " + std::to_string(parent) + " out of range");
    if (child < 1 || child > node_count())
        throw ValidationError("child index " + std::to_string(child) + " out of range");
    if (parent >= child)
        throw ValidationError("edge " + std::to_string(parent) + " -> " +
                              std::to_string(child) +
                              " violates temporal precedence");
    auto& ps = parents_[static_cast<std::size_t>(child) - 1];
    auto it = std::lower_bound(ps.begin(), ps.end(), parent);
    if (it != ps.end() && *it == parent) return;
    ps.insert(it, parent);
}

std::vector<std::pair<int, int>> EventDag::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int c = 1; c <= node_count(); ++c)
        for (int p : parents(c)) out.emplace_back(p, c);
    return out;
}

EventDag window_dag(const std::vector<EventId>& events, int window) {
    if (window < 1) throw ValidationError("window must be >= 1");
    EventDag dag(events);
    for (int c = 2; c <= dag.node_count(); ++c)
        for (int p = std::max(1, c - window); p < c; ++p) dag.add_edge(p, c);
    return dag;
}

EventDag edges_dag(const std::vector<EventId>& events, const std::string& text,
                   const std::string& source_name) {
    EventDag dag(events);
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;

        std::stringstream ls(line);
        int parent = 0, child = 0;
        std::string extra;
        if (!(ls >> parent >> child) || (ls >> extra))
            throw ParseError(source_name, lineno,
                             "expected '<parent> <child>' with 1-based indices");
        try {
            dag.add_edge(parent, child);
        } catch (const ValidationError& e) {
            throw ParseError(source_name, lineno, e.what());
        }
    }
    return dag;
}

}  // namespace netbn
