#include "netbn/infer.hpp"

#include <algorithm>
#include <set>

#include "netbn/error.hpp"

namespace netbn {

namespace {

std::vector<int> checked_query(const BayesNet& net, const std::vector<int>& query,
                               const Assignment& evidence) {
    std::set<int> seen;
    for (int q : query) {
        if (q < 1 || q > net.dag.node_count())
            throw ValidationError("query event index " + std::to_string(q) +
                                  " out of range");
        if (!seen.insert(q).second)
            throw ValidationError("query lists event index " + std::to_string(q) +
                                  " twice");
        if (evidence.contains(q))
            throw ValidationError("event index " + std::to_string(q) +
                                  " is both query and evidence");
    }
    for (const auto& [var, value] : evidence) {
        (void)value;
        if (var < 1 || var > net.dag.node_count())
            throw ValidationError("evidence event index " + std::to_string(var) +
                                  " out of range");
    }
    return {seen.begin(), seen.end()};
}

// Unnormalized posterior over the query plus its mass Pr(evidence).
struct RawPosterior {
    Factor factor;
    double norm = 0.0;
};

RawPosterior eliminate(const BayesNet& net, const std::vector<int>& sorted_query,
                       const Assignment& evidence, const std::vector<int>& order) {
    std::vector<Factor> factors;
    factors.reserve(net.cpts.size());
    for (const auto& table : net.cpts)
        factors.push_back(restrict_evidence(factor_from_cpt(table), evidence));

    for (int h : order) {
        Factor collected;  // scalar 1
        bool any = false;
        for (std::size_t i = 0; i < factors.size();) {
            if (factors[i].has(h)) {
                collected = any ? product(collected, factors[i]) : factors[i];
                any = true;
                factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
        if (any) factors.push_back(sum_out(collected, h));
    }

    Factor result;
    for (const auto& f : factors) result = product(result, f);

    if (result.scope() != sorted_query)
        throw ValidationError("elimination left variables outside the query");

    return {result, total_mass(result)};
}

std::vector<int> default_order(const BayesNet& net, const std::vector<int>& sorted_query,
                               const Assignment& evidence) {
    std::vector<int> order;
    for (int v = 1; v <= net.dag.node_count(); ++v)
        if (!evidence.contains(v) &&
            !std::binary_search(sorted_query.begin(), sorted_query.end(), v))
            order.push_back(v);
    return order;
}

}  // namespace

namespace {

void require_nonempty(const std::vector<int>& query) {
    if (query.empty())
        throw ValidationError("query must name at least one event");
}

}  // namespace

Factor posterior(const BayesNet& net, const std::vector<int>& query,
                 const Assignment& evidence) {
    require_nonempty(query);
    auto sorted_query = checked_query(net, query, evidence);
    auto raw = eliminate(net, sorted_query, evidence,
                         default_order(net, sorted_query, evidence));
    return normalize(raw.factor);
}

Factor posterior(const BayesNet& net, const std::vector<int>& query,
                 const Assignment& evidence, const std::vector<int>& order) {
    require_nonempty(query);
    auto sorted_query = checked_query(net, query, evidence);
    auto expected = default_order(net, sorted_query, evidence);
    std::vector<int> sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end());
    if (sorted_order != expected)
        throw ValidationError(
            "elimination order must cover exactly the summed-out events");
    auto raw = eliminate(net, sorted_query, evidence, order);
    return normalize(raw.factor);
}

double evidence_probability(const BayesNet& net, const Assignment& evidence) {
    std::vector<int> none;
    auto raw = eliminate(net, none, evidence, default_order(net, none, evidence));
    return raw.norm;
}

QueryResult map_query(const BayesNet& net, const std::vector<int>& query,
                      const Assignment& evidence) {
    auto sorted_query = checked_query(net, query, evidence);
    auto raw = eliminate(net, sorted_query, evidence,
                         default_order(net, sorted_query, evidence));

    QueryResult result;
    if (raw.norm == 0.0) {
        result.zero_evidence = true;
        result.score = 0.0;
        for (int q : sorted_query) result.assignment.set(q, false);
        return result;
    }

    if (sorted_query.empty()) {
        result.score = 1.0;
        return result;
    }

    // Cells are already in lexicographic order (index order, 0 before 1),
    // so the first maximum is the tie-break winner.
    const auto& values = raw.factor.values();
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;

    result.assignment = raw.factor.assignment_at(best);
    result.score = values[best] / raw.norm;
    return result;
}

double joint_probability(const BayesNet& net, const Assignment& full) {
    if (static_cast<int>(full.size()) != net.dag.node_count())
        throw ValidationError("assignment covers " + std::to_string(full.size()) +
                              " of " + std::to_string(net.dag.node_count()) +
                              " events");
    double p = 1.0;
    for (const auto& table : net.cpts) {
        std::vector<bool> parent_values;
        parent_values.reserve(table.parents.size());
        for (int parent : table.parents) parent_values.push_back(full.at(parent));
        const CptRow& row = table.row_for(parent_values);
        p *= full.at(table.node) ? row.p1 : row.p0;
    }
    return p;
}

Factor enumerate_posterior(const BayesNet& net, const std::vector<int>& query,
                           const Assignment& evidence) {
    auto sorted_query = checked_query(net, query, evidence);
    int n = net.dag.node_count();
    if (n > 20)
        throw CapacityError("enumeration over " + std::to_string(n) +
                            " events exceeds the 20-event budget");

    std::vector<double> cells(std::size_t{1} << sorted_query.size(), 0.0);
    for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
        Assignment full;
        for (int v = 1; v <= n; ++v)
            full.set(v, (code >> (n - v)) & std::size_t{1});

        bool consistent = true;
        for (const auto& [var, value] : evidence)
            if (full.at(var) != value) {
                consistent = false;
                break;
            }
        if (!consistent) continue;

        std::size_t cell = 0;
        for (int q : sorted_query) cell = cell * 2 + (full.at(q) ? 1 : 0);
        cells[cell] += joint_probability(net, full);
    }

    return normalize(Factor(sorted_query, std::move(cells)));
}

}  // namespace netbn
