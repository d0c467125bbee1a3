#pragma once

#include <vector>

#include "netbn/augment.hpp"
#include "netbn/factor.hpp"
#include "netbn/model.hpp"

namespace netbn {

// Most probable joint setting of the query events given the evidence.
// zero_evidence is set when the evidence has probability zero; the
// assignment is then the all-zero tie-break placeholder and score is 0.
struct QueryResult {
    Assignment assignment;
    double score = 0.0;
    bool zero_evidence = false;
};

// Posterior over the query events given the evidence, by variable
// elimination; non-query non-evidence events are summed out. The result
// is normalized; an all-zero factor signals impossible evidence. Query
// must be nonempty and disjoint from the evidence.
Factor posterior(const BayesNet& net, const std::vector<int>& query,
                 const Assignment& evidence);

// Same, with an explicit elimination order over the summed-out events.
Factor posterior(const BayesNet& net, const std::vector<int>& query,
                 const Assignment& evidence, const std::vector<int>& order);

// Pr(evidence).
double evidence_probability(const BayesNet& net, const Assignment& evidence);

// Joint argmax over the posterior; ties resolve to the lexicographically
// first assignment (events in index order, 0 before 1). An empty query
// yields an empty assignment with score 1 (or 0 under zero evidence).
QueryResult map_query(const BayesNet& net, const std::vector<int>& query,
                      const Assignment& evidence);

// Probability of a full assignment over every event.
double joint_probability(const BayesNet& net, const Assignment& full);

// Posterior by direct enumeration of all full assignments; the slow
// reference route, kept independent of the elimination code path. Throws
// CapacityError beyond 20 events.
Factor enumerate_posterior(const BayesNet& net, const std::vector<int>& query,
                           const Assignment& evidence);

}  // namespace netbn
