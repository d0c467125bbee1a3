#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netbn/graph.hpp"
#include "netbn/model.hpp"

namespace netbn {

enum class CountMode {
    deterministic,  // C_f = floor(population * p(f))
    sampled,        // multinomial draw of `population` trials, seeded
};

// Discrete power law p(x) = a * x^(-k) over ranks x = 1..n, k >= 2. With
// normalize=true the scale is chosen so the masses sum to 1 and `a` is
// ignored; otherwise `a` is used as given and the total mass must stay
// within [0.9, 1.1].
struct PowerLawSpec {
    double a = 0.0;
    double k = 2.0;
    int n = 0;
    bool normalize = true;
};

// Scale that makes sum over x=1..n of a*x^(-k) equal 1.
double normalize_scale(double k, int n);

// Mass at rank x (1-based). Throws ValidationError for x out of range.
double power_law_mass(const PowerLawSpec& spec, int x);

// All n masses, rank order.
std::vector<double> power_law_pmf(const PowerLawSpec& spec);

// Synthetic per-failure occurrence counts. counts[i] is for failure i+1.
struct FailurePopulation {
    std::vector<long long> counts;
    long long total = 0;
};

// Throws ValidationError when any failure receives zero occurrences
// (table estimation would be degenerate; use a larger population).
FailurePopulation power_law_counts(const PowerLawSpec& spec, long long population,
                                   CountMode mode = CountMode::deterministic,
                                   std::optional<std::uint64_t> seed = std::nullopt);

// Pr(E_i = 1) under the weighted population: the count share of the rows
// that set event i.
std::vector<double> event_probabilities(const EventFailureMatrix& m,
                                        const FailurePopulation& pop);

// One conditional-probability row for a fixed parent configuration.
// p0 + p1 == 1 exactly. filler marks configurations never observed in the
// weighted data; their probabilities (0, 1) are placeholders, not evidence.
struct CptRow {
    double p1 = 0.0;
    double p0 = 1.0;
    bool filler = false;
};

// Conditional-probability table for one node. rows has 2^|parents| entries
// ordered by parent configuration, parents[0] most significant, 0 before 1.
struct CptTable {
    int node = 0;
    std::vector<int> parents;
    std::vector<CptRow> rows;

    const CptRow& row_for(const std::vector<bool>& parent_values) const;
};

// Tables for every node, estimated from the signature rows weighted by
// occurrence counts. Root tables have a single row weighted by the total.
std::vector<CptTable> estimate_cpts(const EventFailureMatrix& m, const EventDag& dag,
                                    const FailurePopulation& pop);

// Network of per-event occurrence variables: the dependency structure plus
// one table per node (cpts[i] is for node i+1).
struct BayesNet {
    EventDag dag;
    std::vector<CptTable> cpts;
};

// How a model's tables were produced; kept for export and reporting.
struct Provenance {
    PowerLawSpec spec;
    CountMode mode = CountMode::deterministic;
    std::optional<std::uint64_t> seed;
    FailurePopulation population;
    int window = 0;  // 0 when the structure came from an explicit edge list
};

struct Model {
    EventFailureMatrix matrix;
    BayesNet net;
    Provenance provenance;
};

struct AugmentOptions {
    double k = 2.0;
    std::optional<double> a;  // unset: normalized scale
    long long population = 0;
    CountMode mode = CountMode::deterministic;
    std::optional<std::uint64_t> seed;
    int window = 2;
    std::optional<std::string> edges_text;  // overrides the window structure
    std::string edges_source = "<edges>";
};

// Full pipeline: power-law counts over the matrix failures, dependency
// structure, table estimation. Throws ValidationError on bad options and
// on degenerate populations.
Model augment_model(const EventFailureMatrix& m, const AugmentOptions& options);

}  // namespace netbn
