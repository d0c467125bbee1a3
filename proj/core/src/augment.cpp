#include "netbn/augment.hpp"

#include <cmath>
#include <random>

#include "netbn/error.hpp"

namespace netbn {

namespace {

void check_spec(const PowerLawSpec& spec) {
    if (spec.n < 1) throw ValidationError("power law needs at least one rank");
    if (!(spec.k >= 2.0)) throw ValidationError("exponent k must be at least 2");
    if (!spec.normalize && !(spec.a > 0.0))
        throw ValidationError("scale a must be positive");
}

double scale_of(const PowerLawSpec& spec) {
    return spec.normalize ? normalize_scale(spec.k, spec.n) : spec.a;
}

// Uniform double in [0, 1) with 53 random bits; engine output is mapped
// the same way on every platform, unlike the std distributions.
double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double normalize_scale(double k, int n) {
    if (n < 1) throw ValidationError("power law needs at least one rank");
    if (!(k >= 2.0)) throw ValidationError("exponent k must be at least 2");
    double sum = 0.0;
    for (int x = 1; x <= n; ++x) sum += std::pow(static_cast<double>(x), -k);
    return 1.0 / sum;
}

double power_law_mass(const PowerLawSpec& spec, int x) {
    check_spec(spec);
    if (x < 1 || x > spec.n)
        throw ValidationError("rank " + std::to_string(x) + " out of range");
    return scale_of(spec) * std::pow(static_cast<double>(x), -spec.k);
}

std::vector<double> power_law_pmf(const PowerLawSpec& spec) {
    check_spec(spec);
    double a = scale_of(spec);
    std::vector<double> pmf(static_cast<std::size_t>(spec.n));
    double mass = 0.0;
    for (int x = 1; x <= spec.n; ++x) {
        double p = a * std::pow(static_cast<double>(x), -spec.k);
        pmf[static_cast<std::size_t>(x) - 1] = p;
        mass += p;
    }
    // The construction treats the masses as probabilities; a scale that
    // puts the total far from 1 is a configuration mistake.
    if (mass < 0.9 || mass > 1.1)
        throw ValidationError("power law masses sum to " + std::to_string(mass) +
                              ", outside [0.9, 1.1]; adjust the scale");
    return pmf;
}

FailurePopulation power_law_counts(const PowerLawSpec& spec, long long population,
                                   CountMode mode, std::optional<std::uint64_t> seed) {
    if (population < 1) throw ValidationError("population must be positive");
    auto pmf = power_law_pmf(spec);

    FailurePopulation pop;
    pop.counts.assign(pmf.size(), 0);

    if (mode == CountMode::deterministic) {
        // floor(population * a * x^(-k)), grouped as (population * a) / x^k
        // so integer-valued products come out exact.
        double scaled = static_cast<double>(population) * scale_of(spec);
        for (std::size_t i = 0; i < pmf.size(); ++i)
            pop.counts[i] = static_cast<long long>(std::floor(
                scaled / std::pow(static_cast<double>(i + 1), spec.k)));
    } else {
        if (!seed)
            throw ValidationError("sampled counts require a seed");
        // Multinomial draw: one inverse-CDF walk per trial over the
        // normalized masses.
        double mass = 0.0;
        for (double p : pmf) mass += p;
        std::mt19937_64 rng(*seed);
        for (long long t = 0; t < population; ++t) {
            double u = canonical(rng) * mass;
            double acc = 0.0;
            std::size_t pick = pmf.size() - 1;
            for (std::size_t i = 0; i < pmf.size(); ++i) {
                acc += pmf[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
            ++pop.counts[pick];
        }
    }

    for (std::size_t i = 0; i < pop.counts.size(); ++i) {
        if (pop.counts[i] == 0)
            throw ValidationError(
                "population " + std::to_string(population) +
                " yields zero occurrences at rank " + std::to_string(i + 1) +
                "; use a larger population");
        pop.total += pop.counts[i];
    }
    return pop;
}

std::vector<double> event_probabilities(const EventFailureMatrix& m,
                                        const FailurePopulation& pop) {
    if (static_cast<int>(pop.counts.size()) != m.failure_count())
        throw ValidationError("population has " + std::to_string(pop.counts.size()) +
                              " counts for " + std::to_string(m.failure_count()) +
                              " failures");
    std::vector<double> probs(static_cast<std::size_t>(m.event_count()), 0.0);
    for (const auto& e : m.events()) {
        long long hits = 0;
        for (const auto& f : m.failures())
            if (m.entry(f.index, e.index))
                hits += pop.counts[static_cast<std::size_t>(f.index) - 1];
        probs[static_cast<std::size_t>(e.index) - 1] =
            static_cast<double>(hits) / static_cast<double>(pop.total);
    }
    return probs;
}

const CptRow& CptTable::row_for(const std::vector<bool>& parent_values) const {
    if (parent_values.size() != parents.size())
        throw ValidationError("expected " + std::to_string(parents.size()) +
                              " parent values, got " +
                              std::to_string(parent_values.size()));
    std::size_t idx = 0;
    for (bool v : parent_values) idx = idx * 2 + (v ? 1 : 0);
    return rows.at(idx);
}

std::vector<CptTable> estimate_cpts(const EventFailureMatrix& m, const EventDag& dag,
                                    const FailurePopulation& pop) {
    if (dag.node_count() != m.event_count())
        throw ValidationError("structure has " + std::to_string(dag.node_count()) +
                              " nodes for " + std::to_string(m.event_count()) +
                              " events");
    if (static_cast<int>(pop.counts.size()) != m.failure_count())
        throw ValidationError("population has " + std::to_string(pop.counts.size()) +
                              " counts for " + std::to_string(m.failure_count()) +
                              " failures");

    std::vector<CptTable> cpts;
    cpts.reserve(static_cast<std::size_t>(m.event_count()));

    for (int node = 1; node <= m.event_count(); ++node) {
        CptTable table;
        table.node = node;
        table.parents = dag.parents(node);

        std::size_t n_rows = std::size_t{1} << table.parents.size();
        table.rows.resize(n_rows);

        for (std::size_t cfg = 0; cfg < n_rows; ++cfg) {
            long long denom = 0;
            long long num = 0;
            for (const auto& f : m.failures()) {
                bool match = true;
                for (std::size_t p = 0; p < table.parents.size(); ++p) {
                    bool want =
                        (cfg >> (table.parents.size() - 1 - p)) & std::size_t{1};
                    if (m.entry(f.index, table.parents[p]) != want) {
                        match = false;
                        break;
                    }
                }
                if (!match) continue;
                long long w = pop.counts[static_cast<std::size_t>(f.index) - 1];
                denom += w;
                if (m.entry(f.index, node)) num += w;
            }

            CptRow& row = table.rows[cfg];
            if (denom == 0) {
                row = {0.0, 1.0, true};
            } else {
                row.p1 = static_cast<double>(num) / static_cast<double>(denom);
                row.p0 = 1.0 - row.p1;
                row.filler = false;
            }
        }
        cpts.push_back(std::move(table));
    }
    return cpts;
}

Model augment_model(const EventFailureMatrix& m, const AugmentOptions& options) {
    PowerLawSpec spec;
    spec.k = options.k;
    spec.n = m.failure_count();
    if (options.a) {
        spec.a = *options.a;
        spec.normalize = false;
    } else {
        spec.normalize = true;
        spec.a = normalize_scale(spec.k, spec.n);
    }

    auto pop = power_law_counts(spec, options.population, options.mode, options.seed);

    EventDag dag = options.edges_text
                       ? edges_dag(m.events(), *options.edges_text, options.edges_source)
                       : window_dag(m.events(), options.window);

    auto cpts = estimate_cpts(m, dag, pop);

    Provenance prov;
    prov.spec = spec;
    prov.mode = options.mode;
    prov.seed = options.seed;
    prov.population = pop;
    prov.window = options.edges_text ? 0 : options.window;

    return Model{m, BayesNet{std::move(dag), std::move(cpts)}, std::move(prov)};
}

}  // namespace netbn
