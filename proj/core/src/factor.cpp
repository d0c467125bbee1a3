#include "netbn/factor.hpp"

#include <algorithm>

#include "netbn/error.hpp"

namespace netbn {

namespace {

constexpr std::size_t kMaxScope = 25;

}  // namespace

Factor::Factor() : values_{1.0} {}

Factor::Factor(std::vector<int> scope, std::vector<double> values)
    : scope_(std::move(scope)), values_(std::move(values)) {
    for (std::size_t i = 0; i + 1 < scope_.size(); ++i)
        if (scope_[i] >= scope_[i + 1])
            throw ValidationError("factor scope must be strictly ascending");
    if (!scope_.empty() && scope_.front() < 1)
        throw ValidationError("factor scope indices must be >= 1");
    if (scope_.size() > kMaxScope)
        throw CapacityError("factor over " + std::to_string(scope_.size()) +
                            " variables exceeds the " + std::to_string(kMaxScope) +
                            "-variable budget");
    if (values_.size() != (std::size_t{1} << scope_.size()))
        throw ValidationError("factor over " + std::to_string(scope_.size()) +
                              " variables needs " +
                              std::to_string(std::size_t{1} << scope_.size()) +
                              " values, got " + std::to_string(values_.size()));
    for (double v : values_)
        if (v < 0.0) throw ValidationError("factor values must be non-negative");
}

bool Factor::has(int var) const {
    return std::binary_search(scope_.begin(), scope_.end(), var);
}

std::size_t Factor::index_of(const Assignment& a) const {
    std::size_t idx = 0;
    for (int var : scope_) {
        if (!a.contains(var))
            throw ValidationError("assignment misses event index " +
                                  std::to_string(var));
        idx = idx * 2 + (a.at(var) ? 1 : 0);
    }
    return idx;
}

Assignment Factor::assignment_at(std::size_t index) const {
    if (index >= values_.size())
        throw ValidationError("cell index " + std::to_string(index) + " out of range");
    Assignment a;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
        std::size_t bit = scope_.size() - 1 - i;
        a.set(scope_[i], (index >> bit) & std::size_t{1});
    }
    return a;
}

Factor factor_from_cpt(const CptTable& table) {
    std::vector<int> scope = table.parents;
    scope.push_back(table.node);
    for (int p : table.parents)
        if (p >= table.node)
            throw ValidationError("table parents must precede the node");

    std::vector<double> values;
    values.reserve(table.rows.size() * 2);
    for (const auto& row : table.rows) {
        values.push_back(row.p0);
        values.push_back(row.p1);
    }
    return Factor(std::move(scope), std::move(values));
}

Factor restrict_evidence(const Factor& f, const Assignment& evidence) {
    std::vector<int> kept;
    std::vector<std::size_t> fixed_bits;  // positions in f's scope, msb order
    std::vector<bool> fixed_vals;
    for (std::size_t i = 0; i < f.scope().size(); ++i) {
        int var = f.scope()[i];
        if (evidence.contains(var)) {
            fixed_bits.push_back(i);
            fixed_vals.push_back(evidence.at(var));
        } else {
            kept.push_back(var);
        }
    }
    if (fixed_bits.empty()) return f;

    std::vector<double> values(std::size_t{1} << kept.size());
    std::size_t n = f.scope().size();
    for (std::size_t out = 0; out < values.size(); ++out) {
        std::size_t idx = 0;
        std::size_t kept_pos = 0, fixed_pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            bool bit;
            if (fixed_pos < fixed_bits.size() && fixed_bits[fixed_pos] == i) {
                bit = fixed_vals[fixed_pos++];
            } else {
                std::size_t shift = kept.size() - 1 - kept_pos;
                bit = (out >> shift) & std::size_t{1};
                ++kept_pos;
            }
            idx = idx * 2 + (bit ? 1 : 0);
        }
        values[out] = f.values()[idx];
    }
    return Factor(std::move(kept), std::move(values));
}

Factor product(const Factor& a, const Factor& b) {
    std::vector<int> scope;
    std::merge(a.scope().begin(), a.scope().end(), b.scope().begin(), b.scope().end(),
               std::back_inserter(scope));
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    if (scope.size() > kMaxScope)
        throw CapacityError("product over " + std::to_string(scope.size()) +
                            " variables exceeds the " + std::to_string(kMaxScope) +
                            "-variable budget");

    // For each union variable, its bit position inside a and b (or npos).
    auto positions = [&](const Factor& f) {
        std::vector<std::size_t> pos(scope.size(), std::size_t(-1));
        for (std::size_t i = 0; i < scope.size(); ++i) {
            auto it = std::lower_bound(f.scope().begin(), f.scope().end(), scope[i]);
            if (it != f.scope().end() && *it == scope[i])
                pos[i] = static_cast<std::size_t>(it - f.scope().begin());
        }
        return pos;
    };
    auto pos_a = positions(a);
    auto pos_b = positions(b);

    std::vector<double> values(std::size_t{1} << scope.size());
    for (std::size_t out = 0; out < values.size(); ++out) {
        std::size_t ia = 0, ib = 0;
        for (std::size_t i = 0; i < scope.size(); ++i) {
            bool bit = (out >> (scope.size() - 1 - i)) & std::size_t{1};
            if (pos_a[i] != std::size_t(-1)) ia = ia * 2 + (bit ? 1 : 0);
            if (pos_b[i] != std::size_t(-1)) ib = ib * 2 + (bit ? 1 : 0);
        }
        values[out] = a.values()[ia] * b.values()[ib];
    }
    return Factor(std::move(scope), std::move(values));
}

namespace {

// Shared shape logic for sum_out and max_out: the position of var in the
// scope and the reduced scope without it.
std::pair<std::size_t, std::vector<int>> drop_var(const Factor& f, int var) {
    auto it = std::lower_bound(f.scope().begin(), f.scope().end(), var);
    if (it == f.scope().end() || *it != var)
        throw ValidationError("variable " + std::to_string(var) +
                              " is not in the factor scope");
    std::size_t pos = static_cast<std::size_t>(it - f.scope().begin());
    std::vector<int> kept = f.scope();
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    return {pos, std::move(kept)};
}

// Source cell for reduced cell `out` with `var`'s bit set to `bit`.
std::size_t expand_index(std::size_t out, std::size_t pos, std::size_t n, bool bit) {
    std::size_t low_bits = n - 1 - pos;
    std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
    std::size_t high = out >> low_bits;
    std::size_t low = out & low_mask;
    return (high << (low_bits + 1)) | (static_cast<std::size_t>(bit) << low_bits) | low;
}

}  // namespace

Factor sum_out(const Factor& f, int var) {
    auto [pos, kept] = drop_var(f, var);
    std::size_t n = f.scope().size();
    std::vector<double> values(std::size_t{1} << kept.size());
    for (std::size_t out = 0; out < values.size(); ++out)
        values[out] = f.values()[expand_index(out, pos, n, false)] +
                      f.values()[expand_index(out, pos, n, true)];
    return Factor(std::move(kept), std::move(values));
}

Factor max_out(const Factor& f, int var, std::vector<bool>* trace) {
    auto [pos, kept] = drop_var(f, var);
    std::size_t n = f.scope().size();
    std::vector<double> values(std::size_t{1} << kept.size());
    if (trace) trace->assign(values.size(), false);
    for (std::size_t out = 0; out < values.size(); ++out) {
        double v0 = f.values()[expand_index(out, pos, n, false)];
        double v1 = f.values()[expand_index(out, pos, n, true)];
        values[out] = v1 > v0 ? v1 : v0;
        if (trace && v1 > v0) (*trace)[out] = true;
    }
    return Factor(std::move(kept), std::move(values));
}

double total_mass(const Factor& f) {
    double sum = 0.0;
    for (double v : f.values()) sum += v;
    return sum;
}

Factor normalize(const Factor& f) {
    double sum = total_mass(f);
    if (sum == 0.0) return f;
    std::vector<double> values = f.values();
    for (double& v : values) v /= sum;
    return Factor(f.scope(), std::move(values));
}

}  // namespace netbn
