#pragma once

#include <vector>

#include "netbn/augment.hpp"
#include "netbn/model.hpp"

namespace netbn {

// Table over a set of binary event variables. scope() lists the event
// indices, strictly ascending; values() has 2^|scope| entries enumerated
// lexicographically with scope[0] as the most significant bit and 0
// before 1. A factor with empty scope is a scalar.
class Factor {
public:
    Factor();  // scalar 1
    Factor(std::vector<int> scope, std::vector<double> values);

    const std::vector<int>& scope() const { return scope_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    bool has(int var) const;

    // Position of the cell selected by `a`, which must cover the scope.
    std::size_t index_of(const Assignment& a) const;
    double at(const Assignment& a) const { return values_[index_of(a)]; }

    // Assignment for the cell at `index`.
    Assignment assignment_at(std::size_t index) const;

    friend bool operator==(const Factor&, const Factor&) = default;

private:
    std::vector<int> scope_;
    std::vector<double> values_;
};

// Table of a node's conditional probabilities as a factor over
// parents + node.
Factor factor_from_cpt(const CptTable& table);

// Drops every scope variable fixed by `evidence`, keeping the entries
// consistent with it. Variables absent from the scope are ignored.
Factor restrict_evidence(const Factor& f, const Assignment& evidence);

// Pointwise product over the union scope. Throws CapacityError when the
// result would cover more than 25 variables.
Factor product(const Factor& a, const Factor& b);

// Marginalizes `var` out by summation. Throws ValidationError when `var`
// is not in the scope.
Factor sum_out(const Factor& f, int var);

// Maximizes `var` out. Ties prefer value 0. When `trace` is non-null it
// receives the winning value of `var` for each remaining cell.
Factor max_out(const Factor& f, int var, std::vector<bool>* trace = nullptr);

double total_mass(const Factor& f);

// Scales the factor to total mass 1. A factor with zero mass is returned
// unchanged (all zeros).
Factor normalize(const Factor& f);

}  // namespace netbn
