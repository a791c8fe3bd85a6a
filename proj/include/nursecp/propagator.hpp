#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "nursecp/domain.hpp"

namespace nursecp {

using VarId = std::int32_t;

enum class PropagatorKind {
    AllDifferent,
    CountInRange,
    AtMostKDistinctRows,
    NeighborStretch,
    GlobalCardinality,
};

/// Pairwise-distinct values over the scope.
struct AllDifferent {};

/// Number of scope variables taking a value inside `counted` lies in
/// [min_count, max_count].
struct CountInRange {
    std::uint64_t counted = 0;
    int min_count = 0;
    int max_count = 0;
};

/// Scope is a row-major matrix with rows of `row_width` cells; at most
/// `max_rows` distinct rows may contain `value`.
struct AtMostKDistinctRows {
    int value = 0;
    int max_rows = 0;
    int row_width = 1;
};

/// Scope is a chain of consecutive cells; a cell holding a value from
/// `late_set` must have an adjacent cell (within the chain) with the same
/// value.
struct NeighborStretch {
    std::uint64_t late_set = 0;
};

struct ValueCount {
    int value = 0;
    int count = 0;
};

/// Each listed value appears exactly `count` times across the scope;
/// unlisted values are unconstrained.
struct GlobalCardinality {
    std::vector<ValueCount> counts;
};

using PropagatorParams =
    std::variant<AllDifferent, CountInRange, AtMostKDistinctRows, NeighborStretch, GlobalCardinality>;

struct Propagator {
    std::vector<VarId> scope;
    PropagatorParams params;

    PropagatorKind kind() const { return static_cast<PropagatorKind>(params.index()); }
};

/// Ground checker: values[j] is the assignment of scope[j]. Independent of
/// the filtering in CspModel; used by check_solution and the test oracles.
bool holds(const Propagator& p, std::span<const int> values);

const char* kind_name(PropagatorKind kind);

} // namespace nursecp
