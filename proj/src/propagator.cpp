#include "nursecp/propagator.hpp"

#include <cstdint>

namespace nursecp {

namespace {

bool bit_set(std::uint64_t mask, int v) {
    return v >= 0 && v < 64 && ((mask >> v) & 1u) != 0;
}

bool holds_all_different(std::span<const int> values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j])
                return false;
    return true;
}

bool holds_count_in_range(const CountInRange& c, std::span<const int> values) {
    int count = 0;
    for (int v : values)
        if (bit_set(c.counted, v))
            ++count;
    return c.min_count <= count && count <= c.max_count;
}

bool holds_at_most_k_rows(const AtMostKDistinctRows& c, std::span<const int> values) {
    int rows_with_value = 0;
    int num_rows = static_cast<int>(values.size()) / c.row_width;
    for (int r = 0; r < num_rows; ++r) {
        for (int j = 0; j < c.row_width; ++j) {
            if (values[static_cast<std::size_t>(r * c.row_width + j)] == c.value) {
                ++rows_with_value;
                break;
            }
        }
    }
    return rows_with_value <= c.max_rows;
}

bool holds_neighbor_stretch(const NeighborStretch& c, std::span<const int> values) {
    int n = static_cast<int>(values.size());
    for (int i = 0; i < n; ++i) {
        int v = values[static_cast<std::size_t>(i)];
        if (!bit_set(c.late_set, v))
            continue;
        bool prev_same = i > 0 && values[static_cast<std::size_t>(i - 1)] == v;
        bool next_same = i + 1 < n && values[static_cast<std::size_t>(i + 1)] == v;
        if (!prev_same && !next_same)
            return false;
    }
    return true;
}

bool holds_cardinality(const GlobalCardinality& c, std::span<const int> values) {
    for (const ValueCount& vc : c.counts) {
        int count = 0;
        for (int v : values)
            if (v == vc.value)
                ++count;
        if (count != vc.count)
            return false;
    }
    return true;
}

} // namespace

bool holds(const Propagator& p, std::span<const int> values) {
    switch (p.kind()) {
    case PropagatorKind::AllDifferent:
        return holds_all_different(values);
    case PropagatorKind::CountInRange:
        return holds_count_in_range(std::get<CountInRange>(p.params), values);
    case PropagatorKind::AtMostKDistinctRows:
        return holds_at_most_k_rows(std::get<AtMostKDistinctRows>(p.params), values);
    case PropagatorKind::NeighborStretch:
        return holds_neighbor_stretch(std::get<NeighborStretch>(p.params), values);
    case PropagatorKind::GlobalCardinality:
        return holds_cardinality(std::get<GlobalCardinality>(p.params), values);
    }
    return false;
}

const char* kind_name(PropagatorKind kind) {
    switch (kind) {
    case PropagatorKind::AllDifferent:
        return "AllDifferent";
    case PropagatorKind::CountInRange:
        return "CountInRange";
    case PropagatorKind::AtMostKDistinctRows:
        return "AtMostKDistinctRows";
    case PropagatorKind::NeighborStretch:
        return "NeighborStretch";
    case PropagatorKind::GlobalCardinality:
        return "GlobalCardinality";
    }
    return "?";
}

} // namespace nursecp
