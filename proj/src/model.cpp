#include "nursecp/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nursecp {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

void validate_propagator(const Propagator& p, int num_vars) {
    if (p.scope.empty())
        throw std::invalid_argument("propagator scope is empty");
    for (VarId v : p.scope)
        if (v < 0 || v >= num_vars)
            throw std::invalid_argument("propagator scope references variable " +
                                        std::to_string(v) + " outside the model");
    for (std::size_t i = 0; i < p.scope.size(); ++i)
        for (std::size_t j = i + 1; j < p.scope.size(); ++j)
            if (p.scope[i] == p.scope[j])
                throw std::invalid_argument("propagator scope repeats variable " +
                                            std::to_string(p.scope[i]));
    switch (p.kind()) {
    case PropagatorKind::AllDifferent:
        break;
    case PropagatorKind::CountInRange: {
        const auto& c = std::get<CountInRange>(p.params);
        if (c.min_count < 0 || c.min_count > c.max_count)
            throw std::invalid_argument("count bounds must satisfy 0 <= min <= max");
        break;
    }
    case PropagatorKind::AtMostKDistinctRows: {
        const auto& c = std::get<AtMostKDistinctRows>(p.params);
        if (c.value < 0 || c.value > Domain::kMaxValue)
            throw std::invalid_argument("row value outside the domain universe");
        if (c.max_rows < 0)
            throw std::invalid_argument("max_rows must be non-negative");
        if (c.row_width < 1 || p.scope.size() % static_cast<std::size_t>(c.row_width) != 0)
            throw std::invalid_argument("scope does not split into rows of row_width");
        break;
    }
    case PropagatorKind::NeighborStretch:
        break;
    case PropagatorKind::GlobalCardinality: {
        const auto& c = std::get<GlobalCardinality>(p.params);
        std::uint64_t seen = 0;
        for (const ValueCount& vc : c.counts) {
            if (vc.value < 0 || vc.value > Domain::kMaxValue)
                throw std::invalid_argument("cardinality value outside the domain universe");
            if (vc.count < 0)
                throw std::invalid_argument("cardinality count must be non-negative");
            if (seen & bit(vc.value))
                throw std::invalid_argument("cardinality lists value " +
                                            std::to_string(vc.value) + " twice");
            seen |= bit(vc.value);
        }
        break;
    }
    }
}

} // namespace

VarId CspModel::add_variable(Domain initial) {
    if (initial.empty())
        throw std::invalid_argument("variable created with an empty domain");
    domains_.push_back(initial);
    root_domains_.push_back(initial);
    subscriptions_.emplace_back();
    return static_cast<VarId>(domains_.size() - 1);
}

std::size_t CspModel::add_propagator(Propagator p) {
    validate_propagator(p, num_variables());
    std::size_t index = propagators_.size();
    for (VarId v : p.scope) {
        auto& subs = subscriptions_[static_cast<std::size_t>(v)];
        if (std::find(subs.begin(), subs.end(), static_cast<int>(index)) == subs.end())
            subs.push_back(static_cast<int>(index));
    }
    propagators_.push_back(std::move(p));
    queued_.push_back(1);
    queue_.push_back(static_cast<int>(index));
    return index;
}

void CspModel::set_domain(VarId v, Domain d) {
    if (d.empty())
        throw std::invalid_argument("set_domain with an empty domain");
    domains_[static_cast<std::size_t>(v)] = d;
    root_domains_[static_cast<std::size_t>(v)] = d;
}

RemoveResult CspModel::remove_mask(VarId v, std::uint64_t mask) {
    Domain& d = domains_[static_cast<std::size_t>(v)];
    std::uint64_t removed = d.bits() & mask;
    if (removed == 0)
        return RemoveResult::Unchanged;
    trail_.push_back({v, removed});
    d = Domain::from_bits(d.bits() & ~mask);
    if (d.empty())
        return RemoveResult::Wipeout;
    wake(v);
    return RemoveResult::Changed;
}

RemoveResult CspModel::remove_value(VarId v, int value) {
    if (value < 0 || value > Domain::kMaxValue)
        return RemoveResult::Unchanged;
    return remove_mask(v, bit(value));
}

RemoveResult CspModel::fix_value(VarId v, int value) {
    if (value < 0 || value > Domain::kMaxValue)
        return remove_mask(v, ~std::uint64_t{0});
    return remove_mask(v, ~bit(value));
}

void CspModel::wake(VarId v) {
    for (int p : subscriptions_[static_cast<std::size_t>(v)]) {
        if (!queued_[static_cast<std::size_t>(p)]) {
            queued_[static_cast<std::size_t>(p)] = 1;
            queue_.push_back(p);
        }
    }
}

void CspModel::clear_queue() {
    for (int p : queue_)
        queued_[static_cast<std::size_t>(p)] = 0;
    queue_.clear();
}

void CspModel::enqueue_all() {
    for (std::size_t i = 0; i < propagators_.size(); ++i) {
        if (!queued_[i]) {
            queued_[i] = 1;
            queue_.push_back(static_cast<int>(i));
        }
    }
}

PropagationResult CspModel::propagate_fixpoint() {
    enqueue_all();
    return run_queue();
}

PropagationResult CspModel::run_queue() {
    while (!queue_.empty()) {
        int index = queue_.front();
        queue_.pop_front();
        queued_[static_cast<std::size_t>(index)] = 0;
        if (run_propagator(static_cast<std::size_t>(index)) == PropagationResult::Inconsistent) {
            clear_queue();
            return PropagationResult::Inconsistent;
        }
    }
    return PropagationResult::Consistent;
}

PropagationResult CspModel::run_propagator(std::size_t index) {
    ++propagations_;
    const Propagator& p = propagators_[index];
    const auto& scope = p.scope;
    auto dom = [&](std::size_t j) -> const Domain& {
        return domains_[static_cast<std::size_t>(scope[j])];
    };

    switch (p.kind()) {
    case PropagatorKind::AllDifferent: {
        // forward checking: a fixed value disappears from every peer
        for (std::size_t j = 0; j < scope.size(); ++j) {
            if (!dom(j).is_fixed())
                continue;
            int v = dom(j).value();
            for (std::size_t l = 0; l < scope.size(); ++l) {
                if (l == j)
                    continue;
                if (remove_value(scope[l], v) == RemoveResult::Wipeout)
                    return PropagationResult::Inconsistent;
            }
        }
        return PropagationResult::Consistent;
    }

    case PropagatorKind::CountInRange: {
        const auto& c = std::get<CountInRange>(p.params);
        int must = 0, may = 0;
        for (std::size_t j = 0; j < scope.size(); ++j) {
            if (dom(j).is_subset_of(c.counted))
                ++must;
            if (dom(j).intersects(c.counted))
                ++may;
        }
        if (must > c.max_count || may < c.min_count)
            return PropagationResult::Inconsistent;
        if (must == c.max_count) {
            // the budget is spent: strip counted values from partial domains
            for (std::size_t j = 0; j < scope.size(); ++j) {
                if (dom(j).is_subset_of(c.counted) || !dom(j).intersects(c.counted))
                    continue;
                if (remove_mask(scope[j], c.counted) == RemoveResult::Wipeout)
                    return PropagationResult::Inconsistent;
            }
        }
        if (may == c.min_count) {
            // every candidate is needed: force partial domains into the set
            for (std::size_t j = 0; j < scope.size(); ++j) {
                if (dom(j).is_subset_of(c.counted) || !dom(j).intersects(c.counted))
                    continue;
                if (remove_mask(scope[j], ~c.counted) == RemoveResult::Wipeout)
                    return PropagationResult::Inconsistent;
            }
        }
        return PropagationResult::Consistent;
    }

    case PropagatorKind::AtMostKDistinctRows: {
        const auto& c = std::get<AtMostKDistinctRows>(p.params);
        std::size_t width = static_cast<std::size_t>(c.row_width);
        std::size_t num_rows = scope.size() / width;
        int committed = 0;
        for (std::size_t r = 0; r < num_rows; ++r) {
            for (std::size_t j = 0; j < width; ++j) {
                const Domain& d = dom(r * width + j);
                if (d.is_fixed() && d.value() == c.value) {
                    ++committed;
                    break;
                }
            }
        }
        if (committed > c.max_rows)
            return PropagationResult::Inconsistent;
        if (committed < c.max_rows)
            return PropagationResult::Consistent;
        // cap reached: no further row may pick up the value
        for (std::size_t r = 0; r < num_rows; ++r) {
            bool row_committed = false;
            for (std::size_t j = 0; j < width && !row_committed; ++j) {
                const Domain& d = dom(r * width + j);
                row_committed = d.is_fixed() && d.value() == c.value;
            }
            if (row_committed)
                continue;
            for (std::size_t j = 0; j < width; ++j) {
                if (remove_value(scope[r * width + j], c.value) == RemoveResult::Wipeout)
                    return PropagationResult::Inconsistent;
            }
        }
        return PropagationResult::Consistent;
    }

    case PropagatorKind::NeighborStretch: {
        const auto& c = std::get<NeighborStretch>(p.params);
        std::size_t n = scope.size();
        for (std::size_t j = 0; j < n; ++j) {
            if (!dom(j).is_fixed())
                continue;
            int v = dom(j).value();
            if (v < 0 || v > Domain::kMaxValue || ((c.late_set >> v) & 1u) == 0)
                continue;
            bool prev_same = j > 0 && dom(j - 1).is_fixed() && dom(j - 1).value() == v;
            bool next_same = j + 1 < n && dom(j + 1).is_fixed() && dom(j + 1).value() == v;
            if (prev_same || next_same)
                continue;
            bool prev_can = j > 0 && dom(j - 1).contains(v);
            bool next_can = j + 1 < n && dom(j + 1).contains(v);
            if (!prev_can && !next_can)
                return PropagationResult::Inconsistent;
            if (prev_can && next_can)
                continue;
            std::size_t forced = prev_can ? j - 1 : j + 1;
            if (fix_value(scope[forced], v) == RemoveResult::Wipeout)
                return PropagationResult::Inconsistent;
        }
        return PropagationResult::Consistent;
    }

    case PropagatorKind::GlobalCardinality: {
        const auto& c = std::get<GlobalCardinality>(p.params);
        for (const ValueCount& vc : c.counts) {
            int fixed = 0, possible = 0;
            for (std::size_t j = 0; j < scope.size(); ++j) {
                if (dom(j).contains(vc.value)) {
                    ++possible;
                    if (dom(j).is_fixed())
                        ++fixed;
                }
            }
            if (fixed > vc.count || possible < vc.count)
                return PropagationResult::Inconsistent;
            if (fixed == vc.count && possible > vc.count) {
                for (std::size_t j = 0; j < scope.size(); ++j) {
                    if (dom(j).is_fixed() || !dom(j).contains(vc.value))
                        continue;
                    if (remove_value(scope[j], vc.value) == RemoveResult::Wipeout)
                        return PropagationResult::Inconsistent;
                }
            } else if (possible == vc.count && fixed < vc.count) {
                for (std::size_t j = 0; j < scope.size(); ++j) {
                    if (dom(j).is_fixed() || !dom(j).contains(vc.value))
                        continue;
                    if (fix_value(scope[j], vc.value) == RemoveResult::Wipeout)
                        return PropagationResult::Inconsistent;
                }
            }
        }
        return PropagationResult::Consistent;
    }
    }
    return PropagationResult::Consistent;
}

void CspModel::push_frame() { frames_.push_back(trail_.size()); }

void CspModel::pop_frame() {
    std::size_t mark = frames_.back();
    frames_.pop_back();
    while (trail_.size() > mark) {
        const TrailEntry& e = trail_.back();
        Domain& d = domains_[static_cast<std::size_t>(e.var)];
        d = Domain::from_bits(d.bits() | e.removed);
        trail_.pop_back();
    }
    clear_queue();
}

void CspModel::commit() {
    if (!frames_.empty())
        throw std::logic_error("commit with open search frames");
    trail_.clear();
    for (std::size_t i = 0; i < domains_.size(); ++i)
        root_domains_[i] = domains_[i];
}

} // namespace nursecp
