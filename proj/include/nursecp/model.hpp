#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "nursecp/domain.hpp"
#include "nursecp/propagator.hpp"

namespace nursecp {

enum class PropagationResult { Consistent, Inconsistent };

/// A finite-domain CSP: one domain per variable, a propagator store, and a
/// FIFO propagation queue. Domains only ever narrow; the trail undoes
/// removals on backtracking. Single-threaded by design.
class CspModel {
  public:
    VarId add_variable(Domain initial);

    /// Registers a propagator, wires subscriptions and queues it.
    /// Throws std::invalid_argument on an ill-formed scope or parameters.
    std::size_t add_propagator(Propagator p);

    int num_variables() const { return static_cast<int>(domains_.size()); }
    std::size_t num_propagators() const { return propagators_.size(); }
    const Domain& domain(VarId v) const { return domains_[static_cast<std::size_t>(v)]; }
    const Domain& root_domain(VarId v) const { return root_domains_[static_cast<std::size_t>(v)]; }
    const Propagator& propagator(std::size_t index) const { return propagators_[index]; }
    const std::vector<int>& subscriptions(VarId v) const {
        return subscriptions_[static_cast<std::size_t>(v)];
    }

    /// Replaces a variable's domain outside of search (model setup, tests).
    /// Resets both the current and the root domain; not trailed.
    void set_domain(VarId v, Domain d);

    /// Removes one value, recording it on the trail and waking subscribers.
    RemoveResult remove_value(VarId v, int value);

    /// Removes every value in `mask` at once.
    RemoveResult remove_mask(VarId v, std::uint64_t mask);

    /// Narrows a variable to a single value. Fixing to an absent value
    /// empties the domain and reports Wipeout.
    RemoveResult fix_value(VarId v, int value);

    /// Runs every propagator to a mutual fixpoint.
    PropagationResult propagate_fixpoint();

    /// Runs only the currently queued propagators to fixpoint.
    PropagationResult run_queue();

    /// Runs a single propagator once, unconditionally.
    PropagationResult run_propagator(std::size_t index);

    void enqueue_all();

    long long propagation_count() const { return propagations_; }

    // Search support: a frame brackets all removals of one search node.
    void push_frame();
    void pop_frame();

    /// Forgets the trail (keeps current domains). Only valid with no open
    /// frames; turns the current state into the new baseline.
    void commit();

  private:
    void wake(VarId v);
    void clear_queue();

    struct TrailEntry {
        VarId var;
        std::uint64_t removed;
    };

    std::vector<Domain> domains_;
    std::vector<Domain> root_domains_;
    std::vector<Propagator> propagators_;
    std::vector<std::vector<int>> subscriptions_;
    std::vector<char> queued_;
    std::deque<int> queue_;
    std::vector<TrailEntry> trail_;
    std::vector<std::size_t> frames_;
    long long propagations_ = 0;
};

} // namespace nursecp
