#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>

namespace nursecp {

enum class RemoveResult { Unchanged, Changed, Wipeout };

/// Finite set of integers in [0, 63], stored as a bit mask.
/// Shift codes are tiny, so one word covers every domain this solver sees.
class Domain {
  public:
    static constexpr int kMaxValue = 63;

    Domain() = default;

    static Domain range(int lo, int hi) {
        assert(0 <= lo && lo <= hi && hi <= kMaxValue);
        std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
        return Domain(mask << lo);
    }

    static Domain single(int v) {
        assert(0 <= v && v <= kMaxValue);
        return Domain(std::uint64_t{1} << v);
    }

    static Domain of(std::initializer_list<int> values) {
        std::uint64_t bits = 0;
        for (int v : values) {
            assert(0 <= v && v <= kMaxValue);
            bits |= std::uint64_t{1} << v;
        }
        return Domain(bits);
    }

    static Domain from_bits(std::uint64_t bits) { return Domain(bits); }

    bool contains(int v) const {
        return v >= 0 && v <= kMaxValue && ((bits_ >> v) & 1u) != 0;
    }

    int size() const { return std::popcount(bits_); }
    bool empty() const { return bits_ == 0; }
    bool is_fixed() const { return std::has_single_bit(bits_); }

    /// Smallest value; only meaningful on a non-empty domain.
    int min() const {
        assert(!empty());
        return std::countr_zero(bits_);
    }

    int max() const {
        assert(!empty());
        return 63 - std::countl_zero(bits_);
    }

    /// The single remaining value of a fixed domain.
    int value() const {
        assert(is_fixed());
        return min();
    }

    /// Removes v. Returns true when v was present.
    bool remove(int v) {
        if (!contains(v))
            return false;
        bits_ &= ~(std::uint64_t{1} << v);
        return true;
    }

    bool is_subset_of(std::uint64_t mask) const { return (bits_ & ~mask) == 0; }
    bool intersects(std::uint64_t mask) const { return (bits_ & mask) != 0; }

    std::uint64_t bits() const { return bits_; }

    bool operator==(const Domain&) const = default;

    /// Ascending-value iteration.
    class const_iterator {
      public:
        using iterator_category = std::input_iterator_tag;
        using value_type = int;
        using difference_type = std::ptrdiff_t;
        using pointer = const int*;
        using reference = int;

        explicit const_iterator(std::uint64_t rest) : rest_(rest) {}
        int operator*() const { return std::countr_zero(rest_); }
        const_iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        const_iterator operator++(int) {
            const_iterator old = *this;
            ++*this;
            return old;
        }
        bool operator==(const const_iterator& other) const { return rest_ == other.rest_; }
        bool operator!=(const const_iterator& other) const { return rest_ != other.rest_; }

      private:
        std::uint64_t rest_;
    };

    const_iterator begin() const { return const_iterator(bits_); }
    const_iterator end() const { return const_iterator(0); }

  private:
    explicit Domain(std::uint64_t bits) : bits_(bits) {}

    std::uint64_t bits_ = 0;
};

} // namespace nursecp
