// Dynamic partial-sum list: a 1-based sequence of non-negative integers
// with prefix sums, predecessor search on sums, and the split/merge edits
// used to maintain run-length structures.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "psum_tree.hpp"

namespace drindex {

class partial_sum_list {
    detail::psum_tree t_;

    void check_index(uint64_t i) const {
        if (i < 1 || i > size()) throw std::out_of_range("partial_sum_list: index out of range");
    }

public:
    partial_sum_list() = default;
    explicit partial_sum_list(const std::vector<uint64_t>& xs) { t_.assign(xs); }

    uint64_t size() const { return t_.size(); }
    uint64_t total() const { return t_.total(); }

    // Sum of the first i elements; i may be 0 (empty prefix) up to size().
    uint64_t sum(uint64_t i) const {
        if (i > size()) throw std::out_of_range("partial_sum_list: prefix length out of range");
        return t_.prefix_sum(i);
    }

    // Smallest i with sum(i) >= t, or size()+1 when even the full sum falls short.
    uint64_t search(uint64_t t) const { return t_.search_sum(t); }

    uint64_t get(uint64_t i) const {
        check_index(i);
        return t_.get(i - 1);
    }

    void set(uint64_t i, uint64_t v) {
        check_index(i);
        t_.set(i - 1, v);
    }

    void add(uint64_t i, int64_t delta) {
        check_index(i);
        if (delta < 0 && t_.get(i - 1) < static_cast<uint64_t>(-delta))
            throw std::out_of_range("partial_sum_list: add would underflow");
        t_.add(i - 1, delta);
    }

    // Inserts v as the new i-th element, i in [1, size()+1].
    void insert(uint64_t i, uint64_t v) {
        if (i < 1 || i > size() + 1) throw std::out_of_range("partial_sum_list: insert position out of range");
        t_.insert(i - 1, v);
    }

    void erase(uint64_t i) {
        check_index(i);
        t_.erase(i - 1);
    }

    // Folds element i+1 into element i.
    void merge(uint64_t i) {
        check_index(i);
        check_index(i + 1);
        uint64_t v = t_.get(i);
        t_.erase(i);
        t_.add(i - 1, static_cast<int64_t>(v));
    }

    // Splits element i into (t, old-t); the remainder becomes element i+1.
    void divide(uint64_t i, uint64_t t) {
        check_index(i);
        uint64_t v = t_.get(i - 1);
        if (t > v) throw std::out_of_range("partial_sum_list: divide amount exceeds element");
        t_.set(i - 1, t);
        t_.insert(i, v - t);
    }

    // Moves elements 1..k behind the rest, preserving their order.
    void rotate(uint64_t k) {
        if (k > size()) throw std::out_of_range("partial_sum_list: rotate count out of range");
        t_.rotate(k);
    }

    std::vector<uint64_t> to_vector() const { return t_.to_vector(); }

    uint64_t node_visits() const { return t_.node_visits(); }
    void reset_node_visits() const { t_.reset_node_visits(); }
};

}  // namespace drindex
