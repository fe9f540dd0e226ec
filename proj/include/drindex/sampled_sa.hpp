// Run-indexed list of distinct suffix-array samples with order statistics
// and the bulk value shifts used during edits. A dynamic permutation keeps
// each entry's sorted rank; a gap list keeps the sorted values themselves,
// so shifting every value above a threshold is O(log r).

#pragma once

#include <cstdint>
#include <vector>

#include "dyn_permutation.hpp"
#include "partial_sum_list.hpp"

namespace drindex {

class sampled_sa {
    dyn_permutation perm_;    // entry i -> sorted rank of its value
    partial_sum_list gaps_;   // gap j = j-th smallest value minus its predecessor

public:
    sampled_sa() = default;
    explicit sampled_sa(const std::vector<uint64_t>& vals);

    uint64_t size() const { return perm_.size(); }

    uint64_t access(uint64_t i) const;  // value of entry i
    uint64_t order(uint64_t k) const;   // entry holding the k-th smallest value
    uint64_t count(uint64_t t) const;   // values strictly smaller than t
    bool has_value(uint64_t t) const;

    void insert(uint64_t i, uint64_t t);  // t must be absent
    void erase(uint64_t i);
    void replace(uint64_t i, uint64_t t);

    // Every value above t grows by k; order never changes.
    void increment(uint64_t t, uint64_t k);
    // Every value above t shrinks by k. Legal only when the shifted block
    // either stays above the rest or lands entirely below it.
    void decrement(uint64_t t, uint64_t k);

    std::vector<uint64_t> to_vector() const;

    uint64_t node_visits() const { return perm_.node_visits() + gaps_.node_visits(); }
    void reset_node_visits() const {
        perm_.reset_node_visits();
        gaps_.reset_node_visits();
    }
};

}  // namespace drindex
