// Dynamic byte sequence with rank/select, 1-based positions. Backs the
// run-head string of the run-length BWT.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "char_tree.hpp"

namespace drindex {

class char_sequence {
    detail::char_tree t_;

public:
    char_sequence() = default;
    explicit char_sequence(const std::vector<uint8_t>& xs) { t_.assign(xs); }

    uint64_t size() const { return t_.size(); }

    uint8_t access(uint64_t i) const {
        if (i < 1 || i > size()) throw std::out_of_range("char_sequence: index out of range");
        return t_.access(i - 1);
    }

    // Occurrences of c among the first i symbols; i in [0, size()].
    uint64_t rank(uint64_t i, uint8_t c) const {
        if (i > size()) throw std::out_of_range("char_sequence: rank prefix out of range");
        return t_.rank(i, c);
    }

    // 1-based position of the k-th occurrence of c, or -1 when there is none.
    int64_t select(uint64_t k, uint8_t c) const {
        if (k == 0 || k > t_.count(c)) return -1;
        return static_cast<int64_t>(t_.select(k, c)) + 1;
    }

    uint64_t count(uint8_t c) const { return t_.count(c); }

    void insert(uint64_t i, uint8_t c) {
        if (i < 1 || i > size() + 1) throw std::out_of_range("char_sequence: insert position out of range");
        t_.insert(i - 1, c);
    }

    void erase(uint64_t i) {
        if (i < 1 || i > size()) throw std::out_of_range("char_sequence: erase position out of range");
        t_.erase(i - 1);
    }

    std::vector<uint8_t> to_vector() const { return t_.to_vector(); }

    uint64_t node_visits() const { return t_.node_visits(); }
    void reset_node_visits() const { t_.reset_node_visits(); }
};

}  // namespace drindex
