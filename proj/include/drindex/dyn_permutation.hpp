// Dynamic permutation of {1..n}: access, inverse access, and the
// shift-and-insert / delete-and-shift edits, all O(log n). Realized as two
// ticket trees over one ticket population: one in position order, one in
// value order; a lookup in either tree is a rank in the other.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ticket_tree.hpp"

namespace drindex {

class dyn_permutation {
    detail::ticket_tree fwd_;  // position order
    detail::ticket_tree inv_;  // value order

    void destroy_tickets() {
        for (detail::pticket* t : fwd_.to_vector()) delete t;
    }

    void build(const std::vector<uint64_t>& vals) {
        std::vector<detail::pticket*> by_value(vals.size(), nullptr);
        for (uint64_t i = 0; i < vals.size(); ++i) {
            if (vals[i] < 1 || vals[i] > vals.size() || by_value[vals[i] - 1] != nullptr) {
                throw std::invalid_argument("dyn_permutation: not a permutation of 1..n");
            }
            auto* t = new detail::pticket;
            fwd_.insert(i, t);
            by_value[vals[i] - 1] = t;
        }
        for (uint64_t v = 0; v < by_value.size(); ++v) inv_.insert(v, by_value[v]);
    }

public:
    dyn_permutation() : fwd_(0), inv_(1) {}
    explicit dyn_permutation(const std::vector<uint64_t>& vals) : fwd_(0), inv_(1) { build(vals); }
    ~dyn_permutation() { destroy_tickets(); }

    dyn_permutation(const dyn_permutation& o) : fwd_(0), inv_(1) { build(o.to_vector()); }
    dyn_permutation& operator=(const dyn_permutation& o) {
        if (this != &o) {
            std::vector<uint64_t> vals = o.to_vector();
            destroy_tickets();
            fwd_ = detail::ticket_tree(0);
            inv_ = detail::ticket_tree(1);
            build(vals);
        }
        return *this;
    }
    dyn_permutation(dyn_permutation&&) noexcept = default;
    dyn_permutation& operator=(dyn_permutation&& o) noexcept {
        if (this != &o) {
            destroy_tickets();
            fwd_ = std::move(o.fwd_);
            inv_ = std::move(o.inv_);
        }
        return *this;
    }

    uint64_t size() const { return fwd_.size(); }

    // Value at position i.
    uint64_t access(uint64_t i) const {
        if (i < 1 || i > size()) throw std::out_of_range("dyn_permutation: position out of range");
        return inv_.rank(fwd_.at(i - 1)) + 1;
    }

    // Position holding value pi.
    uint64_t inv_access(uint64_t pi) const {
        if (pi < 1 || pi > size()) throw std::out_of_range("dyn_permutation: value out of range");
        return fwd_.rank(inv_.at(pi - 1)) + 1;
    }

    // Shifts every value >= pi up by one, then inserts value pi at position i.
    void increment_insert(uint64_t i, uint64_t pi) {
        if (i < 1 || i > size() + 1) throw std::out_of_range("dyn_permutation: insert position out of range");
        if (pi < 1 || pi > size() + 1) throw std::out_of_range("dyn_permutation: insert value out of range");
        auto* t = new detail::pticket;
        fwd_.insert(i - 1, t);
        inv_.insert(pi - 1, t);
    }

    // Removes position i, shifting every value above the removed one down by one.
    void decrement_delete(uint64_t i) {
        if (i < 1 || i > size()) throw std::out_of_range("dyn_permutation: delete position out of range");
        detail::pticket* t = fwd_.at(i - 1);
        uint64_t pi = inv_.rank(t);
        fwd_.erase(i - 1);
        inv_.erase(pi);
        delete t;
    }

    // Cyclically moves the first k positions behind the rest; values ride along.
    void rotate(uint64_t k) {
        if (k > size()) throw std::out_of_range("dyn_permutation: rotate count out of range");
        fwd_.rotate(k);
    }

    // Cyclically moves the first k value ranks behind the rest: value v maps to
    // v - k when v > k and to v + size() - k otherwise. Positions stay put.
    void rotate_values(uint64_t k) {
        if (k > size()) throw std::out_of_range("dyn_permutation: rotate count out of range");
        inv_.rotate(k);
    }

    std::vector<uint64_t> to_vector() const {
        std::vector<uint64_t> out;
        out.reserve(size());
        for (uint64_t i = 1; i <= size(); ++i) out.push_back(access(i));
        return out;
    }

    uint64_t node_visits() const { return fwd_.node_visits() + inv_.node_visits(); }
    void reset_node_visits() const {
        fwd_.reset_node_visits();
        inv_.reset_node_visits();
    }
};

}  // namespace drindex
