// Dynamic compressed self-index over a sentinel-terminated byte string.
// Holds only the run-length BWT and the suffix-array samples at run
// boundaries. Queries and in-place edits touch O(log) tree nodes per step;
// edits pay an extra data-dependent number of fix-up iterations.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rlbwt.hpp"
#include "sampled_sa.hpp"

namespace drindex {

struct sa_interval {
    uint64_t sp;
    uint64_t ep;
    uint64_t sa_sp;  // suffix-array value at sp (the toehold)
};

struct update_stats {
    uint64_t k = 0;           // fix-up iterations below the edit until old and new rows meet
    uint64_t iterations = 0;  // executed main-loop iterations
    uint64_t isa_walk = 0;    // steps of the row walk seeding the update
    uint64_t micros = 0;
};

// one executed iteration, for differential tests; -1 marks "no removal"
// (insertion window) or "no insertion" (deletion window)
struct update_step {
    uint64_t j;
    int64_t x;
    int64_t y;
};

class r_index {
    rlbwt bwt_;
    sampled_sa sas_;  // suffix-array value at each run start
    sampled_sa sae_;  // suffix-array value at each run end
    std::vector<update_step>* trace_ = nullptr;

    uint64_t suffix_row_walk(uint64_t i, uint64_t* walk) const;

    // edit engine internals (r_index_update.cpp). An anchor names the row
    // whose mapped image sits directly above (or below) a tracked row one
    // step later; adjacent anchors read a carried value, the rest read a
    // run sample.
    struct anchor {
        uint64_t row;
        bool adjacent;
        uint64_t run;
    };
    anchor up_anchor(uint64_t base) const;
    anchor down_anchor(uint64_t base) const;
    void remove_row(uint64_t x, uint64_t above, uint64_t below);
    void insert_row(uint64_t y, uint8_t c, uint64_t value, uint64_t above, uint64_t below);

public:
    r_index() = default;
    r_index(const std::vector<std::pair<uint8_t, uint64_t>>& runs,
            const std::vector<uint64_t>& sa_start,
            const std::vector<uint64_t>& sa_end);
    static r_index sentinel_only();

    uint64_t size() const { return bwt_.size(); }
    uint64_t runs() const { return bwt_.runs(); }

    const rlbwt& bwt() const { return bwt_; }
    const sampled_sa& start_samples() const { return sas_; }
    const sampled_sa& end_samples() const { return sae_; }

    // queries ------------------------------------------------------------
    std::optional<sa_interval> find(const std::vector<uint8_t>& pat) const;
    uint64_t count(const std::vector<uint8_t>& pat) const;
    std::vector<uint64_t> locate(const std::vector<uint8_t>& pat) const;  // sorted

    uint64_t phi(uint64_t i) const;          // suffix-array predecessor value, circular
    uint64_t phi_inverse(uint64_t i) const;  // suffix-array successor value, circular

    uint64_t row_of_suffix(uint64_t i, uint64_t* walk = nullptr) const;  // inverse suffix array
    uint64_t prev_row(uint64_t t) const { return bwt_.lf(t); }
    uint8_t char_at_row(uint64_t t) const { return bwt_.access(t); }

    std::vector<uint8_t> extract_text() const;  // whole text, sentinel last

    // edits --------------------------------------------------------------
    update_stats insert_string(uint64_t i, const std::vector<uint8_t>& payload);
    update_stats insert_char(uint64_t i, uint8_t c);
    update_stats delete_substring(uint64_t i, uint64_t m);
    void set_trace(std::vector<update_step>* sink) { trace_ = sink; }

    bool coherent() const;
    uint64_t node_visits() const { return bwt_.node_visits() + sas_.node_visits() + sae_.node_visits(); }
    void reset_node_visits() const {
        bwt_.reset_node_visits();
        sas_.reset_node_visits();
        sae_.reset_node_visits();
    }
};

}  // namespace drindex
