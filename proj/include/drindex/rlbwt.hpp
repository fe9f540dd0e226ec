// Run-length encoded BWT with O(log r) queries and single-character
// surgery. Four cooperating structures:
//   s1: run head characters in run order
//   s2: run lengths in run order (prefix sums locate run starts)
//   s3: run lengths regrouped by (head character, run index)
//   s4: head-character deltas in the regrouped order, so the k-th grouped
//       head equals sum(s4, k) - 1 (characters are stored shifted by one)
// Surgery reports what happened to the run structure so the caller can
// patch suffix-array samples indexed by run.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "char_sequence.hpp"
#include "partial_sum_list.hpp"

namespace drindex {

struct run_edit {
    enum class kind : uint8_t {
        grew_front,     // character joined run `run` as its new first symbol
        grew_back,      // character joined run `run` as its new last symbol
        grew_inside,    // character landed strictly inside run `run`
        fresh_run,      // new singleton run created at index `run`
        split_run,      // run `run` split; singleton at run+1, right part at run+2
        shrunk_front,   // first symbol of run `run` removed
        shrunk_back,    // last symbol of run `run` removed
        shrunk_inside,  // interior symbol of run `run` removed
        dropped_run,    // singleton run `run` removed
        dropped_merged  // singleton run `run` removed, neighbours fused into run-1
    };
    kind k;
    uint64_t run;
};

class rlbwt {
    char_sequence s1_;
    partial_sum_list s2_;
    partial_sum_list s3_;
    partial_sum_list s4_;

    uint64_t lex_count_runs(uint8_t c) const;           // runs whose head is smaller than c
    uint64_t grouped_pos(uint64_t v, uint8_t c) const;  // slot of run v in the regrouped order
    void bump_run(uint64_t v, uint8_t c, int64_t d);
    void insert_run(uint64_t v, uint8_t c, uint64_t len);
    void remove_run(uint64_t v);
    void split_run(uint64_t v, uint64_t left_len);
    void merge_runs(uint64_t v);

public:
    rlbwt() = default;
    explicit rlbwt(const std::vector<uint8_t>& l);
    explicit rlbwt(const std::vector<std::pair<uint8_t, uint64_t>>& rs);

    uint64_t size() const { return s2_.total(); }
    uint64_t runs() const { return s1_.size(); }

    uint8_t run_char(uint64_t v) const;
    uint64_t run_len(uint64_t v) const;
    uint64_t run_start(uint64_t v) const;
    uint64_t run_of(uint64_t pos) const;
    bool at_run_start(uint64_t pos) const;
    bool at_run_end(uint64_t pos) const;

    uint8_t access(uint64_t pos) const;
    uint64_t rank(uint64_t pos, uint8_t c) const;  // pos may be 0
    uint64_t select(uint64_t k, uint8_t c) const;
    uint64_t char_count(uint8_t c) const;
    uint64_t lex_count(uint8_t c) const;  // symbols of L smaller than c
    uint8_t lex_search(uint64_t j) const;
    uint64_t lf(uint64_t pos) const;
    uint64_t lf_inverse(uint64_t j) const;

    int64_t first_run_with_char(uint8_t c) const { return s1_.select(1, c); }
    int64_t last_run_with_char(uint8_t c) const { return s1_.select(s1_.count(c), c); }
    int64_t next_run_with_char(uint64_t v, uint8_t c) const;  // smallest d >= v+1 with head c
    int64_t prev_run_with_char(uint64_t v, uint8_t c) const;  // largest d <= v-1 with head c
    int c_succ(uint8_t c) const;                              // smallest head char > c, -1 if none
    int c_pred(uint8_t c) const;                              // largest head char < c, -1 if none
    uint8_t min_char() const;
    uint8_t max_char() const;

    run_edit insert_char(uint64_t pos, uint8_t c);  // L <- L[1..pos-1] c L[pos..]
    run_edit delete_char(uint64_t pos);

    std::vector<uint8_t> to_vector() const;
    std::vector<std::pair<uint8_t, uint64_t>> runs_vector() const;
    bool coherent() const;  // O(r log r) structural audit for tests

    uint64_t node_visits() const;
    void reset_node_visits() const;
};

}  // namespace drindex
