// Brute-force reference implementations of everything the index maintains:
// naive suffix sorting, pattern scanning, and a literal replay of the
// update algorithm's intermediate matrices. Deliberately slow and obvious;
// used as ground truth by tests and the verify command.

#pragma once

#include <cstdint>
#include <vector>

#include "edit_op.hpp"

namespace drindex::oracle {

struct text_snapshot {
    std::vector<uint8_t> text;  // includes the trailing 0x00 sentinel
    std::vector<uint64_t> sa;   // 1-based suffix positions, index 0 = rank 1
    std::vector<uint64_t> isa;
    std::vector<uint64_t> lcp;  // lcp[0] = 0
    std::vector<uint8_t> bwt;

    struct run {
        uint8_t head;
        uint64_t len;
    };
    std::vector<run> runs;
    std::vector<uint64_t> sa_s;  // SA at each run start
    std::vector<uint64_t> sa_e;  // SA at each run end

    // arrays of the reversed text (same sentinel at the end)
    std::vector<uint64_t> sa_rev;
    std::vector<uint64_t> lcp_rev;

    uint64_t n() const { return text.size(); }
    uint64_t r() const { return runs.size(); }
};

// Naive O(n^2 log n) construction; text must end with a unique 0x00.
text_snapshot build_snapshot(const std::vector<uint8_t>& text);

// Occurrences of pat in text (sentinel excluded from matching).
uint64_t naive_count(const std::vector<uint8_t>& text, const std::vector<uint8_t>& pat);
std::vector<uint64_t> naive_locate(const std::vector<uint8_t>& text, const std::vector<uint8_t>& pat);

struct lcp_summary {
    double l_avg;
    uint64_t l_max;
    uint64_t r;
};
lcp_summary lcp_stats(const std::vector<uint8_t>& text);

// One step of the literal update replay. M_j is the matrix fed into
// iteration j; x is the row removed from it, y the row the new suffix
// lands on in M_{j-1}. lf[t] is the row of M_{j-1} holding sa[t]-1
// (wrapping per the operation's conventions), or -1 where no such row
// exists (the deletion sink).
struct replay_step {
    uint64_t j;
    std::vector<uint64_t> sa;
    std::vector<uint8_t> l;
    int64_t x = -1;  // 1-based row in M_j, -1 when the iteration removes nothing
    int64_t y = -1;  // 1-based row in M_{j-1}, -1 when it inserts nothing
    std::vector<int64_t> lf;
};

struct replay_trace {
    uint64_t delta = 0;  // value offset applied to surviving rows (deletion only)
    std::vector<replay_step> steps;  // j descending from the first iteration down to 1
    std::vector<uint8_t> new_text;
    std::vector<uint64_t> final_sa;  // SA of new_text, for convenience
    std::vector<uint8_t> final_l;
};

// Runs every iteration of the transformation on explicit arrays.
// Refuses texts longer than cap.
replay_trace replay_iterations(const std::vector<uint8_t>& text, const edit_op& op, uint64_t cap = 64);

// Applies op to a plain byte string (shared by tests and the CLI).
std::vector<uint8_t> apply_edit(const std::vector<uint8_t>& text, const edit_op& op);

}  // namespace drindex::oracle
