// Edit engine: in-place substring insertion and deletion on the run-length
// BWT plus run-boundary samples. Both ops walk the edited rotations from the
// bottom of the conceptual matrix upward, removing the stale row and placing
// the fresh one per iteration, and stop as soon as the two coincide. All row
// values adjacent to the surgery are carried along so the samples never need
// a decoded suffix array.

#include <cassert>
#include <chrono>
#include <stdexcept>

#include "drindex/r_index.hpp"

namespace drindex {

namespace {

uint64_t now_micros() {
    auto t = std::chrono::steady_clock::now().time_since_epoch();
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(t).count());
}

}  // namespace

// Row whose image lands directly above base's image one step later: the next
// row downward carrying the same symbol, else the first row of the next
// larger symbol, wrapping to the smallest symbol at the bottom.
r_index::anchor r_index::up_anchor(uint64_t base) const {
    if (!bwt_.at_run_end(base)) return {base + 1, true, 0};
    uint8_t c = bwt_.access(base);
    int64_t d = bwt_.next_run_with_char(bwt_.run_of(base), c);
    if (d < 0) {
        int cs = bwt_.c_succ(c);
        uint8_t cc = cs < 0 ? bwt_.min_char() : static_cast<uint8_t>(cs);
        d = bwt_.first_run_with_char(cc);
    }
    assert(d >= 1);
    uint64_t run = static_cast<uint64_t>(d);
    return {bwt_.run_start(run), false, run};
}

// Mirror of up_anchor: image lands directly below base's image.
r_index::anchor r_index::down_anchor(uint64_t base) const {
    if (!bwt_.at_run_start(base)) return {base - 1, true, 0};
    uint8_t c = bwt_.access(base);
    int64_t d = bwt_.prev_run_with_char(bwt_.run_of(base), c);
    if (d < 0) {
        int cp = bwt_.c_pred(c);
        uint8_t cc = cp < 0 ? bwt_.max_char() : static_cast<uint8_t>(cp);
        d = bwt_.last_run_with_char(cc);
    }
    assert(d >= 1);
    uint64_t run = static_cast<uint64_t>(d);
    uint64_t row = bwt_.run_start(run) + bwt_.run_len(run) - 1;
    return {row, false, run};
}

// Drop row x and patch the samples of the touched run. above/below carry the
// row values at x+1 and x-1; each is consumed only when the surgery exposes
// that neighbour as a new run boundary.
void r_index::remove_row(uint64_t x, uint64_t above, uint64_t below) {
    run_edit e = bwt_.delete_char(x);
    switch (e.k) {
        case run_edit::kind::shrunk_front:
            assert(above > 0);
            sas_.replace(e.run, above);
            break;
        case run_edit::kind::shrunk_back:
            assert(below > 0);
            sae_.replace(e.run, below);
            break;
        case run_edit::kind::shrunk_inside:
            break;
        case run_edit::kind::dropped_run:
            sas_.erase(e.run);
            sae_.erase(e.run);
            break;
        case run_edit::kind::dropped_merged:
            // runs e.run-1, e.run, e.run+1 fuse; the merged run keeps the
            // left start and the right end
            sas_.erase(e.run);
            sas_.erase(e.run);
            sae_.erase(e.run - 1);
            sae_.erase(e.run - 1);
            break;
        default:
            assert(false);
    }
}

// Place a row with symbol c and the given value at position y. above/below
// carry the row values at y+1 and y-1 after the insertion; a run split
// consumes both, the other cases at most the new value.
void r_index::insert_row(uint64_t y, uint8_t c, uint64_t value, uint64_t above, uint64_t below) {
    run_edit e = bwt_.insert_char(y, c);
    switch (e.k) {
        case run_edit::kind::grew_front:
            sas_.replace(e.run, value);
            break;
        case run_edit::kind::grew_back:
            sae_.replace(e.run, value);
            break;
        case run_edit::kind::grew_inside:
            break;
        case run_edit::kind::fresh_run:
            sas_.insert(e.run, value);
            sae_.insert(e.run, value);
            break;
        case run_edit::kind::split_run: {
            assert(above > 0 && below > 0);
            uint64_t right_end = sae_.access(e.run);
            sae_.replace(e.run, below);
            sae_.insert(e.run + 1, value);
            sae_.insert(e.run + 2, right_end);
            sas_.insert(e.run + 1, value);
            sas_.insert(e.run + 2, above);
            break;
        }
        default:
            assert(false);
    }
}

update_stats r_index::insert_string(uint64_t i, const std::vector<uint8_t>& payload) {
    uint64_t t0 = now_micros();
    uint64_t n = size();
    if (n == 0) throw std::logic_error("r_index: insert into an empty index");
    if (i < 1 || i > n) throw std::out_of_range("r_index: insertion position out of range");
    if (payload.empty()) throw std::invalid_argument("r_index: empty insertion payload");
    for (uint8_t c : payload)
        if (c == 0) throw std::invalid_argument("r_index: payload may not contain the sentinel");
    uint64_t m = payload.size();
    uint64_t big = n + m;  // largest row value after the edit
    auto dec1 = [&](uint64_t v) { return v == 1 ? big : v - 1; };

    update_stats st;

    // seeds, all read from the unedited index
    uint64_t isa_i = suffix_row_walk(i, &st.isa_walk);
    uint8_t c_before = bwt_.access(isa_i);  // symbol left of the edit point, sentinel when i == 1
    uint64_t xc1 = phi_inverse(i);          // row values adjacent to row isa_i
    uint64_t xc2 = phi(i);
    if (xc1 >= i + 1) xc1 += m;
    if (xc2 >= i + 1) xc2 += m;
    uint64_t p = 0;    // row of the suffix starting just before the edit point
    uint64_t bup = 0;  // row values adjacent to row p when the loop reaches it
    uint64_t bdn = 0;
    if (i >= 2) {
        p = bwt_.lf(isa_i);
        bup = phi_inverse(i - 1);
        bdn = phi(i - 1);
        if (bup >= i) bup += m;
        if (bdn >= i) bdn += m;
    }

    // rows strictly after the edit point keep their slots and take their
    // final values up front; the loop then starts at the edit point
    sas_.increment(i, m);
    sae_.increment(i, m);

    uint64_t x = isa_i;           // row to remove, tracked below the window
    uint64_t y = 0;               // previous iteration's insertion row
    uint64_t py1 = 0, py2 = 0;    // row values adjacent to that insertion
    uint64_t q = 0;               // row holding value i+m, the tie pivot
    bool stopped = false;

    for (uint64_t j = i + m; j >= 1; --j) {
        ++st.iterations;
        if (j == i + m) {
            // the row of the old suffix i is replaced by the last fresh row
            uint64_t yy = x;
            if (trace_) trace_->push_back({j, static_cast<int64_t>(x), static_cast<int64_t>(yy)});
            uint64_t y1 = xc1;
            uint64_t y2 = xc2;
            remove_row(x, xc1, xc2);
            insert_row(yy, payload[m - 1], j, y1, y2);
            y = yy;
            py1 = y1;
            py2 = y2;
            q = yy;
            continue;
        }
        if (j >= i) {
            // insertion-only window: place the row of the j-th edited
            // rotation after its successor's slot, breaking the tie against
            // the pending old rows by the symbol before the edit point
            uint8_t cprev = bwt_.access(y);
            uint64_t ins = bwt_.lex_count(cprev) + bwt_.rank(y, cprev);
            if (c_before < cprev || (c_before == cprev && q <= y)) ++ins;
            uint8_t c = j == i ? c_before : payload[j - i - 1];
            uint64_t y1, y2;
            bool hole_up = i >= 2 ? ins == p : ins == 1;
            bool hole_dn = i >= 2 ? ins == p + 1 : ins == 2;
            if (hole_up) {
                y1 = i >= 2 ? i - 1 : big;
            } else {
                anchor a = up_anchor(y);
                y1 = dec1(a.adjacent ? py1 : sas_.access(a.run));
            }
            if (hole_dn) {
                y2 = i >= 2 ? i - 1 : big;
            } else {
                anchor a = down_anchor(y);
                y2 = dec1(a.adjacent ? py2 : sae_.access(a.run));
            }
            if (i >= 2) {
                // a fresh row landing next to the pending old row becomes
                // its neighbour at the boundary iteration
                if (ins == p + 1) bup = j;
                if (ins == p) bdn = j;
                if (ins <= p) ++p;
            }
            if (trace_) trace_->push_back({j, -1, static_cast<int64_t>(ins)});
            insert_row(ins, c, j, y1, y2);
            if (ins <= q) ++q;
            y = ins;
            py1 = y1;
            py2 = y2;
            continue;
        }
        // below the window: remove the old row, re-place its symbol
        uint64_t xx = x;
        if (j == i - 1) {
            xx = p;
            xc1 = bup;
            xc2 = bdn;
        }
        uint8_t cprev = bwt_.access(y);
        uint64_t yy = bwt_.lex_count(cprev) + bwt_.rank(y, cprev);
        if (trace_) trace_->push_back({j, static_cast<int64_t>(xx), static_cast<int64_t>(yy)});
        if (xx == yy) {
            // old and fresh rows coincide from here down; nothing changes
            st.k = i - j;
            stopped = true;
            break;
        }
        uint8_t c = bwt_.access(xx);
        uint64_t xnext = 0, nxc1 = 0, nxc2 = 0;
        if (j >= 2) {
            xnext = bwt_.lex_count(c) + bwt_.rank(xx, c);
            anchor a = up_anchor(xx);
            nxc1 = dec1(a.adjacent ? xc1 : sas_.access(a.run));
            anchor b = down_anchor(xx);
            nxc2 = dec1(b.adjacent ? xc2 : sae_.access(b.run));
        }
        uint64_t y1, y2;
        {
            anchor a = up_anchor(y);
            y1 = dec1(a.adjacent ? py1 : sas_.access(a.run));
            anchor b = down_anchor(y);
            y2 = dec1(b.adjacent ? py2 : sae_.access(b.run));
        }
        remove_row(xx, xc1, xc2);
        insert_row(yy, c, j, y1, y2);
        x = xnext;
        xc1 = nxc1;
        xc2 = nxc2;
        y = yy;
        py1 = y1;
        py2 = y2;
    }
    if (!stopped) st.k = i;
    assert(size() == big);
    st.micros = now_micros() - t0;
    return st;
}

update_stats r_index::insert_char(uint64_t i, uint8_t c) {
    return insert_string(i, std::vector<uint8_t>{c});
}

update_stats r_index::delete_substring(uint64_t i, uint64_t m) {
    uint64_t t0 = now_micros();
    uint64_t n = size();
    if (m < 1 || i < 1 || i + m > n) throw std::out_of_range("r_index: deletion out of range");
    uint64_t nn = n - m;         // size after the edit
    uint64_t delta = n + 1;      // offset parking the stale row values
    auto decd = [&](uint64_t v) { return v == 1 || v == delta + 1 ? nn : v - 1; };

    update_stats st;

    // seeds from the unedited index; the surviving suffix i+m anchors
    // everything, and m backward steps from its row give the symbol that
    // will precede the cut
    uint64_t isa_e = suffix_row_walk(i + m, &st.isa_walk);
    uint64_t t_row = isa_e;
    for (uint64_t s = 0; s < m; ++s) t_row = bwt_.lf(t_row);
    uint8_t cpiv = bwt_.access(t_row);  // T[i-1], sentinel when i == 1
    uint64_t xc1 = phi_inverse(i + m);
    uint64_t xc2 = phi(i + m);
    auto lift = [&](uint64_t v) { return v >= i + m + 1 ? v - m : v + delta; };
    xc1 = lift(xc1);
    xc2 = lift(xc2);
    uint64_t sc1 = xc1;  // row values adjacent to the re-placed suffix i+m row
    uint64_t sc2 = xc2;

    // park every live value, then give the rows after the cut their final
    // values; the loop starts at the cut and the leftover parked values are
    // unparked at the end
    sas_.increment(0, delta);
    sae_.increment(0, delta);
    sas_.decrement(delta + i + m, delta + m);
    sae_.decrement(delta + i + m, delta + m);

    uint64_t x = isa_e;         // row to remove
    uint64_t sinkpos = 0;       // row of the fresh suffix i, the tie pivot
    uint64_t y = 0;             // previous iteration's insertion row
    uint64_t py1 = 0, py2 = 0;  // row values adjacent to that insertion
    bool stopped = false;

    for (uint64_t j = i + m; j >= 1; --j) {
        ++st.iterations;
        if (j == i + m) {
            // the row of old suffix i+m is re-placed as the fresh suffix i
            // row: same slot, symbol swapped to the one before the cut
            uint64_t yy = x;
            if (trace_) trace_->push_back({j, static_cast<int64_t>(x), static_cast<int64_t>(yy)});
            uint64_t xnext = 0, nxc1 = 0, nxc2 = 0;
            if (j >= 2) {
                xnext = bwt_.lf(x);
                anchor a = up_anchor(x);
                nxc1 = decd(a.adjacent ? xc1 : sas_.access(a.run));
                anchor b = down_anchor(x);
                nxc2 = decd(b.adjacent ? xc2 : sae_.access(b.run));
            }
            uint64_t y1 = xc1;
            uint64_t y2 = xc2;
            remove_row(x, xc1, xc2);
            insert_row(yy, cpiv, j - m, y1, y2);
            sinkpos = yy;
            x = xnext;
            xc1 = nxc1;
            xc2 = nxc2;
            continue;
        }
        if (j >= i) {
            // removal-only window: drop the old row; the next removal slot
            // needs the tie correction against the fresh suffix i row, and
            // the chains may have to step around that row, whose image does
            // not exist yet
            uint64_t xx = x;
            assert(xx != sinkpos);
            if (trace_) trace_->push_back({j, static_cast<int64_t>(xx), -1});
            uint8_t cx = bwt_.access(xx);
            uint64_t xnext = 0, nxc1 = 0, nxc2 = 0;
            if (j >= 2) {
                xnext = bwt_.lex_count(cx) + bwt_.rank(xx, cx);
                if (i == 1 || cpiv < cx || (cpiv == cx && sinkpos <= xx)) --xnext;
                {
                    anchor a = up_anchor(xx);
                    if (a.row == sinkpos) {
                        anchor b = up_anchor(sinkpos);
                        nxc1 = decd(b.adjacent ? sc1 : sas_.access(b.run));
                    } else {
                        nxc1 = decd(a.adjacent ? xc1 : sas_.access(a.run));
                    }
                }
                {
                    anchor a = down_anchor(xx);
                    if (a.row == sinkpos) {
                        anchor b = down_anchor(sinkpos);
                        nxc2 = decd(b.adjacent ? sc2 : sae_.access(b.run));
                    } else {
                        nxc2 = decd(a.adjacent ? xc2 : sae_.access(a.run));
                    }
                }
            }
            if (xx == sinkpos + 1) sc1 = xc1;
            if (xx + 1 == sinkpos) sc2 = xc2;
            remove_row(xx, xc1, xc2);
            if (xx < sinkpos) --sinkpos;
            x = xnext;
            xc1 = nxc1;
            xc2 = nxc2;
            continue;
        }
        // below the window: the fresh rows re-enter, seeded off the fresh
        // suffix i row at the boundary
        uint64_t xx = x;
        uint64_t yy;
        if (j == i - 1) {
            uint8_t cs = bwt_.access(sinkpos);
            assert(cs == cpiv);
            yy = bwt_.lex_count(cs) + bwt_.rank(sinkpos, cs);
        } else {
            uint8_t cprev = bwt_.access(y);
            yy = bwt_.lex_count(cprev) + bwt_.rank(y, cprev);
        }
        if (trace_) trace_->push_back({j, static_cast<int64_t>(xx), static_cast<int64_t>(yy)});
        if (xx == yy) {
            // the suffix before the cut reads the same from here down; the
            // leftover parked values only need renaming
            st.k = i - j;
            stopped = true;
            break;
        }
        uint8_t c = bwt_.access(xx);
        uint64_t xnext = 0, nxc1 = 0, nxc2 = 0;
        if (j >= 2) {
            xnext = bwt_.lex_count(c) + bwt_.rank(xx, c);
            anchor a = up_anchor(xx);
            nxc1 = decd(a.adjacent ? xc1 : sas_.access(a.run));
            anchor b = down_anchor(xx);
            nxc2 = decd(b.adjacent ? xc2 : sae_.access(b.run));
        }
        uint64_t y1, y2;
        if (j == i - 1) {
            anchor a = up_anchor(sinkpos);
            y1 = decd(a.adjacent ? sc1 : sas_.access(a.run));
            anchor b = down_anchor(sinkpos);
            y2 = decd(b.adjacent ? sc2 : sae_.access(b.run));
        } else {
            anchor a = up_anchor(y);
            y1 = decd(a.adjacent ? py1 : sas_.access(a.run));
            anchor b = down_anchor(y);
            y2 = decd(b.adjacent ? py2 : sae_.access(b.run));
        }
        remove_row(xx, xc1, xc2);
        insert_row(yy, c, j, y1, y2);
        x = xnext;
        xc1 = nxc1;
        xc2 = nxc2;
        y = yy;
        py1 = y1;
        py2 = y2;
    }
    if (!stopped) st.k = i;

    // rename the untouched parked values back to their final labels
    sas_.decrement(delta, delta);
    sae_.decrement(delta, delta);
    assert(size() == nn);
    st.micros = now_micros() - t0;
    return st;
}

}  // namespace drindex
