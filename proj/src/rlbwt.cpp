#include "drindex/rlbwt.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace drindex {

namespace {

std::vector<std::pair<uint8_t, uint64_t>> encode_runs(const std::vector<uint8_t>& l) {
    std::vector<std::pair<uint8_t, uint64_t>> rs;
    for (uint8_t c : l) {
        if (!rs.empty() && rs.back().first == c) {
            ++rs.back().second;
        } else {
            rs.emplace_back(c, 1);
        }
    }
    return rs;
}

}  // namespace

rlbwt::rlbwt(const std::vector<std::pair<uint8_t, uint64_t>>& rs) {
    uint64_t r = rs.size();
    std::vector<uint8_t> heads(r);
    std::vector<uint64_t> lens(r);
    for (uint64_t v = 0; v < r; ++v) {
        heads[v] = rs[v].first;
        lens[v] = rs[v].second;
        if (lens[v] == 0) throw std::invalid_argument("rlbwt: empty run");
        if (v + 1 < r && heads[v] == rs[v + 1].first)
            throw std::invalid_argument("rlbwt: adjacent runs share a head");
    }
    // regroup by (head, run index); stable sort keeps run order inside a head
    std::vector<uint64_t> pi(r);
    std::iota(pi.begin(), pi.end(), 0);
    std::stable_sort(pi.begin(), pi.end(),
                     [&](uint64_t a, uint64_t b) { return heads[a] < heads[b]; });
    std::vector<uint64_t> grouped_lens(r), deltas(r);
    uint64_t prev_abs = 0;
    for (uint64_t k = 0; k < r; ++k) {
        grouped_lens[k] = lens[pi[k]];
        uint64_t abs = static_cast<uint64_t>(heads[pi[k]]) + 1;
        deltas[k] = abs - prev_abs;
        prev_abs = abs;
    }
    s1_ = char_sequence(heads);
    s2_ = partial_sum_list(lens);
    s3_ = partial_sum_list(grouped_lens);
    s4_ = partial_sum_list(deltas);
}

rlbwt::rlbwt(const std::vector<uint8_t>& l) : rlbwt(encode_runs(l)) {}

uint64_t rlbwt::lex_count_runs(uint8_t c) const {
    return s4_.search(static_cast<uint64_t>(c) + 1) - 1;
}

uint64_t rlbwt::grouped_pos(uint64_t v, uint8_t c) const {
    assert(s1_.access(v) == c);
    return lex_count_runs(c) + s1_.rank(v, c);
}

uint8_t rlbwt::run_char(uint64_t v) const { return s1_.access(v); }

uint64_t rlbwt::run_len(uint64_t v) const { return s2_.get(v); }

uint64_t rlbwt::run_start(uint64_t v) const {
    if (v < 1 || v > runs()) throw std::out_of_range("rlbwt: run index out of range");
    return s2_.sum(v - 1) + 1;
}

uint64_t rlbwt::run_of(uint64_t pos) const {
    if (pos < 1 || pos > size()) throw std::out_of_range("rlbwt: position out of range");
    return s2_.search(pos);
}

bool rlbwt::at_run_start(uint64_t pos) const { return pos == run_start(run_of(pos)); }

bool rlbwt::at_run_end(uint64_t pos) const {
    uint64_t v = run_of(pos);
    return pos == s2_.sum(v);
}

uint8_t rlbwt::access(uint64_t pos) const { return s1_.access(run_of(pos)); }

uint64_t rlbwt::rank(uint64_t pos, uint8_t c) const {
    if (pos == 0) return 0;
    uint64_t v = run_of(pos);
    uint64_t k = s1_.rank(v, c);
    uint64_t lcr = lex_count_runs(c);
    uint64_t cnt = s3_.sum(lcr + k) - s3_.sum(lcr);
    // run v is only partially covered when it carries c itself
    if (s1_.access(v) == c) cnt -= s2_.sum(v) - pos;
    return cnt;
}

uint64_t rlbwt::char_count(uint8_t c) const {
    uint64_t k = s1_.count(c);
    if (k == 0) return 0;
    uint64_t lcr = lex_count_runs(c);
    return s3_.sum(lcr + k) - s3_.sum(lcr);
}

uint64_t rlbwt::select(uint64_t k, uint8_t c) const {
    if (k < 1 || k > char_count(c)) throw std::out_of_range("rlbwt: select rank out of range");
    uint64_t lcr = lex_count_runs(c);
    uint64_t base = s3_.sum(lcr);
    uint64_t g = s3_.search(base + k);  // grouped slot of the run holding the k-th c
    int64_t v = s1_.select(g - lcr, c);
    assert(v > 0);
    uint64_t within = k - (s3_.sum(g - 1) - base);
    return run_start(static_cast<uint64_t>(v)) + within - 1;
}

uint64_t rlbwt::lex_count(uint8_t c) const { return s3_.sum(lex_count_runs(c)); }

uint8_t rlbwt::lex_search(uint64_t j) const {
    if (j < 1 || j > size()) throw std::out_of_range("rlbwt: lex rank out of range");
    uint64_t g = s3_.search(j);
    return static_cast<uint8_t>(s4_.sum(g) - 1);
}

uint64_t rlbwt::lf(uint64_t pos) const {
    uint8_t c = access(pos);
    return lex_count(c) + rank(pos, c);
}

uint64_t rlbwt::lf_inverse(uint64_t j) const {
    uint8_t c = lex_search(j);
    return select(j - lex_count(c), c);
}

int64_t rlbwt::next_run_with_char(uint64_t v, uint8_t c) const {
    return s1_.select(s1_.rank(v, c) + 1, c);
}

int64_t rlbwt::prev_run_with_char(uint64_t v, uint8_t c) const {
    return s1_.select(s1_.rank(v - 1, c), c);
}

int rlbwt::c_succ(uint8_t c) const {
    uint64_t g = s4_.search(static_cast<uint64_t>(c) + 2);
    if (g > runs()) return -1;
    return static_cast<int>(s4_.sum(g) - 1);
}

int rlbwt::c_pred(uint8_t c) const {
    uint64_t g = lex_count_runs(c);
    if (g == 0) return -1;
    return static_cast<int>(s4_.sum(g) - 1);
}

uint8_t rlbwt::min_char() const {
    if (runs() == 0) throw std::out_of_range("rlbwt: empty");
    return static_cast<uint8_t>(s4_.sum(1) - 1);
}

uint8_t rlbwt::max_char() const {
    if (runs() == 0) throw std::out_of_range("rlbwt: empty");
    return static_cast<uint8_t>(s4_.sum(runs()) - 1);
}

void rlbwt::bump_run(uint64_t v, uint8_t c, int64_t d) {
    s2_.add(v, d);
    s3_.add(grouped_pos(v, c), d);
}

void rlbwt::insert_run(uint64_t v, uint8_t c, uint64_t len) {
    // grouped slot for the new run: after all smaller heads and earlier c-runs
    uint64_t j = lex_count_runs(c) + s1_.rank(v - 1, c) + 1;
    uint64_t abs = static_cast<uint64_t>(c) + 1;
    uint64_t delta = abs - s4_.sum(j - 1);
    s1_.insert(v, c);
    s2_.insert(v, len);
    s3_.insert(j, len);
    s4_.insert(j, delta);
    // the displaced slot keeps its own head
    if (j + 1 <= s4_.size()) s4_.add(j + 1, -static_cast<int64_t>(delta));
}

void rlbwt::remove_run(uint64_t v) {
    uint8_t c = s1_.access(v);
    uint64_t j = grouped_pos(v, c);
    uint64_t delta = s4_.get(j);
    s1_.erase(v);
    s2_.erase(v);
    s3_.erase(j);
    s4_.erase(j);
    if (j <= s4_.size()) s4_.add(j, static_cast<int64_t>(delta));
}

void rlbwt::split_run(uint64_t v, uint64_t left_len) {
    uint8_t c = s1_.access(v);
    uint64_t j = grouped_pos(v, c);
    s1_.insert(v + 1, c);
    s2_.divide(v, left_len);
    s3_.divide(j, left_len);
    s4_.insert(j + 1, 0);  // same head as slot j
}

void rlbwt::merge_runs(uint64_t v) {
    uint8_t c = s1_.access(v);
    assert(s1_.access(v + 1) == c);
    uint64_t j = grouped_pos(v, c);
    assert(s4_.get(j + 1) == 0);
    s1_.erase(v + 1);
    s2_.merge(v);
    s3_.merge(j);
    s4_.erase(j + 1);
}

run_edit rlbwt::insert_char(uint64_t pos, uint8_t c) {
    uint64_t n = size();
    if (pos < 1 || pos > n + 1) throw std::out_of_range("rlbwt: insert position out of range");
    if (pos <= n) {
        uint64_t v = run_of(pos);
        if (s1_.access(v) == c) {
            bool front = pos == run_start(v);
            bump_run(v, c, 1);
            return {front ? run_edit::kind::grew_front : run_edit::kind::grew_inside, v};
        }
    }
    if (pos >= 2) {
        uint64_t w = run_of(pos - 1);
        if (s1_.access(w) == c) {
            assert(pos - 1 == s2_.sum(w));
            bump_run(w, c, 1);
            return {run_edit::kind::grew_back, w};
        }
    }
    if (pos == n + 1) {
        insert_run(runs() + 1, c, 1);
        return {run_edit::kind::fresh_run, runs()};
    }
    uint64_t v = run_of(pos);
    if (pos == run_start(v)) {
        insert_run(v, c, 1);
        return {run_edit::kind::fresh_run, v};
    }
    split_run(v, pos - run_start(v));
    insert_run(v + 1, c, 1);
    return {run_edit::kind::split_run, v};
}

run_edit rlbwt::delete_char(uint64_t pos) {
    uint64_t v = run_of(pos);
    uint8_t c = s1_.access(v);
    uint64_t tv = run_start(v);
    uint64_t lv = s2_.get(v);
    if (lv >= 2) {
        bump_run(v, c, -1);
        if (pos == tv) return {run_edit::kind::shrunk_front, v};
        if (pos == tv + lv - 1) return {run_edit::kind::shrunk_back, v};
        return {run_edit::kind::shrunk_inside, v};
    }
    bool fuse = v >= 2 && v < runs() && s1_.access(v - 1) == s1_.access(v + 1);
    remove_run(v);
    if (fuse) {
        merge_runs(v - 1);
        return {run_edit::kind::dropped_merged, v};
    }
    return {run_edit::kind::dropped_run, v};
}

std::vector<uint8_t> rlbwt::to_vector() const {
    std::vector<uint8_t> out;
    out.reserve(size());
    for (uint64_t v = 1; v <= runs(); ++v) {
        out.insert(out.end(), run_len(v), run_char(v));
    }
    return out;
}

std::vector<std::pair<uint8_t, uint64_t>> rlbwt::runs_vector() const {
    std::vector<std::pair<uint8_t, uint64_t>> rs;
    rs.reserve(runs());
    for (uint64_t v = 1; v <= runs(); ++v) rs.emplace_back(run_char(v), run_len(v));
    return rs;
}

bool rlbwt::coherent() const {
    uint64_t r = runs();
    if (s2_.size() != r || s3_.size() != r || s4_.size() != r) return false;
    if (s2_.total() != s3_.total()) return false;
    std::vector<uint8_t> heads = s1_.to_vector();
    std::vector<uint64_t> lens = s2_.to_vector();
    for (uint64_t v = 0; v + 1 < r; ++v) {
        if (heads[v] == heads[v + 1]) return false;
    }
    std::vector<uint64_t> pi(r);
    std::iota(pi.begin(), pi.end(), 0);
    std::stable_sort(pi.begin(), pi.end(),
                     [&](uint64_t a, uint64_t b) { return heads[a] < heads[b]; });
    for (uint64_t k = 0; k < r; ++k) {
        if (s3_.get(k + 1) != lens[pi[k]]) return false;
        if (s4_.sum(k + 1) != static_cast<uint64_t>(heads[pi[k]]) + 1) return false;
    }
    return true;
}

uint64_t rlbwt::node_visits() const {
    return s1_.node_visits() + s2_.node_visits() + s3_.node_visits() + s4_.node_visits();
}

void rlbwt::reset_node_visits() const {
    s1_.reset_node_visits();
    s2_.reset_node_visits();
    s3_.reset_node_visits();
    s4_.reset_node_visits();
}

}  // namespace drindex
