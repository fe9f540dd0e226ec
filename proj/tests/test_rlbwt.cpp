#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "drindex/rlbwt.hpp"

using drindex::rlbwt;
using drindex::run_edit;

static std::vector<uint8_t> bv(const char* s) {
    std::vector<uint8_t> v;
    for (; *s; ++s) v.push_back(*s == '$' ? 0 : static_cast<uint8_t>(*s));
    return v;
}

// flat-model answers -----------------------------------------------------

static uint64_t m_rank(const std::vector<uint8_t>& m, uint64_t pos, uint8_t c) {
    uint64_t k = 0;
    for (uint64_t t = 0; t < pos; ++t) k += (m[t] == c);
    return k;
}

static uint64_t m_lex_count(const std::vector<uint8_t>& m, uint8_t c) {
    uint64_t k = 0;
    for (uint8_t x : m) k += (x < c);
    return k;
}

static int64_t m_select(const std::vector<uint8_t>& m, uint64_t k, uint8_t c) {
    uint64_t seen = 0;
    for (uint64_t t = 0; t < m.size(); ++t) {
        if (m[t] == c && ++seen == k) return static_cast<int64_t>(t) + 1;
    }
    return -1;
}

static uint64_t m_lf(const std::vector<uint8_t>& m, uint64_t pos) {
    uint8_t c = m[pos - 1];
    return m_lex_count(m, c) + m_rank(m, pos, c);
}

static std::vector<std::pair<uint8_t, uint64_t>> m_runs(const std::vector<uint8_t>& m) {
    std::vector<std::pair<uint8_t, uint64_t>> rs;
    for (uint8_t c : m) {
        if (!rs.empty() && rs.back().first == c) {
            ++rs.back().second;
        } else {
            rs.emplace_back(c, 1);
        }
    }
    return rs;
}

// what insert_char/delete_char should report, read off the flat string
static run_edit::kind m_insert_kind(const std::vector<uint8_t>& m, uint64_t pos, uint8_t c) {
    uint64_t n = m.size();
    bool right = pos <= n && m[pos - 1] == c;
    bool left = pos >= 2 && m[pos - 2] == c;
    if (right) return left ? run_edit::kind::grew_inside : run_edit::kind::grew_front;
    if (left) return run_edit::kind::grew_back;
    if (pos >= 2 && pos <= n && m[pos - 2] == m[pos - 1]) return run_edit::kind::split_run;
    return run_edit::kind::fresh_run;
}

static run_edit::kind m_delete_kind(const std::vector<uint8_t>& m, uint64_t pos) {
    uint64_t n = m.size();
    bool left = pos >= 2 && m[pos - 2] == m[pos - 1];
    bool right = pos <= n - 1 && m[pos] == m[pos - 1];
    if (left && right) return run_edit::kind::shrunk_inside;
    if (left) return run_edit::kind::shrunk_back;
    if (right) return run_edit::kind::shrunk_front;
    if (pos >= 2 && pos <= n - 1 && m[pos - 2] == m[pos]) return run_edit::kind::dropped_merged;
    return run_edit::kind::dropped_run;
}

TEST_CASE("frozen answers on the bwt of bbabba$") {
    rlbwt b(bv("abbbba$"));
    CHECK(b.size() == 7);
    CHECK(b.runs() == 4);
    CHECK(b.coherent());

    std::vector<std::pair<uint8_t, uint64_t>> want = {{'a', 1}, {'b', 4}, {'a', 1}, {0, 1}};
    CHECK(b.runs_vector() == want);
    CHECK(b.run_start(1) == 1);
    CHECK(b.run_start(2) == 2);
    CHECK(b.run_start(3) == 6);
    CHECK(b.run_start(4) == 7);
    CHECK(b.run_of(4) == 2);
    CHECK(b.run_of(7) == 4);
    CHECK(b.at_run_start(2));
    CHECK(b.at_run_end(5));
    CHECK(!b.at_run_end(3));
    CHECK(b.to_vector() == bv("abbbba$"));

    CHECK(b.lex_count(0) == 0);
    CHECK(b.lex_count('a') == 1);
    CHECK(b.lex_count('b') == 3);
    CHECK(b.lex_count('c') == 7);
    CHECK(b.rank(5, 'b') == 4);
    CHECK(b.rank(7, 'a') == 2);
    CHECK(b.rank(0, 'a') == 0);
    CHECK(b.rank(6, 0) == 0);
    CHECK(b.rank(7, 0) == 1);
    CHECK(b.select(1, 0) == 7);
    CHECK(b.select(2, 'a') == 6);
    CHECK(b.select(4, 'b') == 5);
    CHECK(b.char_count('b') == 4);
    CHECK(b.char_count('z') == 0);

    CHECK(b.lex_search(1) == 0);
    CHECK(b.lex_search(2) == 'a');
    CHECK(b.lex_search(3) == 'a');
    CHECK(b.lex_search(4) == 'b');
    CHECK(b.lex_search(7) == 'b');

    // full lf row of abbbba$ plus the frozen spot values
    std::vector<uint64_t> lf_want = {2, 4, 5, 6, 7, 3, 1};
    for (uint64_t t = 1; t <= 7; ++t) {
        CHECK(b.lf(t) == lf_want[t - 1]);
        CHECK(b.lf_inverse(b.lf(t)) == t);
    }
    CHECK(b.lf(5) == 7);
    CHECK(b.lf(7) == 1);
    CHECK(b.lf(1) == 2);

    CHECK(b.c_succ(0) == 'a');
    CHECK(b.c_succ('a') == 'b');
    CHECK(b.c_succ('b') == -1);
    CHECK(b.c_pred(0) == -1);
    CHECK(b.c_pred('a') == 0);
    CHECK(b.c_pred('z') == 'b');
    CHECK(b.min_char() == 0);
    CHECK(b.max_char() == 'b');

    CHECK(b.first_run_with_char('a') == 1);
    CHECK(b.last_run_with_char('a') == 3);
    CHECK(b.next_run_with_char(1, 'a') == 3);
    CHECK(b.next_run_with_char(3, 'a') == -1);
    CHECK(b.prev_run_with_char(3, 'a') == 1);
    CHECK(b.prev_run_with_char(1, 'a') == -1);
    CHECK(b.first_run_with_char('z') == -1);
}

TEST_CASE("surgery cases report what happened") {
    rlbwt b(bv("abbbba$"));

    run_edit e = b.insert_char(2, 'b');
    CHECK(e.k == run_edit::kind::grew_front);
    CHECK(e.run == 2);
    CHECK(b.to_vector() == bv("abbbbba$"));

    e = b.insert_char(1, 'a');
    CHECK(e.k == run_edit::kind::grew_front);
    CHECK(e.run == 1);
    CHECK(b.to_vector() == bv("aabbbbba$"));

    e = b.insert_char(3, 'a');
    CHECK(e.k == run_edit::kind::grew_back);
    CHECK(e.run == 1);
    CHECK(b.to_vector() == bv("aaabbbbba$"));

    e = b.insert_char(2, 'a');
    CHECK(e.k == run_edit::kind::grew_inside);
    CHECK(e.run == 1);
    CHECK(b.to_vector() == bv("aaaabbbbba$"));

    e = b.insert_char(6, 'c');
    CHECK(e.k == run_edit::kind::split_run);
    CHECK(e.run == 2);
    CHECK(b.to_vector() == bv("aaaabcbbbba$"));
    std::vector<std::pair<uint8_t, uint64_t>> want = {{'a', 4}, {'b', 1}, {'c', 1},
                                                      {'b', 4}, {'a', 1}, {0, 1}};
    CHECK(b.runs_vector() == want);
    CHECK(b.coherent());

    e = b.delete_char(6);
    CHECK(e.k == run_edit::kind::dropped_merged);
    CHECK(e.run == 3);
    CHECK(b.to_vector() == bv("aaaabbbbba$"));
    CHECK(b.coherent());

    e = b.delete_char(10);
    CHECK(e.k == run_edit::kind::dropped_run);
    CHECK(e.run == 3);
    CHECK(b.to_vector() == bv("aaaabbbbb$"));

    e = b.delete_char(1);
    CHECK(e.k == run_edit::kind::shrunk_front);
    CHECK(e.run == 1);
    CHECK(b.to_vector() == bv("aaabbbbb$"));

    e = b.delete_char(8);
    CHECK(e.k == run_edit::kind::shrunk_back);
    CHECK(e.run == 2);
    CHECK(b.to_vector() == bv("aaabbbb$"));

    e = b.delete_char(5);
    CHECK(e.k == run_edit::kind::shrunk_inside);
    CHECK(e.run == 2);
    CHECK(b.to_vector() == bv("aaabbb$"));

    e = b.insert_char(8, 'z');
    CHECK(e.k == run_edit::kind::fresh_run);
    CHECK(e.run == 4);
    CHECK(b.to_vector() == bv("aaabbb$z"));

    e = b.insert_char(1, 'q');
    CHECK(e.k == run_edit::kind::fresh_run);
    CHECK(e.run == 1);
    CHECK(b.to_vector() == bv("qaaabbb$z"));
    CHECK(b.coherent());
}

TEST_CASE("empty and single run edges") {
    rlbwt b;
    CHECK(b.size() == 0);
    CHECK(b.runs() == 0);
    CHECK(b.coherent());
    run_edit e = b.insert_char(1, 'a');
    CHECK(e.k == run_edit::kind::fresh_run);
    CHECK(e.run == 1);
    e = b.insert_char(2, 'a');
    CHECK(e.k == run_edit::kind::grew_back);
    e = b.delete_char(1);
    CHECK(e.k == run_edit::kind::shrunk_front);
    e = b.delete_char(1);
    CHECK(e.k == run_edit::kind::dropped_run);
    CHECK(b.size() == 0);
    CHECK(b.coherent());
}

TEST_CASE("range and argument errors") {
    rlbwt b(bv("ab"));
    CHECK_THROWS_AS(b.access(0), std::out_of_range);
    CHECK_THROWS_AS(b.access(3), std::out_of_range);
    CHECK_THROWS_AS(b.run_of(0), std::out_of_range);
    CHECK_THROWS_AS(b.run_start(3), std::out_of_range);
    CHECK_THROWS_AS(b.rank(3, 'a'), std::out_of_range);
    CHECK_THROWS_AS(b.select(0, 'a'), std::out_of_range);
    CHECK_THROWS_AS(b.select(2, 'a'), std::out_of_range);
    CHECK_THROWS_AS(b.select(1, 'z'), std::out_of_range);
    CHECK_THROWS_AS(b.lex_search(0), std::out_of_range);
    CHECK_THROWS_AS(b.lex_search(3), std::out_of_range);
    CHECK_THROWS_AS(b.insert_char(0, 'a'), std::out_of_range);
    CHECK_THROWS_AS(b.insert_char(4, 'a'), std::out_of_range);
    CHECK_THROWS_AS(b.delete_char(3), std::out_of_range);

    using run_list = std::vector<std::pair<uint8_t, uint64_t>>;
    CHECK_THROWS_AS(rlbwt(run_list{{'a', 2}, {'a', 1}}), std::invalid_argument);
    CHECK_THROWS_AS(rlbwt(run_list{{'a', 0}}), std::invalid_argument);
}

TEST_CASE("differential fuzz against a flat string") {
    std::mt19937_64 rng(4242);
    rlbwt b;
    std::vector<uint8_t> m;
    const uint8_t alpha[] = {0, 'a', 'b', 'c'};
    std::map<run_edit::kind, int> seen;
    for (int step = 0; step < 4000; ++step) {
        uint64_t n = m.size();
        int op = static_cast<int>(rng() % 8);
        if (n == 0 || op <= 1) {
            uint64_t pos = rng() % (n + 1) + 1;
            uint8_t c = alpha[rng() % 4];
            run_edit::kind want = m_insert_kind(m, pos, c);
            run_edit e = b.insert_char(pos, c);
            CHECK(e.k == want);
            ++seen[e.k];
            m.insert(m.begin() + (pos - 1), c);
        } else if (op == 2) {
            uint64_t pos = rng() % n + 1;
            run_edit::kind want = m_delete_kind(m, pos);
            run_edit e = b.delete_char(pos);
            CHECK(e.k == want);
            ++seen[e.k];
            m.erase(m.begin() + (pos - 1));
        } else if (op == 3) {
            uint64_t pos = rng() % (n + 1);
            uint8_t c = alpha[rng() % 4];
            CHECK(b.rank(pos, c) == m_rank(m, pos, c));
            CHECK(b.lex_count(c) == m_lex_count(m, c));
        } else if (op == 4) {
            uint8_t c = alpha[rng() % 4];
            uint64_t cnt = m_rank(m, n, c);
            CHECK(b.char_count(c) == cnt);
            if (cnt > 0) {
                uint64_t k = rng() % cnt + 1;
                CHECK(static_cast<int64_t>(b.select(k, c)) == m_select(m, k, c));
            }
        } else if (op == 5) {
            uint64_t pos = rng() % n + 1;
            CHECK(b.access(pos) == m[pos - 1]);
            CHECK(b.lf(pos) == m_lf(m, pos));
            CHECK(b.lf_inverse(m_lf(m, pos)) == pos);
            CHECK(b.lex_search(m_lf(m, pos)) == m[pos - 1]);
        } else if (op == 6) {
            uint64_t pos = rng() % n + 1;
            auto rs = m_runs(m);
            uint64_t v = 1, start = 1;
            while (start + rs[v - 1].second <= pos) start += rs[v - 1].second, ++v;
            CHECK(b.run_of(pos) == v);
            CHECK(b.run_start(v) == start);
            CHECK(b.run_char(v) == rs[v - 1].first);
            CHECK(b.run_len(v) == rs[v - 1].second);
            CHECK(b.at_run_start(pos) == (pos == start));
            CHECK(b.at_run_end(pos) == (pos == start + rs[v - 1].second - 1));
        } else {
            uint8_t c = alpha[rng() % 4];
            std::set<uint8_t> present(m.begin(), m.end());
            auto up = present.upper_bound(c);
            CHECK(b.c_succ(c) == (up == present.end() ? -1 : static_cast<int>(*up)));
            auto lo = present.lower_bound(c);
            CHECK(b.c_pred(c) == (lo == present.begin() ? -1 : static_cast<int>(*std::prev(lo))));
            if (!present.empty()) {
                CHECK(b.min_char() == *present.begin());
                CHECK(b.max_char() == *present.rbegin());
            }
            auto rs = m_runs(m);
            uint64_t v = rng() % (rs.size() + 1);
            int64_t nxt = -1, prv = -1;
            for (uint64_t d = v + 1; d <= rs.size(); ++d) {
                if (rs[d - 1].first == c) { nxt = static_cast<int64_t>(d); break; }
            }
            for (uint64_t d = v; d >= 2; --d) {
                if (rs[d - 2].first == c) { prv = static_cast<int64_t>(d) - 1; break; }
            }
            CHECK(b.next_run_with_char(v, c) == nxt);
            if (v >= 1) CHECK(b.prev_run_with_char(v, c) == prv);
        }
        if (step % 97 == 0) {
            REQUIRE(b.to_vector() == m);
            REQUIRE(b.coherent());
            REQUIRE(b.runs_vector() == m_runs(m));
        }
    }
    REQUIRE(b.to_vector() == m);
    REQUIRE(b.coherent());
    // every surgery case fired at least once
    CHECK(seen.size() == 10);
}

TEST_CASE("operations touch O(log r) nodes") {
    std::mt19937_64 rng(17);
    std::vector<uint8_t> l;
    const uint64_t n = 1 << 15;
    for (uint64_t i = 0; i < n; ++i) l.push_back(static_cast<uint8_t>(rng() % 4 + 'a'));
    rlbwt b(l);
    double logr = std::log2(static_cast<double>(b.runs()));
    for (int k = 0; k < 200; ++k) {
        b.reset_node_visits();
        uint64_t pos = rng() % b.size() + 1;
        uint8_t c = static_cast<uint8_t>(rng() % 4 + 'a');
        b.access(pos);
        b.rank(pos, c);
        b.lf(pos);
        b.lf_inverse(rng() % b.size() + 1);
        b.insert_char(pos, c);
        b.delete_char(pos);
        CHECK(b.node_visits() <= static_cast<uint64_t>(300.0 * logr + 600));
    }
}
