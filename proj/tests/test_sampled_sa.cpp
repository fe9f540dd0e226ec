#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "drindex/sampled_sa.hpp"

using drindex::sampled_sa;
using u64v = std::vector<uint64_t>;

TEST_CASE("frozen answers on run starts of bbabba$") {
    sampled_sa s(u64v{7, 6, 4, 1});
    CHECK(s.size() == 4);
    CHECK(s.access(1) == 7);
    CHECK(s.access(4) == 1);
    CHECK(s.order(1) == 4);
    CHECK(s.order(2) == 3);
    CHECK(s.order(3) == 2);
    CHECK(s.order(4) == 1);
    CHECK(s.count(0) == 0);
    CHECK(s.count(1) == 0);
    CHECK(s.count(2) == 1);
    CHECK(s.count(5) == 2);
    CHECK(s.count(7) == 3);
    CHECK(s.count(8) == 4);
    CHECK(s.has_value(6));
    CHECK(!s.has_value(5));

    // insert of one row shifts everything above position 5
    s.increment(5, 1);
    CHECK(s.to_vector() == u64v{8, 7, 4, 1});
}

TEST_CASE("insert, erase and replace") {
    sampled_sa s(u64v{8, 7, 4, 1});
    s.insert(3, 5);
    CHECK(s.to_vector() == u64v{8, 7, 5, 4, 1});
    s.erase(2);
    CHECK(s.to_vector() == u64v{8, 5, 4, 1});
    s.replace(2, 6);
    CHECK(s.to_vector() == u64v{8, 6, 4, 1});
    for (uint64_t k = 1; k <= 4; ++k) CHECK(s.access(s.order(k)) >= (k == 1 ? 1 : s.access(s.order(k - 1)) + 1));
    CHECK_THROWS_AS(s.insert(1, 6), std::invalid_argument);
    CHECK_THROWS_AS(s.insert(9, 2), std::out_of_range);
    CHECK_THROWS_AS(s.insert(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(s.access(0), std::out_of_range);
    CHECK_THROWS_AS(s.order(5), std::out_of_range);
}

TEST_CASE("decrement keeps or rotates the order") {
    sampled_sa s(u64v{10, 3});
    s.decrement(5, 6);  // 10 -> 4, still above 3
    CHECK(s.to_vector() == u64v{4, 3});

    sampled_sa t(u64v{10, 3});
    CHECK_THROWS_AS(t.decrement(5, 7), std::invalid_argument);  // would collide with 3
    CHECK(t.to_vector() == u64v{10, 3});
    t.decrement(5, 8);  // 10 -> 2, drops below 3
    CHECK(t.to_vector() == u64v{2, 3});
    CHECK(t.order(1) == 1);
    CHECK(t.order(2) == 2);

    sampled_sa u(u64v{10, 3});
    CHECK_THROWS_AS(u.decrement(5, 10), std::invalid_argument);  // 10 would hit 0
    u.decrement(20, 5);                                          // nothing above 20
    CHECK(u.to_vector() == u64v{10, 3});
}

TEST_CASE("deletion lifecycle offsets") {
    // samples live at +delta while old rows await replacement
    sampled_sa s(u64v{7, 6, 2, 1});
    s.increment(0, 11);
    CHECK(s.to_vector() == u64v{18, 17, 13, 12});
    s.decrement(16, 13);  // skipped block lands on final values
    CHECK(s.to_vector() == u64v{5, 4, 13, 12});
    s.insert(3, 9);
    CHECK(s.to_vector() == u64v{5, 4, 9, 13, 12});
    s.decrement(11, 11);  // leftover block drops its offset
    CHECK(s.to_vector() == u64v{5, 4, 9, 2, 1});
    CHECK(s.order(1) == 5);
    CHECK(s.order(5) == 3);
    CHECK(s.count(5) == 3);
}

namespace {

struct model {
    std::vector<uint64_t> v;

    uint64_t count(uint64_t t) const {
        uint64_t k = 0;
        for (uint64_t x : v) k += (x < t);
        return k;
    }
    uint64_t order(uint64_t k) const {
        u64v s = v;
        std::sort(s.begin(), s.end());
        uint64_t val = s[k - 1];
        for (uint64_t i = 0; i < v.size(); ++i)
            if (v[i] == val) return i + 1;
        return 0;
    }
    // 0 legal in place, 1 legal as block rotation, 2 illegal
    int decrement_shape(uint64_t t, uint64_t k) const {
        uint64_t smin = UINT64_MAX, smax = 0, umin = UINT64_MAX, umax = 0;
        for (uint64_t x : v) {
            if (x > t) smin = std::min(smin, x), smax = std::max(smax, x);
            else umin = std::min(umin, x), umax = std::max(umax, x);
        }
        if (smax == 0) return 0;  // nothing shifts
        if (smin > k && smin - k > umax) return 0;
        if (smin > k && umin != UINT64_MAX && smax - k < umin) return 1;
        return 2;
    }
    void decrement(uint64_t t, uint64_t k) {
        for (auto& x : v)
            if (x > t) x -= k;
    }
};

}  // namespace

TEST_CASE("differential fuzz against a flat list") {
    std::mt19937_64 rng(20260824);
    sampled_sa s;
    model m;
    for (int step = 0; step < 4000; ++step) {
        uint64_t r = m.v.size();
        int op = static_cast<int>(rng() % 10);
        if (r == 0 || op <= 2) {
            uint64_t i = rng() % (r + 1) + 1;
            uint64_t t = rng() % 300 + 1;
            bool dup = std::find(m.v.begin(), m.v.end(), t) != m.v.end();
            if (dup) {
                CHECK_THROWS_AS(s.insert(i, t), std::invalid_argument);
            } else {
                s.insert(i, t);
                m.v.insert(m.v.begin() + (i - 1), t);
            }
        } else if (op == 3) {
            uint64_t i = rng() % r + 1;
            s.erase(i);
            m.v.erase(m.v.begin() + (i - 1));
        } else if (op == 4) {
            uint64_t i = rng() % r + 1;
            CHECK(s.access(i) == m.v[i - 1]);
        } else if (op == 5) {
            uint64_t k = rng() % r + 1;
            CHECK(s.order(k) == m.order(k));
        } else if (op == 6) {
            uint64_t t = rng() % 400;
            CHECK(s.count(t) == m.count(t));
            CHECK(s.has_value(t) == (std::find(m.v.begin(), m.v.end(), t) != m.v.end()));
        } else if (op == 7) {
            uint64_t t = rng() % 300;
            uint64_t k = rng() % 40 + 1;
            s.increment(t, k);
            for (auto& x : m.v)
                if (x > t) x += k;
        } else {
            uint64_t t = rng() % 300;
            uint64_t k = rng() % 60 + 1;
            int shape = m.decrement_shape(t, k);
            if (shape == 2) {
                CHECK_THROWS_AS(s.decrement(t, k), std::invalid_argument);
            } else {
                s.decrement(t, k);
                m.decrement(t, k);
            }
        }
        if (step % 53 == 0) REQUIRE(s.to_vector() == m.v);
    }
    REQUIRE(s.to_vector() == m.v);
}

TEST_CASE("operations touch O(log r) nodes") {
    std::mt19937_64 rng(3);
    const uint64_t r = 1 << 14;
    u64v vals(r);
    for (uint64_t i = 0; i < r; ++i) vals[i] = 3 * i + 1;
    std::shuffle(vals.begin(), vals.end(), rng);
    sampled_sa s(vals);
    double logr = std::log2(static_cast<double>(r));
    for (int k = 0; k < 200; ++k) {
        s.reset_node_visits();
        uint64_t i = rng() % s.size() + 1;
        s.access(i);
        s.order(rng() % s.size() + 1);
        s.count(rng() % (3 * r));
        uint64_t fresh = s.access(i);
        s.erase(i);
        s.insert(i, fresh);
        s.increment(3 * r + 10, 5);  // no-op path
        s.increment(0, 7);
        s.decrement(0, 7);
        CHECK(s.node_visits() <= static_cast<uint64_t>(260.0 * logr + 600));
    }
}
