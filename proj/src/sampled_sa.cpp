#include "drindex/sampled_sa.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace drindex {

sampled_sa::sampled_sa(const std::vector<uint64_t>& vals) {
    uint64_t r = vals.size();
    std::vector<uint64_t> by_rank(r);
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(),
              [&](uint64_t a, uint64_t b) { return vals[a] < vals[b]; });
    std::vector<uint64_t> ranks(r), gap(r);
    uint64_t prev = 0;
    for (uint64_t k = 0; k < r; ++k) {
        uint64_t v = vals[by_rank[k]];
        if (v < 1 || (k > 0 && v == prev))
            throw std::invalid_argument("sampled_sa: values must be distinct and positive");
        ranks[by_rank[k]] = k + 1;
        gap[k] = v - prev;
        prev = v;
    }
    perm_ = dyn_permutation(ranks);
    gaps_ = partial_sum_list(gap);
}

uint64_t sampled_sa::access(uint64_t i) const { return gaps_.sum(perm_.access(i)); }

uint64_t sampled_sa::order(uint64_t k) const { return perm_.inv_access(k); }

uint64_t sampled_sa::count(uint64_t t) const {
    if (t <= 1) return 0;
    return gaps_.search(t) - 1;
}

bool sampled_sa::has_value(uint64_t t) const {
    if (t < 1) return false;
    uint64_t j = gaps_.search(t);
    return j <= size() && gaps_.sum(j) == t;
}

void sampled_sa::insert(uint64_t i, uint64_t t) {
    if (i < 1 || i > size() + 1) throw std::out_of_range("sampled_sa: insert position out of range");
    if (t < 1) throw std::invalid_argument("sampled_sa: values are positive");
    uint64_t rk = gaps_.search(t);
    if (rk <= size() && gaps_.sum(rk) == t)
        throw std::invalid_argument("sampled_sa: value already present");
    uint64_t delta = t - gaps_.sum(rk - 1);
    gaps_.insert(rk, delta);
    // the displaced rank keeps its own value
    if (rk + 1 <= gaps_.size()) gaps_.add(rk + 1, -static_cast<int64_t>(delta));
    perm_.increment_insert(i, rk);
}

void sampled_sa::erase(uint64_t i) {
    uint64_t rk = perm_.access(i);
    uint64_t delta = gaps_.get(rk);
    gaps_.erase(rk);
    if (rk <= gaps_.size()) gaps_.add(rk, static_cast<int64_t>(delta));
    perm_.decrement_delete(i);
}

void sampled_sa::replace(uint64_t i, uint64_t t) {
    erase(i);
    insert(i, t);
}

void sampled_sa::increment(uint64_t t, uint64_t k) {
    if (k == 0) return;
    uint64_t j0 = gaps_.search(t + 1);  // first rank whose value exceeds t
    if (j0 > size()) return;
    gaps_.add(j0, static_cast<int64_t>(k));
}

void sampled_sa::decrement(uint64_t t, uint64_t k) {
    if (k == 0) return;
    uint64_t r = size();
    uint64_t j0 = gaps_.search(t + 1);
    if (j0 > r) return;
    uint64_t below = gaps_.sum(j0 - 1);
    uint64_t vj = gaps_.sum(j0);
    if (vj > below + k) {
        // shifted block stays above the untouched one
        gaps_.add(j0, -static_cast<int64_t>(k));
        return;
    }
    // the whole block must drop below every untouched value
    uint64_t v1 = gaps_.sum(1);
    uint64_t vr = gaps_.total();
    if (j0 == 1 || vj <= k || vr - k >= v1)
        throw std::invalid_argument("sampled_sa: decrement scrambles order");
    uint64_t cnt = r - j0 + 1;
    gaps_.rotate(j0 - 1);
    gaps_.set(1, vj - k);
    gaps_.set(cnt + 1, v1 - (vr - k));
    perm_.rotate_values(j0 - 1);
}

std::vector<uint64_t> sampled_sa::to_vector() const {
    std::vector<uint64_t> out;
    out.reserve(size());
    for (uint64_t i = 1; i <= size(); ++i) out.push_back(access(i));
    return out;
}

}  // namespace drindex
