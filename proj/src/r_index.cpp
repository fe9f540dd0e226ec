#include "drindex/r_index.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace drindex {

namespace {

// suffix-array values are circular: stepping below 1 lands on n
uint64_t dec_val(uint64_t v, uint64_t n) { return v == 1 ? n : v - 1; }

}  // namespace

r_index::r_index(const std::vector<std::pair<uint8_t, uint64_t>>& runs,
                 const std::vector<uint64_t>& sa_start,
                 const std::vector<uint64_t>& sa_end)
    : bwt_(runs), sas_(sa_start), sae_(sa_end) {
    if (sa_start.size() != bwt_.runs() || sa_end.size() != bwt_.runs())
        throw std::invalid_argument("r_index: sample count must match run count");
}

r_index r_index::sentinel_only() {
    return r_index({{0, 1}}, {1}, {1});
}

std::optional<sa_interval> r_index::find(const std::vector<uint8_t>& pat) const {
    uint64_t n = size();
    if (n == 0) return std::nullopt;
    uint64_t sp = 1;
    uint64_t ep = n;
    uint64_t cur = sas_.access(1);  // suffix-array value at row 1
    for (uint64_t step = 0; step < pat.size(); ++step) {
        uint8_t c = pat[pat.size() - 1 - step];
        if (step == 0) {
            uint64_t cnt = bwt_.char_count(c);
            if (cnt == 0) return std::nullopt;
            sp = bwt_.lex_count(c) + 1;
            ep = bwt_.lex_count(c) + cnt;
            cur = dec_val(sas_.access(static_cast<uint64_t>(bwt_.first_run_with_char(c))), n);
            continue;
        }
        uint64_t v = bwt_.run_of(sp);
        uint64_t nsp = bwt_.lex_count(c) + bwt_.rank(sp - 1, c) + 1;
        uint64_t nep = bwt_.lex_count(c) + bwt_.rank(ep, c);
        if (nsp > nep) return std::nullopt;
        if (bwt_.run_char(v) == c) {
            // the first row of the interval extends its match
            cur = dec_val(cur, n);
        } else {
            int64_t v2 = bwt_.next_run_with_char(v, c);
            assert(v2 > 0);  // the interval is non-empty, so a later run carries c
            cur = dec_val(sas_.access(static_cast<uint64_t>(v2)), n);
        }
        sp = nsp;
        ep = nep;
    }
    return sa_interval{sp, ep, cur};
}

uint64_t r_index::count(const std::vector<uint8_t>& pat) const {
    auto iv = find(pat);
    return iv ? iv->ep - iv->sp + 1 : 0;
}

std::vector<uint64_t> r_index::locate(const std::vector<uint8_t>& pat) const {
    auto iv = find(pat);
    std::vector<uint64_t> out;
    if (!iv) return out;
    uint64_t occ = iv->ep - iv->sp + 1;
    out.reserve(occ);
    uint64_t v = iv->sa_sp;
    out.push_back(v);
    for (uint64_t t = 1; t < occ; ++t) {
        v = phi_inverse(v);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t r_index::phi(uint64_t i) const {
    if (i < 1 || i > size()) throw std::out_of_range("r_index: phi argument out of range");
    uint64_t k = sas_.count(i + 1);
    assert(k >= 1);  // value 1 is always a run-start sample
    uint64_t j = sas_.order(k);
    uint64_t pred = sas_.access(j);
    uint64_t j2 = (j == 1) ? runs() : j - 1;
    return (i - pred) + sae_.access(j2);
}

uint64_t r_index::phi_inverse(uint64_t i) const {
    if (i < 1 || i > size()) throw std::out_of_range("r_index: phi_inverse argument out of range");
    uint64_t k = sae_.count(i + 1);
    assert(k >= 1);  // value 1 is always a run-end sample
    uint64_t j = sae_.order(k);
    uint64_t pred = sae_.access(j);
    uint64_t j2 = (j == runs()) ? 1 : j + 1;
    return (i - pred) + sas_.access(j2);
}

uint64_t r_index::suffix_row_walk(uint64_t i, uint64_t* walk) const {
    uint64_t k = sas_.count(i + 1);
    assert(k >= 1);
    uint64_t lam = sas_.order(k);
    uint64_t val = sas_.access(lam);
    uint64_t t = bwt_.run_start(lam);
    uint64_t steps = i - val;
    for (uint64_t s = 0; s < steps; ++s) t = bwt_.lf_inverse(t);
    if (walk) *walk = steps;
    return t;
}

uint64_t r_index::row_of_suffix(uint64_t i, uint64_t* walk) const {
    if (i < 1 || i > size()) throw std::out_of_range("r_index: suffix out of range");
    return suffix_row_walk(i, walk);
}

std::vector<uint8_t> r_index::extract_text() const {
    uint64_t n = size();
    std::vector<uint8_t> out(n);
    if (n == 0) return out;
    out[n - 1] = bwt_.lex_search(1);  // the text ends with its smallest symbol
    uint64_t t = 1;
    for (uint64_t k = n - 1; k >= 1; --k) {
        out[k - 1] = bwt_.access(t);
        t = bwt_.lf(t);
    }
    assert(bwt_.lf(t) == 1);  // the walk closes the cycle at the sentinel row
    return out;
}

bool r_index::coherent() const {
    if (!bwt_.coherent()) return false;
    uint64_t r = runs();
    if (sas_.size() != r || sae_.size() != r) return false;
    if (r == 0) return true;
    if (!sas_.has_value(1) || !sae_.has_value(1)) return false;
    if (sas_.count(size() + 1) != r || sae_.count(size() + 1) != r) return false;
    return sas_.access(1) == size();  // row 1 holds the whole-text rotation
}

}  // namespace drindex
