#include "drindex/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace drindex::oracle {

namespace {

void check_sentinel(const std::vector<uint8_t>& text) {
    if (text.empty() || text.back() != 0)
        throw std::invalid_argument("oracle: text must end with the 0x00 sentinel");
    for (size_t k = 0; k + 1 < text.size(); ++k)
        if (text[k] == 0) throw std::invalid_argument("oracle: sentinel must be unique");
}

// 1-based suffix comparison
bool suffix_less(const std::vector<uint8_t>& t, uint64_t a, uint64_t b) {
    uint64_t n = t.size();
    while (a <= n && b <= n) {
        if (t[a - 1] != t[b - 1]) return t[a - 1] < t[b - 1];
        ++a;
        ++b;
    }
    return a > n && b <= n;
}

std::vector<uint64_t> sort_suffixes(const std::vector<uint8_t>& t) {
    std::vector<uint64_t> sa(t.size());
    std::iota(sa.begin(), sa.end(), 1);
    std::sort(sa.begin(), sa.end(), [&](uint64_t a, uint64_t b) { return suffix_less(t, a, b); });
    return sa;
}

std::vector<uint64_t> pairwise_lcp(const std::vector<uint8_t>& t, const std::vector<uint64_t>& sa) {
    std::vector<uint64_t> lcp(sa.size(), 0);
    for (size_t k = 1; k < sa.size(); ++k) {
        uint64_t a = sa[k - 1], b = sa[k], n = t.size(), len = 0;
        while (a + len <= n && b + len <= n && t[a + len - 1] == t[b + len - 1]) ++len;
        lcp[k] = len;
    }
    return lcp;
}

}  // namespace

text_snapshot build_snapshot(const std::vector<uint8_t>& text) {
    check_sentinel(text);
    text_snapshot s;
    s.text = text;
    uint64_t n = text.size();
    s.sa = sort_suffixes(text);
    s.isa.assign(n, 0);
    for (uint64_t k = 0; k < n; ++k) s.isa[s.sa[k] - 1] = k + 1;
    s.lcp = pairwise_lcp(text, s.sa);
    s.bwt.resize(n);
    for (uint64_t k = 0; k < n; ++k) {
        uint64_t p = s.sa[k];
        s.bwt[k] = p == 1 ? text[n - 1] : text[p - 2];
    }
    for (uint64_t k = 0; k < n; ++k) {
        if (s.runs.empty() || s.runs.back().head != s.bwt[k]) {
            s.runs.push_back({s.bwt[k], 1});
            s.sa_s.push_back(s.sa[k]);
        } else {
            s.runs.back().len++;
        }
        if (s.sa_e.size() < s.runs.size())
            s.sa_e.resize(s.runs.size());
        s.sa_e[s.runs.size() - 1] = s.sa[k];
    }
    std::vector<uint8_t> rev(text.rbegin() + 1, text.rend());
    rev.push_back(0);
    s.sa_rev = sort_suffixes(rev);
    s.lcp_rev = pairwise_lcp(rev, s.sa_rev);
    return s;
}

uint64_t naive_count(const std::vector<uint8_t>& text, const std::vector<uint8_t>& pat) {
    return naive_locate(text, pat).size();
}

std::vector<uint64_t> naive_locate(const std::vector<uint8_t>& text, const std::vector<uint8_t>& pat) {
    check_sentinel(text);
    if (pat.empty()) throw std::invalid_argument("oracle: empty pattern");
    for (uint8_t c : pat)
        if (c == 0) throw std::invalid_argument("oracle: pattern may not contain the sentinel");
    std::vector<uint64_t> hits;
    uint64_t body = text.size() - 1;
    if (pat.size() > body) return hits;
    for (uint64_t p = 0; p + pat.size() <= body; ++p) {
        if (std::equal(pat.begin(), pat.end(), text.begin() + p)) hits.push_back(p + 1);
    }
    return hits;
}

lcp_summary lcp_stats(const std::vector<uint8_t>& text) {
    text_snapshot s = build_snapshot(text);
    uint64_t mx = 0, sum = 0;
    for (uint64_t v : s.lcp) {
        mx = std::max(mx, v);
        sum += v;
    }
    return {static_cast<double>(sum) / static_cast<double>(s.n()), mx, s.r()};
}

std::vector<uint8_t> apply_edit(const std::vector<uint8_t>& text, const edit_op& op) {
    check_sentinel(text);
    uint64_t n = text.size();
    std::vector<uint8_t> out;
    if (op.kind == edit_op::op_kind::delete_substring) {
        if (op.m < 1 || op.i < 1 || op.i + op.m > n)
            throw std::invalid_argument("oracle: deletion out of range");
        out.assign(text.begin(), text.begin() + (op.i - 1));
        out.insert(out.end(), text.begin() + (op.i - 1 + op.m), text.end());
        return out;
    }
    if (op.payload.empty()) throw std::invalid_argument("oracle: empty insertion payload");
    for (uint8_t c : op.payload)
        if (c == 0) throw std::invalid_argument("oracle: payload may not contain the sentinel");
    if (op.kind == edit_op::op_kind::insert_char && op.payload.size() != 1)
        throw std::invalid_argument("oracle: char insertion takes exactly one byte");
    if (op.i < 1 || op.i > n) throw std::invalid_argument("oracle: insertion position out of range");
    out.assign(text.begin(), text.begin() + (op.i - 1));
    out.insert(out.end(), op.payload.begin(), op.payload.end());
    out.insert(out.end(), text.begin() + (op.i - 1), text.end());
    return out;
}

namespace {

struct m_row {
    bool is_new;
    uint64_t pos;  // 1-based start in its own text
};

struct replay_ctx {
    const std::vector<uint8_t>* told;
    const std::vector<uint8_t>* tnew;
    bool deleting;
    int64_t i, m, n;  // edit position, payload/removal length, old length
    uint64_t delta;

    uint64_t value(const m_row& r) const {
        if (deleting && !r.is_new) return delta + r.pos;
        return r.pos;
    }

    uint8_t l_char(const m_row& r) const {
        const auto& t = r.is_new ? *tnew : *told;
        return r.pos == 1 ? t.back() : t[r.pos - 2];
    }

    bool row_less(const m_row& a, const m_row& b) const {
        const auto& ta = a.is_new ? *tnew : *told;
        const auto& tb = b.is_new ? *tnew : *told;
        uint64_t pa = a.pos, pb = b.pos;
        while (pa <= ta.size() && pb <= tb.size()) {
            if (ta[pa - 1] != tb[pb - 1]) return ta[pa - 1] < tb[pb - 1];
            ++pa;
            ++pb;
        }
        if (pa > ta.size() && pb > tb.size()) {
            // identical suffix content: full rotations differ only in length,
            // so the row of the shorter text is a proper prefix and sorts first
            return ta.size() < tb.size();
        }
        return pa > ta.size();
    }

    // rows of M_j, the input to iteration j
    std::vector<m_row> rows(int64_t j) const {
        std::vector<m_row> out;
        int64_t nn = static_cast<int64_t>(tnew->size());
        if (!deleting) {
            for (int64_t k = 1; k <= std::min(i - 1, j); ++k) out.push_back({false, static_cast<uint64_t>(k)});
            for (int64_t k = i; k <= j - m; ++k) out.push_back({false, static_cast<uint64_t>(k)});
            for (int64_t k = j + 1; k <= nn; ++k) out.push_back({true, static_cast<uint64_t>(k)});
        } else {
            for (int64_t k = 1; k <= std::min(j, n); ++k) out.push_back({false, static_cast<uint64_t>(k)});
            for (int64_t k = 1; k <= nn; ++k) {
                bool present = (k >= i) ? (k + m >= j + 1) : (k >= j + 1);
                if (present) out.push_back({true, static_cast<uint64_t>(k)});
            }
        }
        std::sort(out.begin(), out.end(), [&](const m_row& a, const m_row& b) { return row_less(a, b); });
        return out;
    }

    // the old row removed by iteration j, if any
    bool removed(int64_t j, m_row& out) const {
        if (deleting) {
            out = {false, static_cast<uint64_t>(j)};
            return true;
        }
        if (j >= i + m) {
            out = {false, static_cast<uint64_t>(j - m)};
            return true;
        }
        if (j <= i - 1) {
            out = {false, static_cast<uint64_t>(j)};
            return true;
        }
        return false;
    }

    // the new row inserted by iteration j, if any
    bool inserted(int64_t j, m_row& out) const {
        if (!deleting) {
            out = {true, static_cast<uint64_t>(j)};
            return true;
        }
        if (j >= i + m) {
            out = {true, static_cast<uint64_t>(j - m)};
            return true;
        }
        if (j <= i - 1) {
            out = {true, static_cast<uint64_t>(j)};
            return true;
        }
        return false;
    }

    uint64_t lf_target(uint64_t v) const {
        uint64_t nn = tnew->size();
        if (!deleting) return v == 1 ? nn : v - 1;
        if (v == delta + 1 || v == 1) return nn;
        return v - 1;
    }
};

}  // namespace

replay_trace replay_iterations(const std::vector<uint8_t>& text, const edit_op& op, uint64_t cap) {
    check_sentinel(text);
    if (text.size() > cap) throw std::invalid_argument("oracle: text exceeds replay cap");
    replay_trace tr;
    tr.new_text = apply_edit(text, op);

    replay_ctx cx;
    cx.told = &text;
    cx.tnew = &tr.new_text;
    cx.deleting = op.kind == edit_op::op_kind::delete_substring;
    cx.i = static_cast<int64_t>(op.i);
    cx.m = cx.deleting ? static_cast<int64_t>(op.m) : static_cast<int64_t>(op.payload.size());
    cx.n = static_cast<int64_t>(text.size());
    cx.delta = cx.deleting ? text.size() + 1 : 0;
    tr.delta = cx.delta;

    int64_t jstart = cx.deleting ? cx.n : cx.n + cx.m;
    std::vector<m_row> cur = cx.rows(jstart);
    for (int64_t j = jstart; j >= 1; --j) {
        std::vector<m_row> next = cx.rows(j - 1);
        replay_step st;
        st.j = static_cast<uint64_t>(j);
        for (const m_row& r : cur) {
            st.sa.push_back(cx.value(r));
            st.l.push_back(cx.l_char(r));
        }
        m_row rm{}, ins{};
        if (cx.removed(j, rm)) {
            for (size_t t = 0; t < cur.size(); ++t) {
                if (!cur[t].is_new && cur[t].pos == rm.pos) st.x = static_cast<int64_t>(t) + 1;
            }
            assert(st.x != -1);
        }
        if (cx.inserted(j, ins)) {
            for (size_t t = 0; t < next.size(); ++t) {
                if (next[t].is_new && next[t].pos == ins.pos) st.y = static_cast<int64_t>(t) + 1;
            }
            assert(st.y != -1);
        }
        std::map<uint64_t, int64_t> value_row;
        for (size_t t = 0; t < next.size(); ++t) value_row[cx.value(next[t])] = static_cast<int64_t>(t) + 1;
        for (const m_row& r : cur) {
            uint64_t tgt = cx.lf_target(cx.value(r));
            auto it = value_row.find(tgt);
            st.lf.push_back(it == value_row.end() ? -1 : it->second);
        }
        tr.steps.push_back(std::move(st));
        cur = std::move(next);
    }
    for (const m_row& r : cur) {
        assert(r.is_new);
        tr.final_sa.push_back(r.pos);
        tr.final_l.push_back(cx.l_char(r));
    }
    return tr;
}

}  // namespace drindex::oracle
