// B+ tree over a byte sequence with per-internal-node symbol histograms,
// giving O(log n) access/rank/select/insert/erase for a 256-symbol
// alphabet. Aggregates are adjusted incrementally on the update path;
// full recomputes happen only on structural changes.

#pragma once

#include <array>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <cstring>
#include <memory>
#include <vector>

namespace drindex::detail {

class char_tree {
public:
    static constexpr int fanout = 32;
    static constexpr int min_fill = fanout / 2;

private:
    using hist = std::array<uint32_t, 256>;

    struct node {
        uint16_t height = 0;
        uint16_t n = 0;
        uint64_t cnt = 0;
        std::array<uint8_t, fanout> ch{};
        std::array<node*, fanout> child{};
        std::unique_ptr<hist> sym;  // internal nodes only

        void ensure_sym() {
            if (!sym) sym = std::make_unique<hist>();
        }
    };

    node* root_;
    mutable std::atomic<uint64_t> visits_{0};

    void touch(const node* p) const {
        (void)p;
        visits_.fetch_add(1, std::memory_order_relaxed);
    }

    // Adds (or subtracts) q's full histogram and count into dst.
    static void fold(node* dst, const node* q, int sign) {
        dst->cnt = static_cast<uint64_t>(static_cast<int64_t>(dst->cnt) + sign * static_cast<int64_t>(q->cnt));
        hist& h = *dst->sym;
        if (q->height == 0) {
            for (int k = 0; k < q->n; ++k)
                h[q->ch[k]] = static_cast<uint32_t>(static_cast<int64_t>(h[q->ch[k]]) + sign);
        } else {
            const hist& g = *q->sym;
            for (int c = 0; c < 256; ++c)
                h[c] = static_cast<uint32_t>(static_cast<int64_t>(h[c]) + sign * static_cast<int64_t>(g[c]));
        }
    }

    static void pull_full(node* p) {
        if (p->height == 0) {
            p->cnt = p->n;
            return;
        }
        p->ensure_sym();
        p->sym->fill(0);
        p->cnt = 0;
        for (int k = 0; k < p->n; ++k) fold(p, p->child[k], +1);
    }

    static void free_rec(node* p) {
        if (p->height > 0)
            for (int k = 0; k < p->n; ++k) free_rec(p->child[k]);
        delete p;
    }

    static node* clone_rec(const node* p) {
        node* q = new node;
        q->height = p->height;
        q->n = p->n;
        q->cnt = p->cnt;
        q->ch = p->ch;
        if (p->sym) q->sym = std::make_unique<hist>(*p->sym);
        if (p->height > 0)
            for (int k = 0; k < p->n; ++k) q->child[k] = clone_rec(p->child[k]);
        return q;
    }

    static node* split_node(node* p) {
        assert(p->n == fanout);
        node* r = new node;
        r->height = p->height;
        int keep = fanout / 2;
        r->n = fanout - keep;
        for (int k = keep; k < fanout; ++k) {
            if (p->height == 0)
                r->ch[k - keep] = p->ch[k];
            else
                r->child[k - keep] = p->child[k];
        }
        p->n = keep;
        pull_full(p);
        pull_full(r);
        return r;
    }

    static void place_child(node* p, int at, node* c) {
        for (int k = p->n; k > at; --k) p->child[k] = p->child[k - 1];
        p->child[at] = c;
        p->n++;
    }

    node* insert_rec(node* p, uint64_t pos, uint8_t c) {
        touch(p);
        if (p->height == 0) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (pos <= p->n)
                    insert_rec(p, pos, c);
                else
                    insert_rec(r, pos - p->n, c);
                return r;
            }
            assert(pos <= p->n);
            for (int k = p->n; k > static_cast<int>(pos); --k) p->ch[k] = p->ch[k - 1];
            p->ch[pos] = c;
            p->n++;
            p->cnt = p->n;
            return nullptr;
        }
        int j = 0;
        while (j + 1 < p->n && pos > p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        node* s = insert_rec(p->child[j], pos, c);
        p->cnt++;
        (*p->sym)[c]++;
        if (s != nullptr) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (j < p->n)
                    place_child(p, j + 1, s);
                else
                    place_child(r, j - p->n + 1, s);
                pull_full(p);
                pull_full(r);
                return r;
            }
            place_child(p, j + 1, s);
        }
        return nullptr;
    }

    static void rebalance(node* p, int j) {
        node* c = p->child[j];
        node* left = j > 0 ? p->child[j - 1] : nullptr;
        node* right = j + 1 < p->n ? p->child[j + 1] : nullptr;
        if (left && left->n > min_fill) {
            if (c->height == 0) {
                for (int k = c->n; k > 0; --k) c->ch[k] = c->ch[k - 1];
                c->ch[0] = left->ch[left->n - 1];
                c->n++;
                c->cnt = c->n;
                left->n--;
                left->cnt = left->n;
            } else {
                node* moved = left->child[left->n - 1];
                for (int k = c->n; k > 0; --k) c->child[k] = c->child[k - 1];
                c->child[0] = moved;
                c->n++;
                left->n--;
                fold(c, moved, +1);
                fold(left, moved, -1);
            }
            return;
        }
        if (right && right->n > min_fill) {
            if (c->height == 0) {
                c->ch[c->n] = right->ch[0];
                for (int k = 0; k + 1 < right->n; ++k) right->ch[k] = right->ch[k + 1];
                c->n++;
                c->cnt = c->n;
                right->n--;
                right->cnt = right->n;
            } else {
                node* moved = right->child[0];
                c->child[c->n] = moved;
                for (int k = 0; k + 1 < right->n; ++k) right->child[k] = right->child[k + 1];
                c->n++;
                right->n--;
                fold(c, moved, +1);
                fold(right, moved, -1);
            }
            return;
        }
        node* a = left ? left : c;
        node* b = left ? c : right;
        assert(b != nullptr && a->n + b->n <= fanout);
        for (int k = 0; k < b->n; ++k) {
            if (a->height == 0)
                a->ch[a->n + k] = b->ch[k];
            else
                a->child[a->n + k] = b->child[k];
        }
        a->n += b->n;
        if (a->height == 0) {
            a->cnt = a->n;
        } else {
            fold(a, b, +1);
        }
        int gone = left ? j : j + 1;
        for (int k = gone; k + 1 < p->n; ++k) p->child[k] = p->child[k + 1];
        p->n--;
        delete b;
    }

    uint8_t erase_rec(node* p, uint64_t pos) {
        touch(p);
        if (p->height == 0) {
            assert(pos < p->n);
            uint8_t c = p->ch[pos];
            for (int k = static_cast<int>(pos); k + 1 < p->n; ++k) p->ch[k] = p->ch[k + 1];
            p->n--;
            p->cnt = p->n;
            return c;
        }
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
            assert(j < p->n);
        }
        uint8_t c = erase_rec(p->child[j], pos);
        p->cnt--;
        (*p->sym)[c]--;
        if (p->child[j]->n < min_fill) rebalance(p, j);
        return c;
    }

    uint8_t access_rec(const node* p, uint64_t pos) const {
        touch(p);
        if (p->height == 0) return p->ch[pos];
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        return access_rec(p->child[j], pos);
    }

    uint64_t rank_rec(const node* p, uint64_t pos, uint8_t c) const {
        touch(p);
        if (p->height == 0) {
            uint64_t k = 0;
            for (uint64_t t = 0; t < pos; ++t) k += (p->ch[t] == c);
            return k;
        }
        uint64_t k = 0;
        int j = 0;
        while (pos > p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            k += count_of(p->child[j], c);
            ++j;
        }
        return k + rank_rec(p->child[j], pos, c);
    }

    static uint64_t count_of(const node* p, uint8_t c) {
        if (p->height > 0) return (*p->sym)[c];
        uint64_t k = 0;
        for (int t = 0; t < p->n; ++t) k += (p->ch[t] == c);
        return k;
    }

    // 0-based position of the k-th (k >= 1) occurrence; caller checked k <= count.
    uint64_t select_rec(const node* p, uint64_t k, uint8_t c) const {
        touch(p);
        if (p->height == 0) {
            for (int t = 0; t < p->n; ++t) {
                if (p->ch[t] == c && --k == 0) return t;
            }
            assert(false && "select past leaf despite count guarantee");
            return 0;
        }
        uint64_t off = 0;
        for (int j = 0; j < p->n; ++j) {
            uint64_t cc = count_of(p->child[j], c);
            if (k <= cc) return off + select_rec(p->child[j], k, c);
            k -= cc;
            off += p->child[j]->cnt;
        }
        assert(false && "select past node despite count guarantee");
        return 0;
    }

    void collapse_root() {
        while (root_->height > 0 && root_->n == 1) {
            node* c = root_->child[0];
            delete root_;
            root_ = c;
        }
    }

    void for_each_rec(const node* p, std::vector<uint8_t>& out) const {
        if (p->height == 0) {
            for (int k = 0; k < p->n; ++k) out.push_back(p->ch[k]);
        } else {
            for (int k = 0; k < p->n; ++k) for_each_rec(p->child[k], out);
        }
    }

public:
    char_tree() : root_(new node) {}
    ~char_tree() {
        if (root_) free_rec(root_);
    }
    char_tree(const char_tree& o) : root_(clone_rec(o.root_)) {}
    char_tree& operator=(const char_tree& o) {
        if (this != &o) {
            free_rec(root_);
            root_ = clone_rec(o.root_);
        }
        return *this;
    }
    char_tree(char_tree&& o) noexcept : root_(o.root_) { o.root_ = new node; }
    char_tree& operator=(char_tree&& o) noexcept {
        if (this != &o) {
            free_rec(root_);
            root_ = o.root_;
            o.root_ = new node;
        }
        return *this;
    }

    uint64_t size() const { return root_->cnt; }

    uint64_t node_visits() const { return visits_.load(std::memory_order_relaxed); }
    void reset_node_visits() const { visits_.store(0, std::memory_order_relaxed); }

    uint8_t access(uint64_t pos) const {
        assert(pos < size());
        return access_rec(root_, pos);
    }

    // Occurrences of c among the first pos elements.
    uint64_t rank(uint64_t pos, uint8_t c) const {
        assert(pos <= size());
        if (pos == 0) return 0;
        return rank_rec(root_, pos, c);
    }

    uint64_t count(uint8_t c) const { return count_of(root_, c); }

    // 0-based position of the k-th occurrence of c; requires 1 <= k <= count(c).
    uint64_t select(uint64_t k, uint8_t c) const {
        assert(k >= 1 && k <= count(c));
        return select_rec(root_, k, c);
    }

    void insert(uint64_t pos, uint8_t c) {
        assert(pos <= size());
        if (root_->height > 0) root_->ensure_sym();
        node* s = insert_rec(root_, pos, c);
        if (s != nullptr) {
            node* r = new node;
            r->height = root_->height + 1;
            r->n = 2;
            r->child[0] = root_;
            r->child[1] = s;
            pull_full(r);
            root_ = r;
        }
    }

    void erase(uint64_t pos) {
        assert(pos < size());
        erase_rec(root_, pos);
        collapse_root();
    }

    std::vector<uint8_t> to_vector() const {
        std::vector<uint8_t> out;
        out.reserve(size());
        for_each_rec(root_, out);
        return out;
    }

    void assign(const std::vector<uint8_t>& xs) {
        free_rec(root_);
        root_ = new node;
        for (uint64_t i = 0; i < xs.size(); ++i) insert(i, xs[i]);
    }
};

}  // namespace drindex::detail
