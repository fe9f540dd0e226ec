// B+ tree over a sequence of unsigned integers, maintaining per-subtree
// element counts and sums. Backs the partial-sum lists that every other
// structure in the index is built from. Positions are 0-based here; the
// public wrappers re-expose them 1-based.

#pragma once

#include <array>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <vector>

namespace drindex::detail {

class psum_tree {
public:
    static constexpr int fanout = 32;
    static constexpr int min_fill = fanout / 2;

private:
    struct node {
        uint16_t height = 0;  // 0 = leaf
        uint16_t n = 0;       // slots in use
        uint64_t cnt = 0;     // elements below
        uint64_t sum = 0;     // value sum below
        std::array<uint64_t, fanout> val{};
        std::array<node*, fanout> child{};
    };

    node* root_;
    mutable std::atomic<uint64_t> visits_{0};

    void touch(const node* p) const {
        (void)p;
        visits_.fetch_add(1, std::memory_order_relaxed);
    }

    static void pull(node* p) {
        if (p->height == 0) {
            p->cnt = p->n;
            uint64_t s = 0;
            for (int k = 0; k < p->n; ++k) s += p->val[k];
            p->sum = s;
        } else {
            uint64_t c = 0, s = 0;
            for (int k = 0; k < p->n; ++k) {
                c += p->child[k]->cnt;
                s += p->child[k]->sum;
            }
            p->cnt = c;
            p->sum = s;
        }
    }

    static void free_rec(node* p) {
        if (p->height > 0)
            for (int k = 0; k < p->n; ++k) free_rec(p->child[k]);
        delete p;
    }

    static node* clone_rec(const node* p) {
        node* q = new node(*p);
        if (p->height > 0)
            for (int k = 0; k < p->n; ++k) q->child[k] = clone_rec(p->child[k]);
        return q;
    }

    // Splits a full node in two, each half getting fanout/2 slots.
    static node* split_node(node* p) {
        assert(p->n == fanout);
        node* r = new node;
        r->height = p->height;
        int keep = fanout / 2;
        r->n = fanout - keep;
        for (int k = keep; k < fanout; ++k) {
            if (p->height == 0)
                r->val[k - keep] = p->val[k];
            else
                r->child[k - keep] = p->child[k];
        }
        p->n = keep;
        pull(p);
        pull(r);
        return r;
    }

    // Inserts v before position pos in p's subtree. Returns the new right
    // sibling when p had to split.
    node* insert_rec(node* p, uint64_t pos, uint64_t v) {
        touch(p);
        if (p->height == 0) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (pos <= p->n) {
                    insert_rec(p, pos, v);
                } else {
                    insert_rec(r, pos - p->n, v);
                }
                return r;
            }
            assert(pos <= p->n);
            for (int k = p->n; k > static_cast<int>(pos); --k) p->val[k] = p->val[k - 1];
            p->val[pos] = v;
            p->n++;
            pull(p);
            return nullptr;
        }
        int j = 0;
        while (j + 1 < p->n && pos > p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        node* s = insert_rec(p->child[j], pos, v);
        if (s != nullptr) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (j < p->n) {
                    place_child(p, j + 1, s);
                } else {
                    place_child(r, j - p->n + 1, s);
                }
                pull(p);
                pull(r);
                return r;
            }
            place_child(p, j + 1, s);
        }
        pull(p);
        return nullptr;
    }

    static void place_child(node* p, int at, node* c) {
        for (int k = p->n; k > at; --k) p->child[k] = p->child[k - 1];
        p->child[at] = c;
        p->n++;
    }

    static void remove_child(node* p, int at) {
        for (int k = at; k + 1 < p->n; ++k) p->child[k] = p->child[k + 1];
        p->n--;
    }

    // Restores min-fill of p->child[j] by borrowing from a sibling or merging.
    static void rebalance(node* p, int j) {
        node* c = p->child[j];
        node* left = j > 0 ? p->child[j - 1] : nullptr;
        node* right = j + 1 < p->n ? p->child[j + 1] : nullptr;
        if (left && left->n > min_fill) {
            if (c->height == 0) {
                for (int k = c->n; k > 0; --k) c->val[k] = c->val[k - 1];
                c->val[0] = left->val[left->n - 1];
            } else {
                for (int k = c->n; k > 0; --k) c->child[k] = c->child[k - 1];
                c->child[0] = left->child[left->n - 1];
            }
            c->n++;
            left->n--;
            pull(c);
            pull(left);
            return;
        }
        if (right && right->n > min_fill) {
            if (c->height == 0) {
                c->val[c->n] = right->val[0];
                for (int k = 0; k + 1 < right->n; ++k) right->val[k] = right->val[k + 1];
            } else {
                c->child[c->n] = right->child[0];
                for (int k = 0; k + 1 < right->n; ++k) right->child[k] = right->child[k + 1];
            }
            c->n++;
            right->n--;
            pull(c);
            pull(right);
            return;
        }
        // Merge with a sibling; both are at exactly min_fill (or root child).
        node* a = left ? left : c;
        node* b = left ? c : right;
        assert(b != nullptr && a->n + b->n <= fanout);
        for (int k = 0; k < b->n; ++k) {
            if (a->height == 0)
                a->val[a->n + k] = b->val[k];
            else
                a->child[a->n + k] = b->child[k];
        }
        a->n += b->n;
        pull(a);
        remove_child(p, left ? j : j + 1);
        delete b;
    }

    void erase_rec(node* p, uint64_t pos) {
        touch(p);
        if (p->height == 0) {
            assert(pos < p->n);
            for (int k = static_cast<int>(pos); k + 1 < p->n; ++k) p->val[k] = p->val[k + 1];
            p->n--;
            pull(p);
            return;
        }
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
            assert(j < p->n);
        }
        erase_rec(p->child[j], pos);
        if (p->child[j]->n < min_fill) rebalance(p, j);
        pull(p);
    }

    uint64_t get_rec(const node* p, uint64_t pos) const {
        touch(p);
        if (p->height == 0) return p->val[pos];
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        return get_rec(p->child[j], pos);
    }

    void add_rec(node* p, uint64_t pos, int64_t delta) {
        touch(p);
        if (p->height == 0) {
            p->val[pos] = static_cast<uint64_t>(static_cast<int64_t>(p->val[pos]) + delta);
            pull(p);
            return;
        }
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        add_rec(p->child[j], pos, delta);
        pull(p);
    }

    uint64_t prefix_rec(const node* p, uint64_t pos) const {
        touch(p);
        if (p->height == 0) {
            uint64_t s = 0;
            for (uint64_t k = 0; k < pos; ++k) s += p->val[k];
            return s;
        }
        uint64_t s = 0;
        int j = 0;
        while (pos > p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            s += p->child[j]->sum;
            ++j;
        }
        return s + prefix_rec(p->child[j], pos);
    }

    // Smallest 1-based count c with prefix-sum(c) >= t; caller has checked
    // t <= total sum.
    uint64_t search_rec(const node* p, uint64_t t) const {
        touch(p);
        if (p->height == 0) {
            uint64_t c = 0;
            for (int k = 0; k < p->n; ++k) {
                if (t <= p->val[k]) return c + 1;
                t -= p->val[k];
                ++c;
            }
            assert(false && "search past leaf despite sum guarantee");
            return c;
        }
        uint64_t c = 0;
        for (int k = 0; k < p->n; ++k) {
            if (t <= p->child[k]->sum) return c + search_rec(p->child[k], t);
            t -= p->child[k]->sum;
            c += p->child[k]->cnt;
        }
        assert(false && "search past node despite sum guarantee");
        return c;
    }

    void collapse_root() {
        while (root_->height > 0 && root_->n == 1) {
            node* c = root_->child[0];
            delete root_;
            root_ = c;
        }
    }

    // Joins b (height <= p->height - 1) below the rightmost spine of p.
    // Returns a new right sibling of p when p splits.
    node* attach_right(node* p, node* b) {
        touch(p);
        assert(p->height > b->height);
        if (p->height == b->height + 1) {
            node* last = p->child[p->n - 1];
            if (last->n + b->n <= fanout) {
                for (int k = 0; k < b->n; ++k) {
                    if (last->height == 0)
                        last->val[last->n + k] = b->val[k];
                    else
                        last->child[last->n + k] = b->child[k];
                }
                last->n += b->n;
                pull(last);
                delete b;
                pull(p);
                return nullptr;
            }
            if (b->n < min_fill) {
                // Shift slots from last so both halves satisfy min-fill.
                int need = min_fill - b->n;
                for (int k = b->n - 1; k >= 0; --k) {
                    if (b->height == 0)
                        b->val[k + need] = b->val[k];
                    else
                        b->child[k + need] = b->child[k];
                }
                for (int k = 0; k < need; ++k) {
                    if (b->height == 0)
                        b->val[k] = last->val[last->n - need + k];
                    else
                        b->child[k] = last->child[last->n - need + k];
                }
                last->n -= need;
                b->n += need;
                pull(last);
                pull(b);
            }
            if (p->n == fanout) {
                node* r = split_node(p);
                place_child(r, r->n, b);
                pull(r);
                pull(p);
                return r;
            }
            place_child(p, p->n, b);
            pull(p);
            return nullptr;
        }
        node* s = attach_right(p->child[p->n - 1], b);
        if (s != nullptr) {
            if (p->n == fanout) {
                node* r = split_node(p);
                place_child(r, r->n, s);
                pull(r);
                pull(p);
                return r;
            }
            place_child(p, p->n, s);
        }
        pull(p);
        return nullptr;
    }

    node* attach_left(node* p, node* b) {  // mirror of attach_right
        touch(p);
        assert(p->height > b->height);
        if (p->height == b->height + 1) {
            node* first = p->child[0];
            if (first->n + b->n <= fanout) {
                for (int k = first->n - 1; k >= 0; --k) {
                    if (first->height == 0)
                        first->val[k + b->n] = first->val[k];
                    else
                        first->child[k + b->n] = first->child[k];
                }
                for (int k = 0; k < b->n; ++k) {
                    if (first->height == 0)
                        first->val[k] = b->val[k];
                    else
                        first->child[k] = b->child[k];
                }
                first->n += b->n;
                pull(first);
                delete b;
                pull(p);
                return nullptr;
            }
            if (b->n < min_fill) {
                int need = min_fill - b->n;
                for (int k = 0; k < need; ++k) {
                    if (b->height == 0)
                        b->val[b->n + k] = first->val[k];
                    else
                        b->child[b->n + k] = first->child[k];
                }
                for (int k = 0; k + need < first->n; ++k) {
                    if (first->height == 0)
                        first->val[k] = first->val[k + need];
                    else
                        first->child[k] = first->child[k + need];
                }
                first->n -= need;
                b->n += need;
                pull(first);
                pull(b);
            }
            if (p->n == fanout) {
                node* r = split_node(p);
                place_child(p, 0, b);
                pull(p);
                return r;
            }
            place_child(p, 0, b);
            pull(p);
            return nullptr;
        }
        node* s = attach_left(p->child[0], b);
        if (s != nullptr) {
            // s carries the upper half of the split child: it goes after it.
            if (p->n == fanout) {
                node* r = split_node(p);
                if (1 < p->n)
                    place_child(p, 1, s);
                else
                    place_child(r, 1 - p->n, s);
                pull(p);
                pull(r);
                return r;
            }
            place_child(p, 1, s);
        }
        pull(p);
        return nullptr;
    }

    // Joins two root nodes into one tree; consumes both.
    node* join_roots(node* a, node* b) {
        if (a->cnt == 0) {
            delete a;
            return b;
        }
        if (b->cnt == 0) {
            delete b;
            return a;
        }
        if (a->height == b->height) {
            if (a->n + b->n <= fanout) {
                for (int k = 0; k < b->n; ++k) {
                    if (a->height == 0)
                        a->val[a->n + k] = b->val[k];
                    else
                        a->child[a->n + k] = b->child[k];
                }
                a->n += b->n;
                pull(a);
                delete b;
                return a;
            }
            // Even split across the pair, then a shared parent.
            int total = a->n + b->n, want = total / 2;
            if (a->n > want) {
                int move = a->n - want;
                for (int k = b->n - 1; k >= 0; --k) {
                    if (b->height == 0)
                        b->val[k + move] = b->val[k];
                    else
                        b->child[k + move] = b->child[k];
                }
                for (int k = 0; k < move; ++k) {
                    if (b->height == 0)
                        b->val[k] = a->val[want + k];
                    else
                        b->child[k] = a->child[want + k];
                }
            } else if (a->n < want) {
                int move = want - a->n;
                for (int k = 0; k < move; ++k) {
                    if (a->height == 0)
                        a->val[a->n + k] = b->val[k];
                    else
                        a->child[a->n + k] = b->child[k];
                }
                for (int k = 0; k + move < b->n; ++k) {
                    if (b->height == 0)
                        b->val[k] = b->val[k + move];
                    else
                        b->child[k] = b->child[k + move];
                }
            }
            a->n = want;
            b->n = total - want;
            pull(a);
            pull(b);
            node* r = new node;
            r->height = a->height + 1;
            r->n = 2;
            r->child[0] = a;
            r->child[1] = b;
            pull(r);
            return r;
        }
        if (a->height > b->height) {
            node* s = attach_right(a, b);
            if (s != nullptr) {
                node* r = new node;
                r->height = a->height + 1;
                r->n = 2;
                r->child[0] = a;
                r->child[1] = s;
                pull(r);
                return r;
            }
            return a;
        }
        node* s = attach_left(b, a);
        if (s != nullptr) {
            node* r = new node;
            r->height = b->height + 1;
            r->n = 2;
            r->child[0] = b;
            r->child[1] = s;
            pull(r);
            return r;
        }
        return b;
    }

    static node* make_internal(node** kids, int cnt, int height) {
        node* p = new node;
        p->height = static_cast<uint16_t>(height);
        p->n = static_cast<uint16_t>(cnt);
        for (int k = 0; k < cnt; ++k) p->child[k] = kids[k];
        pull(p);
        return p;
    }

    // Splits p's subtree at element index k; returns both halves as roots.
    std::pair<node*, node*> split_rec(node* p, uint64_t k) {
        touch(p);
        if (p->height == 0) {
            node* r = new node;
            r->height = 0;
            r->n = static_cast<uint16_t>(p->n - k);
            for (int t = 0; t + static_cast<int>(k) < p->n; ++t) r->val[t] = p->val[k + t];
            p->n = static_cast<uint16_t>(k);
            pull(p);
            pull(r);
            return {p, r};
        }
        int j = 0;
        while (k > p->child[j]->cnt) {
            k -= p->child[j]->cnt;
            ++j;
        }
        auto [cl, cr] = split_rec(p->child[j], k);
        node* left = j > 0 ? make_internal(&p->child[0], j, p->height) : nullptr;
        node* right = j + 1 < p->n ? make_internal(&p->child[j + 1], p->n - j - 1, p->height) : nullptr;
        p->n = 0;
        delete p;
        node* L = left ? join_roots(left, cl) : cl;
        node* R = right ? join_roots(cr, right) : cr;
        return {L, R};
    }

    void for_each_rec(const node* p, std::vector<uint64_t>& out) const {
        if (p->height == 0) {
            for (int k = 0; k < p->n; ++k) out.push_back(p->val[k]);
        } else {
            for (int k = 0; k < p->n; ++k) for_each_rec(p->child[k], out);
        }
    }

public:
    psum_tree() : root_(new node) {}
    ~psum_tree() {
        if (root_) free_rec(root_);
    }
    psum_tree(const psum_tree& o) : root_(clone_rec(o.root_)) {}
    psum_tree& operator=(const psum_tree& o) {
        if (this != &o) {
            free_rec(root_);
            root_ = clone_rec(o.root_);
        }
        return *this;
    }
    psum_tree(psum_tree&& o) noexcept : root_(o.root_) { o.root_ = new node; }
    psum_tree& operator=(psum_tree&& o) noexcept {
        if (this != &o) {
            free_rec(root_);
            root_ = o.root_;
            o.root_ = new node;
        }
        return *this;
    }

    uint64_t size() const { return root_->cnt; }
    uint64_t total() const { return root_->sum; }

    uint64_t node_visits() const { return visits_.load(std::memory_order_relaxed); }
    void reset_node_visits() const { visits_.store(0, std::memory_order_relaxed); }

    uint64_t get(uint64_t pos) const {
        assert(pos < size());
        return get_rec(root_, pos);
    }

    void set(uint64_t pos, uint64_t v) {
        uint64_t cur = get(pos);
        add_rec(root_, pos, static_cast<int64_t>(v) - static_cast<int64_t>(cur));
    }

    void add(uint64_t pos, int64_t delta) {
        assert(pos < size());
        add_rec(root_, pos, delta);
    }

    void insert(uint64_t pos, uint64_t v) {
        assert(pos <= size());
        node* s = insert_rec(root_, pos, v);
        if (s != nullptr) {
            node* r = new node;
            r->height = root_->height + 1;
            r->n = 2;
            r->child[0] = root_;
            r->child[1] = s;
            pull(r);
            root_ = r;
        }
    }

    void erase(uint64_t pos) {
        assert(pos < size());
        erase_rec(root_, pos);
        collapse_root();
    }

    // Sum of the first pos elements (pos in [0, size]).
    uint64_t prefix_sum(uint64_t pos) const {
        assert(pos <= size());
        if (pos == 0) return 0;
        return prefix_rec(root_, pos);
    }

    // Smallest 1-based count c with prefix_sum(c) >= t; size()+1 when t
    // exceeds the total.
    uint64_t search_sum(uint64_t t) const {
        if (t == 0) return 1;
        if (t > total()) return size() + 1;
        return search_rec(root_, t);
    }

    // Moves the first k elements behind the rest: [a_1..a_k | rest] -> [rest | a_1..a_k].
    void rotate(uint64_t k) {
        assert(k <= size());
        if (k == 0 || k == size()) return;
        auto [l, r] = split_rec(root_, k);
        root_ = join_roots(r, l);
        collapse_root();
    }

    std::vector<uint64_t> to_vector() const {
        std::vector<uint64_t> out;
        out.reserve(size());
        for_each_rec(root_, out);
        return out;
    }

    void assign(const std::vector<uint64_t>& xs) {
        free_rec(root_);
        root_ = new node;
        for (uint64_t i = 0; i < xs.size(); ++i) insert(i, xs[i]);
    }
};

}  // namespace drindex::detail
