// B+ tree over "tickets": opaque elements that know which leaf holds them,
// so their current position can be recovered by walking up parent links.
// Two such trees sharing one ticket population form a dynamic permutation:
// position-to-value is a rank in the other tree.

#pragma once

#include <array>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <vector>

namespace drindex::detail {

// side 0/1 selects which tree's leaf pointer a ticket stores
struct pticket {
    std::array<void*, 2> leaf{nullptr, nullptr};
};

class ticket_tree {
public:
    static constexpr int fanout = 32;
    static constexpr int min_fill = fanout / 2;

private:
    struct node {
        uint16_t height = 0;
        uint16_t n = 0;
        uint64_t cnt = 0;
        node* parent = nullptr;
        std::array<pticket*, fanout> tk{};
        std::array<node*, fanout> child{};
    };

    node* root_;
    int side_;
    mutable std::atomic<uint64_t> visits_{0};

    void touch(const node* p) const {
        (void)p;
        visits_.fetch_add(1, std::memory_order_relaxed);
    }

    void fix(node* p) {
        if (p->height == 0) {
            p->cnt = p->n;
            for (int k = 0; k < p->n; ++k) p->tk[k]->leaf[side_] = p;
        } else {
            uint64_t c = 0;
            for (int k = 0; k < p->n; ++k) {
                c += p->child[k]->cnt;
                p->child[k]->parent = p;
            }
            p->cnt = c;
        }
    }

    static void free_rec(node* p) {
        if (p->height > 0)
            for (int k = 0; k < p->n; ++k) free_rec(p->child[k]);
        delete p;
    }

    node* split_node(node* p) {
        assert(p->n == fanout);
        node* r = new node;
        r->height = p->height;
        int keep = fanout / 2;
        r->n = fanout - keep;
        for (int k = keep; k < fanout; ++k) {
            if (p->height == 0)
                r->tk[k - keep] = p->tk[k];
            else
                r->child[k - keep] = p->child[k];
        }
        p->n = keep;
        fix(p);
        fix(r);
        return r;
    }

    static void place_child(node* p, int at, node* c) {
        for (int k = p->n; k > at; --k) p->child[k] = p->child[k - 1];
        p->child[at] = c;
        p->n++;
    }

    node* insert_rec(node* p, uint64_t pos, pticket* t) {
        touch(p);
        if (p->height == 0) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (pos <= p->n)
                    insert_rec(p, pos, t);
                else
                    insert_rec(r, pos - p->n, t);
                return r;
            }
            assert(pos <= p->n);
            for (int k = p->n; k > static_cast<int>(pos); --k) p->tk[k] = p->tk[k - 1];
            p->tk[pos] = t;
            p->n++;
            p->cnt = p->n;
            t->leaf[side_] = p;
            return nullptr;
        }
        int j = 0;
        while (j + 1 < p->n && pos > p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        node* s = insert_rec(p->child[j], pos, t);
        p->cnt++;
        if (s != nullptr) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (j < p->n)
                    place_child(p, j + 1, s);
                else
                    place_child(r, j - p->n + 1, s);
                fix(p);
                fix(r);
                return r;
            }
            place_child(p, j + 1, s);
            fix(p);
        }
        return nullptr;
    }

    void rebalance(node* p, int j) {
        node* c = p->child[j];
        node* left = j > 0 ? p->child[j - 1] : nullptr;
        node* right = j + 1 < p->n ? p->child[j + 1] : nullptr;
        if (left && left->n > min_fill) {
            if (c->height == 0) {
                for (int k = c->n; k > 0; --k) c->tk[k] = c->tk[k - 1];
                c->tk[0] = left->tk[left->n - 1];
            } else {
                for (int k = c->n; k > 0; --k) c->child[k] = c->child[k - 1];
                c->child[0] = left->child[left->n - 1];
            }
            c->n++;
            left->n--;
            fix(c);
            fix(left);
            return;
        }
        if (right && right->n > min_fill) {
            if (c->height == 0) {
                c->tk[c->n] = right->tk[0];
                for (int k = 0; k + 1 < right->n; ++k) right->tk[k] = right->tk[k + 1];
            } else {
                c->child[c->n] = right->child[0];
                for (int k = 0; k + 1 < right->n; ++k) right->child[k] = right->child[k + 1];
            }
            c->n++;
            right->n--;
            fix(c);
            fix(right);
            return;
        }
        node* a = left ? left : c;
        node* b = left ? c : right;
        assert(b != nullptr && a->n + b->n <= fanout);
        for (int k = 0; k < b->n; ++k) {
            if (a->height == 0)
                a->tk[a->n + k] = b->tk[k];
            else
                a->child[a->n + k] = b->child[k];
        }
        a->n += b->n;
        fix(a);
        int gone = left ? j : j + 1;
        for (int k = gone; k + 1 < p->n; ++k) p->child[k] = p->child[k + 1];
        p->n--;
        delete b;
    }

    void erase_rec(node* p, uint64_t pos) {
        touch(p);
        if (p->height == 0) {
            assert(pos < p->n);
            for (int k = static_cast<int>(pos); k + 1 < p->n; ++k) p->tk[k] = p->tk[k + 1];
            p->n--;
            p->cnt = p->n;
            return;
        }
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
            assert(j < p->n);
        }
        erase_rec(p->child[j], pos);
        p->cnt--;
        if (p->child[j]->n < min_fill) rebalance(p, j);
    }

    pticket* at_rec(const node* p, uint64_t pos) const {
        touch(p);
        if (p->height == 0) return p->tk[pos];
        int j = 0;
        while (pos >= p->child[j]->cnt) {
            pos -= p->child[j]->cnt;
            ++j;
        }
        return at_rec(p->child[j], pos);
    }

    void collapse_root() {
        while (root_->height > 0 && root_->n == 1) {
            node* c = root_->child[0];
            delete root_;
            root_ = c;
            root_->parent = nullptr;
        }
    }

    node* attach_right(node* p, node* b) {
        touch(p);
        assert(p->height > b->height);
        if (p->height == b->height + 1) {
            node* last = p->child[p->n - 1];
            if (last->n + b->n <= fanout) {
                for (int k = 0; k < b->n; ++k) {
                    if (last->height == 0)
                        last->tk[last->n + k] = b->tk[k];
                    else
                        last->child[last->n + k] = b->child[k];
                }
                last->n += b->n;
                fix(last);
                delete b;
                fix(p);
                return nullptr;
            }
            if (b->n < min_fill) {
                int need = min_fill - b->n;
                for (int k = b->n - 1; k >= 0; --k) {
                    if (b->height == 0)
                        b->tk[k + need] = b->tk[k];
                    else
                        b->child[k + need] = b->child[k];
                }
                for (int k = 0; k < need; ++k) {
                    if (b->height == 0)
                        b->tk[k] = last->tk[last->n - need + k];
                    else
                        b->child[k] = last->child[last->n - need + k];
                }
                last->n -= need;
                b->n += need;
                fix(last);
                fix(b);
            }
            if (p->n == fanout) {
                node* r = split_node(p);
                place_child(r, r->n, b);
                fix(r);
                fix(p);
                return r;
            }
            place_child(p, p->n, b);
            fix(p);
            return nullptr;
        }
        node* s = attach_right(p->child[p->n - 1], b);
        if (s != nullptr) {
            if (p->n == fanout) {
                node* r = split_node(p);
                place_child(r, r->n, s);
                fix(r);
                fix(p);
                return r;
            }
            place_child(p, p->n, s);
        }
        fix(p);
        return nullptr;
    }

    node* attach_left(node* p, node* b) {
        touch(p);
        assert(p->height > b->height);
        if (p->height == b->height + 1) {
            node* first = p->child[0];
            if (first->n + b->n <= fanout) {
                for (int k = first->n - 1; k >= 0; --k) {
                    if (first->height == 0)
                        first->tk[k + b->n] = first->tk[k];
                    else
                        first->child[k + b->n] = first->child[k];
                }
                for (int k = 0; k < b->n; ++k) {
                    if (first->height == 0)
                        first->tk[k] = b->tk[k];
                    else
                        first->child[k] = b->child[k];
                }
                first->n += b->n;
                fix(first);
                delete b;
                fix(p);
                return nullptr;
            }
            if (b->n < min_fill) {
                int need = min_fill - b->n;
                for (int k = 0; k < need; ++k) {
                    if (b->height == 0)
                        b->tk[b->n + k] = first->tk[k];
                    else
                        b->child[b->n + k] = first->child[k];
                }
                for (int k = 0; k + need < first->n; ++k) {
                    if (first->height == 0)
                        first->tk[k] = first->tk[k + need];
                    else
                        first->child[k] = first->child[k + need];
                }
                first->n -= need;
                b->n += need;
                fix(first);
                fix(b);
            }
            if (p->n == fanout) {
                node* r = split_node(p);
                place_child(p, 0, b);
                fix(p);
                return r;
            }
            place_child(p, 0, b);
            fix(p);
            return nullptr;
        }
        node* s = attach_left(p->child[0], b);
        if (s != nullptr) {
            if (p->n == fanout) {
                node* r = split_node(p);
                if (1 < p->n)
                    place_child(p, 1, s);
                else
                    place_child(r, 1 - p->n, s);
                fix(p);
                fix(r);
                return r;
            }
            place_child(p, 1, s);
        }
        fix(p);
        return nullptr;
    }

    node* join_roots(node* a, node* b) {
        if (a->cnt == 0) {
            delete a;
            b->parent = nullptr;
            return b;
        }
        if (b->cnt == 0) {
            delete b;
            a->parent = nullptr;
            return a;
        }
        if (a->height == b->height) {
            if (a->n + b->n <= fanout) {
                for (int k = 0; k < b->n; ++k) {
                    if (a->height == 0)
                        a->tk[a->n + k] = b->tk[k];
                    else
                        a->child[a->n + k] = b->child[k];
                }
                a->n += b->n;
                fix(a);
                a->parent = nullptr;
                delete b;
                return a;
            }
            int total = a->n + b->n, want = total / 2;
            if (a->n > want) {
                int move = a->n - want;
                for (int k = b->n - 1; k >= 0; --k) {
                    if (b->height == 0)
                        b->tk[k + move] = b->tk[k];
                    else
                        b->child[k + move] = b->child[k];
                }
                for (int k = 0; k < move; ++k) {
                    if (b->height == 0)
                        b->tk[k] = a->tk[want + k];
                    else
                        b->child[k] = a->child[want + k];
                }
            } else if (a->n < want) {
                int move = want - a->n;
                for (int k = 0; k < move; ++k) {
                    if (a->height == 0)
                        a->tk[a->n + k] = b->tk[k];
                    else
                        a->child[a->n + k] = b->child[k];
                }
                for (int k = 0; k + move < b->n; ++k) {
                    if (b->height == 0)
                        b->tk[k] = b->tk[k + move];
                    else
                        b->child[k] = b->child[k + move];
                }
            }
            a->n = static_cast<uint16_t>(want);
            b->n = static_cast<uint16_t>(total - want);
            fix(a);
            fix(b);
            node* r = new node;
            r->height = a->height + 1;
            r->n = 2;
            r->child[0] = a;
            r->child[1] = b;
            fix(r);
            return r;
        }
        if (a->height > b->height) {
            node* s = attach_right(a, b);
            a->parent = nullptr;
            if (s != nullptr) {
                node* r = new node;
                r->height = a->height + 1;
                r->n = 2;
                r->child[0] = a;
                r->child[1] = s;
                fix(r);
                return r;
            }
            return a;
        }
        node* s = attach_left(b, a);
        b->parent = nullptr;
        if (s != nullptr) {
            node* r = new node;
            r->height = b->height + 1;
            r->n = 2;
            r->child[0] = b;
            r->child[1] = s;
            fix(r);
            return r;
        }
        return b;
    }

    node* make_internal(node** kids, int cnt, int height) {
        node* p = new node;
        p->height = static_cast<uint16_t>(height);
        p->n = static_cast<uint16_t>(cnt);
        for (int k = 0; k < cnt; ++k) p->child[k] = kids[k];
        fix(p);
        return p;
    }

    std::pair<node*, node*> split_rec(node* p, uint64_t k) {
        touch(p);
        if (p->height == 0) {
            node* r = new node;
            r->height = 0;
            r->n = static_cast<uint16_t>(p->n - k);
            for (int t = 0; t + static_cast<int>(k) < p->n; ++t) r->tk[t] = p->tk[k + t];
            p->n = static_cast<uint16_t>(k);
            fix(p);
            fix(r);
            p->parent = nullptr;
            r->parent = nullptr;
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
        L->parent = nullptr;
        R->parent = nullptr;
        return {L, R};
    }

    void for_each_rec(const node* p, std::vector<pticket*>& out) const {
        if (p->height == 0) {
            for (int k = 0; k < p->n; ++k) out.push_back(p->tk[k]);
        } else {
            for (int k = 0; k < p->n; ++k) for_each_rec(p->child[k], out);
        }
    }

public:
    explicit ticket_tree(int side) : root_(new node), side_(side) {}
    ~ticket_tree() {
        if (root_) free_rec(root_);
    }
    ticket_tree(const ticket_tree&) = delete;
    ticket_tree& operator=(const ticket_tree&) = delete;
    ticket_tree(ticket_tree&& o) noexcept : root_(o.root_), side_(o.side_) { o.root_ = new node; }
    ticket_tree& operator=(ticket_tree&& o) noexcept {
        if (this != &o) {
            free_rec(root_);
            root_ = o.root_;
            side_ = o.side_;
            o.root_ = new node;
        }
        return *this;
    }

    uint64_t size() const { return root_->cnt; }
    int side() const { return side_; }

    uint64_t node_visits() const { return visits_.load(std::memory_order_relaxed); }
    void reset_node_visits() const { visits_.store(0, std::memory_order_relaxed); }

    void insert(uint64_t pos, pticket* t) {
        assert(pos <= size());
        node* s = insert_rec(root_, pos, t);
        if (s != nullptr) {
            node* r = new node;
            r->height = root_->height + 1;
            r->n = 2;
            r->child[0] = root_;
            r->child[1] = s;
            fix(r);
            root_ = r;
        }
    }

    void erase(uint64_t pos) {
        assert(pos < size());
        erase_rec(root_, pos);
        collapse_root();
    }

    pticket* at(uint64_t pos) const {
        assert(pos < size());
        return at_rec(root_, pos);
    }

    // 0-based position of t, recovered by walking up from its leaf.
    uint64_t rank(const pticket* t) const {
        const node* lf = static_cast<const node*>(t->leaf[side_]);
        assert(lf != nullptr);
        touch(lf);
        uint64_t r = 0;
        int idx = -1;
        for (int k = 0; k < lf->n; ++k) {
            if (lf->tk[k] == t) {
                idx = k;
                break;
            }
        }
        assert(idx >= 0 && "ticket not in its recorded leaf");
        r = static_cast<uint64_t>(idx);
        const node* c = lf;
        const node* p = lf->parent;
        while (p != nullptr) {
            touch(p);
            for (int k = 0;; ++k) {
                assert(k < p->n);
                if (p->child[k] == c) break;
                r += p->child[k]->cnt;
            }
            c = p;
            p = p->parent;
        }
        return r;
    }

    // Moves the first k tickets behind the rest.
    void rotate(uint64_t k) {
        assert(k <= size());
        if (k == 0 || k == size()) return;
        auto [l, r] = split_rec(root_, k);
        root_ = join_roots(r, l);
        root_->parent = nullptr;
        collapse_root();
    }

    std::vector<pticket*> to_vector() const {
        std::vector<pticket*> out;
        out.reserve(size());
        for_each_rec(root_, out);
        return out;
    }
};

}  // namespace drindex::detail
