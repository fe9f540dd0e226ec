// Edit operations applied to the indexed text.

#pragma once

#include <cstdint>
#include <vector>

namespace drindex {

struct edit_op {
    enum class op_kind { insert_char, insert_string, delete_substring };

    op_kind kind;
    uint64_t i = 0;                // 1-based text position
    std::vector<uint8_t> payload;  // bytes to insert (insert ops)
    uint64_t m = 0;                // number of bytes removed (deletion)

    static edit_op make_insert_char(uint64_t i, uint8_t c) {
        return {op_kind::insert_char, i, {c}, 0};
    }
    static edit_op make_insert_string(uint64_t i, std::vector<uint8_t> s) {
        return {op_kind::insert_string, i, std::move(s), 0};
    }
    static edit_op make_delete(uint64_t i, uint64_t m) {
        return {op_kind::delete_substring, i, {}, m};
    }
};

}  // namespace drindex
