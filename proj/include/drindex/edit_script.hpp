// Line-oriented edit scripts: `I <pos> <payload>` inserts at a 1-based
// position, `D <pos> <len>` deletes, `#` starts a comment. The payload is
// either a double-quoted string (\" and \\ escapes) or an even-length run
// of hex digits.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edit_op.hpp"

namespace drindex {

struct script_line {
    edit_op op;
    uint64_t line_no;  // 1-based line in the script
    std::string text;  // trimmed source line, for echoing in stats output
};

std::vector<script_line> parse_edit_script(const std::string& src);

}  // namespace drindex
