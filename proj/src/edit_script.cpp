#include "drindex/edit_script.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace drindex {

namespace {

[[noreturn]] void fail(uint64_t line_no, const std::string& what) {
    throw std::invalid_argument("edit script line " + std::to_string(line_no) + ": " + what);
}

void skip_ws(const std::string& s, size_t& at) {
    while (at < s.size() && (s[at] == ' ' || s[at] == '\t')) ++at;
}

uint64_t parse_number(const std::string& s, size_t& at, uint64_t line_no, const char* what) {
    skip_ws(s, at);
    size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (at == start) fail(line_no, std::string("expected ") + what);
    uint64_t v = 0;
    for (size_t k = start; k < at; ++k) {
        uint64_t d = static_cast<uint64_t>(s[k] - '0');
        if (v > (UINT64_MAX - d) / 10) fail(line_no, std::string(what) + " overflows");
        v = v * 10 + d;
    }
    return v;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::vector<uint8_t> parse_payload(const std::string& s, size_t& at, uint64_t line_no) {
    skip_ws(s, at);
    if (at >= s.size()) fail(line_no, "expected payload");
    std::vector<uint8_t> out;
    if (s[at] == '"') {
        ++at;
        bool closed = false;
        while (at < s.size()) {
            char c = s[at++];
            if (c == '"') {
                closed = true;
                break;
            }
            if (c == '\\') {
                if (at >= s.size()) fail(line_no, "dangling escape");
                char e = s[at++];
                if (e != '"' && e != '\\') fail(line_no, "unknown escape");
                c = e;
            }
            out.push_back(static_cast<uint8_t>(c));
        }
        if (!closed) fail(line_no, "unterminated string");
    } else {
        size_t start = at;
        while (at < s.size() && hex_digit(s[at]) >= 0) ++at;
        size_t len = at - start;
        if (len == 0) fail(line_no, "payload must be quoted or hex");
        if (len % 2 != 0) fail(line_no, "odd hex digit count");
        for (size_t k = start; k < at; k += 2)
            out.push_back(static_cast<uint8_t>(hex_digit(s[k]) * 16 + hex_digit(s[k + 1])));
    }
    if (out.empty()) fail(line_no, "empty payload");
    return out;
}

// strip a trailing comment, respecting quoted payloads
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t k = 0; k < line.size(); ++k) {
        char c = line[k];
        if (quoted && c == '\\') {
            ++k;
            continue;
        }
        if (c == '"') quoted = !quoted;
        if (c == '#' && !quoted) return line.substr(0, k);
    }
    return line;
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

std::vector<script_line> parse_edit_script(const std::string& src) {
    std::vector<script_line> out;
    uint64_t line_no = 0;
    size_t pos = 0;
    while (pos <= src.size()) {
        size_t nl = src.find('\n', pos);
        std::string raw = src.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? src.size() + 1 : nl + 1;
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        size_t at = 0;
        char opc = line[at++];
        if (opc != 'I' && opc != 'D') fail(line_no, "unknown opcode");
        if (at < line.size() && line[at] != ' ' && line[at] != '\t') fail(line_no, "unknown opcode");
        uint64_t i = parse_number(line, at, line_no, "position");
        if (i < 1) fail(line_no, "positions are 1-based");
        edit_op op;
        if (opc == 'I') {
            op = edit_op::make_insert_string(i, parse_payload(line, at, line_no));
        } else {
            uint64_t m = parse_number(line, at, line_no, "length");
            if (m < 1) fail(line_no, "deletion length must be positive");
            op = edit_op::make_delete(i, m);
        }
        skip_ws(line, at);
        if (at != line.size()) fail(line_no, "trailing garbage");
        out.push_back({std::move(op), line_no, line});
    }
    return out;
}

}  // namespace drindex
