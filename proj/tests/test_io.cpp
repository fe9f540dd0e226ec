#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "drindex/edit_script.hpp"
#include "drindex/index_io.hpp"
#include "drindex/oracle.hpp"
#include "drindex/r_index.hpp"

using drindex::edit_op;
using drindex::r_index;
namespace oracle = drindex::oracle;

static std::vector<uint8_t> bv(const char* s) {
    std::vector<uint8_t> v;
    for (; *s; ++s) v.push_back(*s == '$' ? 0 : static_cast<uint8_t>(*s));
    return v;
}

static r_index make_index(const std::vector<uint8_t>& text) {
    auto snap = oracle::build_snapshot(text);
    std::vector<std::pair<uint8_t, uint64_t>> rs;
    for (const auto& rn : snap.runs) rs.emplace_back(rn.head, rn.len);
    return r_index(rs, snap.sa_s, snap.sa_e);
}

static void check_same(const r_index& a, const r_index& b) {
    CHECK(a.size() == b.size());
    CHECK(a.runs() == b.runs());
    CHECK(a.bwt().to_vector() == b.bwt().to_vector());
    CHECK(a.start_samples().to_vector() == b.start_samples().to_vector());
    CHECK(a.end_samples().to_vector() == b.end_samples().to_vector());
}

TEST_CASE("crc32 known answer") {
    const char* s = "123456789";
    CHECK(drindex::crc32(reinterpret_cast<const uint8_t*>(s), 9) == 0xcbf43926u);
    CHECK(drindex::crc32(nullptr, 0) == 0u);
}

TEST_CASE("encode decode round trip") {
    std::mt19937_64 rng(0x10u);
    std::vector<std::vector<uint8_t>> texts = {bv("$"), bv("a$"), bv("bbabba$"), bv("aaaaaa$")};
    for (int round = 0; round < 20; ++round) {
        std::vector<uint8_t> t;
        uint64_t len = 1 + rng() % 60;
        for (uint64_t k = 0; k < len; ++k) t.push_back(static_cast<uint8_t>('a' + rng() % 4));
        t.push_back(0);
        texts.push_back(t);
    }
    for (const auto& text : texts) {
        r_index ix = make_index(text);
        auto bytes = drindex::encode_index(ix);
        // deterministic writer: identical bytes on re-encode
        CHECK(bytes == drindex::encode_index(ix));
        r_index back = drindex::decode_index(bytes);
        check_same(ix, back);
        CHECK(back.coherent());
        CHECK(back.extract_text() == text);
        // queries survive the trip
        CHECK(back.count(bv("a")) == ix.count(bv("a")));
        CHECK(back.locate(bv("ab")) == ix.locate(bv("ab")));
    }
}

TEST_CASE("empty index round trip") {
    r_index empty;
    auto bytes = drindex::encode_index(empty);
    r_index back = drindex::decode_index(bytes);
    CHECK(back.size() == 0);
    CHECK(back.runs() == 0);
}

TEST_CASE("file save load with atomic replace") {
    std::string path = "/tmp/drindex_io_test.drx";
    r_index ix = make_index(bv("bbabba$"));
    drindex::save_index(ix, path);
    r_index back = drindex::load_index(path);
    check_same(ix, back);

    // saving over an existing file replaces it cleanly
    r_index ix2 = make_index(bv("abcabc$"));
    drindex::save_index(ix2, path);
    r_index back2 = drindex::load_index(path);
    check_same(ix2, back2);
    std::remove(path.c_str());

    CHECK_THROWS_AS(drindex::load_index("/tmp/drindex_io_missing.drx"), std::runtime_error);
}

TEST_CASE("corruption is detected") {
    r_index ix = make_index(bv("bbabba$"));
    auto bytes = drindex::encode_index(ix);

    // single-bit faults anywhere in the file must be caught
    std::mt19937_64 rng(0xfau);
    int caught = 0;
    for (int round = 0; round < 100; ++round) {
        auto bad = bytes;
        uint64_t bit = rng() % (bad.size() * 8);
        bad[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
        try {
            drindex::decode_index(bad);
        } catch (const std::runtime_error&) {
            ++caught;
        }
    }
    CHECK(caught == 100);

    // truncations at every prefix length
    for (uint64_t cut = 0; cut < bytes.size(); cut += 7) {
        std::vector<uint8_t> part(bytes.begin(), bytes.begin() + cut);
        CHECK_THROWS_AS(drindex::decode_index(part), std::runtime_error);
    }

    // bad magic and version with a fixed-up checksum still fail
    auto rechecksum = [](std::vector<uint8_t> b) {
        uint32_t c = drindex::crc32(b.data(), b.size() - 4);
        for (int k = 0; k < 4; ++k) b[b.size() - 4 + k] = static_cast<uint8_t>(c >> (8 * k));
        return b;
    };
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_WITH_AS(drindex::decode_index(rechecksum(bad_magic)), "index file: bad magic",
                         std::runtime_error);
    auto bad_ver = bytes;
    bad_ver[4] = 0x7f;
    CHECK_THROWS_WITH_AS(drindex::decode_index(rechecksum(bad_ver)),
                         "index file: unsupported version", std::runtime_error);
    auto bad_s4 = bytes;
    // flip one byte inside the fourth payload and fix the checksum: the
    // derived-structure audit has to object
    uint64_t header = 4 + 2 + 8 + 8;
    uint64_t r = ix.runs();
    uint64_t s4_off = header + (8 + r) + (8 + 8 * r) + (8 + 8 * r) + 8;
    bad_s4[s4_off] ^= 1;
    CHECK_THROWS_AS(drindex::decode_index(rechecksum(bad_s4)), std::runtime_error);
}

TEST_CASE("edit script parsing") {
    std::string src =
        "# build up a toy text\n"
        "I 6 \"b\"\n"
        "D 6 1   # undo it\n"
        "\n"
        "I 1 6162\n"
        "I 2 \"a\\\"b\\\\c\"\n";
    auto lines = drindex::parse_edit_script(src);
    REQUIRE(lines.size() == 4);

    CHECK(lines[0].line_no == 2);
    CHECK(lines[0].op.kind == edit_op::op_kind::insert_string);
    CHECK(lines[0].op.i == 6);
    CHECK(lines[0].op.payload == bv("b"));
    CHECK(lines[0].text == "I 6 \"b\"");

    CHECK(lines[1].line_no == 3);
    CHECK(lines[1].op.kind == edit_op::op_kind::delete_substring);
    CHECK(lines[1].op.i == 6);
    CHECK(lines[1].op.m == 1);
    CHECK(lines[1].text == "D 6 1");

    CHECK(lines[2].op.payload == bv("ab"));  // hex 61 62
    CHECK(lines[3].op.payload == std::vector<uint8_t>{'a', '"', 'b', '\\', 'c'});

    // a quoted hash is payload, not a comment
    auto hashed = drindex::parse_edit_script("I 1 \"#\"\n");
    REQUIRE(hashed.size() == 1);
    CHECK(hashed[0].op.payload == std::vector<uint8_t>{'#'});

    CHECK(drindex::parse_edit_script("").empty());
    CHECK(drindex::parse_edit_script("# only comments\n\n").empty());
}

TEST_CASE("edit script errors name the line") {
    auto wants = [](const std::string& src, const char* needle) {
        try {
            drindex::parse_edit_script(src);
            FAIL("expected parse failure for: " << src);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    wants("X 1 \"a\"", "line 1: unknown opcode");
    wants("\nI x \"a\"", "line 2: expected position");
    wants("I 0 \"a\"", "positions are 1-based");
    wants("I 1 \"ab", "unterminated string");
    wants("I 1 \"a\\z\"", "unknown escape");
    wants("I 1 616", "odd hex digit count");
    wants("I 1 zz", "payload must be quoted or hex");
    wants("I 1 \"\"", "empty payload");
    wants("I 1", "expected payload");
    wants("D 1 0", "deletion length must be positive");
    wants("D 1", "expected length");
    wants("D 1 2 3", "trailing garbage");
    wants("I 1 \"a\" x", "trailing garbage");
    wants("Insert 1 \"a\"", "unknown opcode");
    wants("I 99999999999999999999 \"a\"", "position overflows");
}
