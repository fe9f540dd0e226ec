#include "drindex/index_io.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace drindex {

namespace {

constexpr char magic[4] = {'D', 'R', 'I', 'X'};

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<uint8_t>(v >> (8 * k)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<uint8_t>(v >> (8 * k)));
}

void put_bytes(std::vector<uint8_t>& out, const std::vector<uint8_t>& payload) {
    put_u64(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
}

void put_u64s(std::vector<uint8_t>& out, const std::vector<uint64_t>& vals) {
    put_u64(out, vals.size() * 8);
    for (uint64_t v : vals) put_u64(out, v);
}

// bounds-checked little-endian cursor
struct reader {
    const std::vector<uint8_t>& b;
    uint64_t at = 0;

    void need(uint64_t k) const {
        if (at + k > b.size()) throw std::runtime_error("index file: truncated");
    }
    uint16_t u16() {
        need(2);
        uint16_t v = static_cast<uint16_t>(b[at] | (b[at + 1] << 8));
        at += 2;
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<uint64_t>(b[at + k]) << (8 * k);
        at += 8;
        return v;
    }
    std::vector<uint8_t> bytes(uint64_t want) {
        uint64_t len = u64();
        if (len != want) throw std::runtime_error("index file: payload length mismatch");
        need(len);
        std::vector<uint8_t> v(b.begin() + at, b.begin() + at + len);
        at += len;
        return v;
    }
    std::vector<uint64_t> u64s(uint64_t count) {
        uint64_t len = u64();
        if (len != count * 8) throw std::runtime_error("index file: payload length mismatch");
        std::vector<uint64_t> v(count);
        for (uint64_t k = 0; k < count; ++k) v[k] = u64();
        return v;
    }
};

// regrouped run lengths and head deltas, recomputed from the run list by a
// stable sort on the head symbol
void regroup(const std::vector<uint8_t>& heads, const std::vector<uint64_t>& lens,
             std::vector<uint64_t>& s3, std::vector<uint64_t>& s4) {
    uint64_t r = heads.size();
    std::vector<uint64_t> pi(r);
    std::iota(pi.begin(), pi.end(), 0);
    std::stable_sort(pi.begin(), pi.end(),
                     [&](uint64_t a, uint64_t b) { return heads[a] < heads[b]; });
    s3.resize(r);
    s4.resize(r);
    uint64_t prev = 0;
    for (uint64_t k = 0; k < r; ++k) {
        s3[k] = lens[pi[k]];
        uint64_t head1 = static_cast<uint64_t>(heads[pi[k]]) + 1;
        s4[k] = head1 - prev;
        prev = head1;
    }
}

}  // namespace

uint32_t crc32(const uint8_t* data, uint64_t len) {
    static const std::array<uint32_t, 256> table = [] {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i) {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = c & 1 ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    uint32_t c = 0xffffffffu;
    for (uint64_t i = 0; i < len; ++i) c = table[(c ^ data[i]) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

std::vector<uint8_t> encode_index(const r_index& ix) {
    std::vector<uint8_t> out;
    out.insert(out.end(), magic, magic + 4);
    put_u16(out, index_format_version);
    put_u64(out, ix.size());
    uint64_t r = ix.runs();
    put_u64(out, r);

    auto rs = ix.bwt().runs_vector();
    assert(rs.size() == r);
    std::vector<uint8_t> heads(r);
    std::vector<uint64_t> lens(r);
    for (uint64_t k = 0; k < r; ++k) {
        heads[k] = rs[k].first;
        lens[k] = rs[k].second;
    }
    std::vector<uint64_t> s3, s4;
    regroup(heads, lens, s3, s4);

    put_bytes(out, heads);
    put_u64s(out, lens);
    put_u64s(out, s3);
    put_u64s(out, s4);
    put_u64s(out, ix.start_samples().to_vector());
    put_u64s(out, ix.end_samples().to_vector());
    put_u32(out, crc32(out.data(), out.size()));
    return out;
}

r_index decode_index(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 4 + 2 + 8 + 8 + 4) throw std::runtime_error("index file: truncated");
    uint32_t want = crc32(bytes.data(), bytes.size() - 4);
    uint32_t got = 0;
    for (int k = 0; k < 4; ++k)
        got |= static_cast<uint32_t>(bytes[bytes.size() - 4 + k]) << (8 * k);
    if (want != got) throw std::runtime_error("index file: checksum mismatch");

    reader rd{bytes};
    for (char c : magic)
        if (rd.b[rd.at++] != static_cast<uint8_t>(c))
            throw std::runtime_error("index file: bad magic");
    uint16_t ver = rd.u16();
    if (ver != index_format_version) throw std::runtime_error("index file: unsupported version");
    uint64_t n = rd.u64();
    uint64_t r = rd.u64();
    if (r > n) throw std::runtime_error("index file: more runs than symbols");

    std::vector<uint8_t> heads = rd.bytes(r);
    std::vector<uint64_t> lens = rd.u64s(r);
    std::vector<uint64_t> s3 = rd.u64s(r);
    std::vector<uint64_t> s4 = rd.u64s(r);
    std::vector<uint64_t> sa_s = rd.u64s(r);
    std::vector<uint64_t> sa_e = rd.u64s(r);
    if (rd.at != bytes.size() - 4) throw std::runtime_error("index file: trailing bytes");

    if (r == 0) {
        if (n != 0) throw std::runtime_error("index file: empty run list for nonempty text");
        return r_index();
    }
    std::vector<uint64_t> s3_chk, s4_chk;
    regroup(heads, lens, s3_chk, s4_chk);
    if (s3 != s3_chk || s4 != s4_chk)
        throw std::runtime_error("index file: derived structures disagree");

    std::vector<std::pair<uint8_t, uint64_t>> rs(r);
    uint64_t total = 0;
    for (uint64_t k = 0; k < r; ++k) {
        rs[k] = {heads[k], lens[k]};
        total += lens[k];
    }
    if (total != n) throw std::runtime_error("index file: run lengths do not sum to n");
    r_index ix(rs, sa_s, sa_e);
    if (!ix.coherent()) throw std::runtime_error("index file: structures fail invariants");
    return ix;
}

void save_index(const r_index& ix, const std::string& path) {
    auto bytes = encode_index(ix);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot replace " + path);
    }
}

r_index load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return decode_index(bytes);
}

}  // namespace drindex
