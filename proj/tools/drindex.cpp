// Command-line front end: build an index file from plain text, query it,
// apply edit scripts in place, verify against the brute-force oracle, and
// run desk-scale benchmarks.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "drindex/edit_op.hpp"
#include "drindex/edit_script.hpp"
#include "drindex/index_io.hpp"
#include "drindex/oracle.hpp"
#include "drindex/r_index.hpp"

namespace {

using drindex::edit_op;
using drindex::r_index;
namespace oracle = drindex::oracle;

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
}

// input text plus the trailing sentinel the index works on
std::vector<uint8_t> text_with_sentinel(const std::string& path) {
    auto bytes = read_file(path);
    for (uint64_t k = 0; k < bytes.size(); ++k)
        if (bytes[k] == 0)
            throw std::runtime_error(path + ": embedded 0x00 byte at offset " + std::to_string(k));
    bytes.push_back(0);
    return bytes;
}

std::vector<std::vector<uint8_t>> load_patterns(const std::string& pattern_file,
                                                const std::string& literal) {
    std::vector<std::vector<uint8_t>> pats;
    if (!pattern_file.empty()) {
        auto bytes = read_file(pattern_file);
        std::vector<uint8_t> cur;
        for (uint8_t b : bytes) {
            if (b == '\n') {
                if (!cur.empty()) pats.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(b);
            }
        }
        if (!cur.empty()) pats.push_back(cur);
    }
    if (!literal.empty()) pats.emplace_back(literal.begin(), literal.end());
    if (pats.empty()) throw std::runtime_error("no patterns: pass --patterns or a literal");
    return pats;
}

bool debug_trace_enabled() {
    const char* v = std::getenv("DRINDEX_DEBUG_TRACE");
    return v != nullptr && std::string(v) == "1";
}

// replays the op on explicit arrays and compares every executed iteration
// and the final structures; used when DRINDEX_DEBUG_TRACE=1
void cross_check(const std::vector<uint8_t>& pre_text, const edit_op& op,
                 const std::vector<drindex::update_step>& tr, const r_index& ix) {
    auto rep = oracle::replay_iterations(pre_text, op, 512);
    uint64_t first_j = rep.steps.front().j;
    for (const auto& stp : tr) {
        const auto& os = rep.steps.at(first_j - stp.j);
        if (os.x != stp.x || os.y != stp.y)
            throw std::runtime_error("debug trace: iteration " + std::to_string(stp.j) +
                                     " disagrees with the oracle replay");
    }
    if (ix.extract_text() != rep.new_text || ix.bwt().to_vector() != rep.final_l)
        throw std::runtime_error("debug trace: final state disagrees with the oracle replay");
    auto snap = oracle::build_snapshot(rep.new_text);
    if (ix.start_samples().to_vector() != snap.sa_s || ix.end_samples().to_vector() != snap.sa_e)
        throw std::runtime_error("debug trace: samples disagree with the oracle snapshot");
}

int cmd_build(const std::string& input, const std::string& index_path, uint64_t block_size) {
    auto text = text_with_sentinel(input);
    r_index ix = r_index::sentinel_only();
    for (uint64_t off = 0; off + 1 < text.size(); off += block_size) {
        uint64_t len = std::min<uint64_t>(block_size, text.size() - 1 - off);
        std::vector<uint8_t> block(text.begin() + off, text.begin() + off + len);
        ix.insert_string(ix.size(), block);  // append just before the sentinel
    }
    drindex::save_index(ix, index_path);
    double ratio = static_cast<double>(ix.size()) / static_cast<double>(ix.runs());
    std::printf("n=%llu r=%llu n/r=%.3f\n", static_cast<unsigned long long>(ix.size()),
                static_cast<unsigned long long>(ix.runs()), ratio);
    return 0;
}

int cmd_count(const std::string& index_path, const std::string& pattern_file,
              const std::string& literal) {
    r_index ix = drindex::load_index(index_path);
    auto pats = load_patterns(pattern_file, literal);
    for (uint64_t id = 0; id < pats.size(); ++id)
        std::printf("%llu %llu\n", static_cast<unsigned long long>(id + 1),
                    static_cast<unsigned long long>(ix.count(pats[id])));
    return 0;
}

int cmd_locate(const std::string& index_path, const std::string& pattern_file,
               const std::string& literal) {
    r_index ix = drindex::load_index(index_path);
    auto pats = load_patterns(pattern_file, literal);
    for (uint64_t id = 0; id < pats.size(); ++id) {
        std::printf("%llu", static_cast<unsigned long long>(id + 1));
        for (uint64_t p : ix.locate(pats[id]))
            std::printf(" %llu", static_cast<unsigned long long>(p));
        std::printf("\n");
    }
    return 0;
}

int cmd_edit(const std::string& index_path, const std::string& script_path) {
    r_index ix = drindex::load_index(index_path);
    auto script_bytes = read_file(script_path);
    auto lines = drindex::parse_edit_script(std::string(script_bytes.begin(), script_bytes.end()));
    bool debug = debug_trace_enabled();
    for (const auto& ln : lines) {
        std::vector<drindex::update_step> tr;
        std::vector<uint8_t> pre_text;
        bool checking = debug && ix.size() + ln.op.payload.size() <= 256;
        if (checking) {
            pre_text = ix.extract_text();
            ix.set_trace(&tr);
        }
        drindex::update_stats st;
        try {
            if (ln.op.kind == edit_op::op_kind::delete_substring)
                st = ix.delete_substring(ln.op.i, ln.op.m);
            else
                st = ix.insert_string(ln.op.i, ln.op.payload);
        } catch (const std::exception& e) {
            // the op was rejected before touching the index; prior ops are
            // already on disk
            std::fprintf(stderr, "drindex: script line %llu: %s\n",
                         static_cast<unsigned long long>(ln.line_no), e.what());
            return 1;
        }
        ix.set_trace(nullptr);
        if (checking) cross_check(pre_text, ln.op, tr, ix);
        drindex::save_index(ix, index_path);  // op-granular crash safety
        std::printf("%s K=%llu iters=%llu micros=%llu\n", ln.text.c_str(),
                    static_cast<unsigned long long>(st.k),
                    static_cast<unsigned long long>(st.iterations),
                    static_cast<unsigned long long>(st.micros));
        std::fflush(stdout);
    }
    return 0;
}

int cmd_verify(const std::string& index_path, const std::string& input,
               const std::string& script_path, uint64_t oracle_cap) {
    r_index ix = drindex::load_index(index_path);
    auto text = text_with_sentinel(input);
    if (!script_path.empty()) {
        auto script_bytes = read_file(script_path);
        auto lines =
            drindex::parse_edit_script(std::string(script_bytes.begin(), script_bytes.end()));
        for (const auto& ln : lines) text = oracle::apply_edit(text, ln.op);
    }
    if (text.size() > oracle_cap)
        throw std::runtime_error("text exceeds --oracle-cap (" + std::to_string(text.size()) +
                                 " > " + std::to_string(oracle_cap) + ")");
    auto snap = oracle::build_snapshot(text);

    int bad = 0;
    auto complain = [&](const std::string& what) {
        std::printf("mismatch: %s\n", what.c_str());
        ++bad;
    };
    if (ix.size() != snap.n())
        complain("n " + std::to_string(ix.size()) + " vs " + std::to_string(snap.n()));
    if (ix.runs() != snap.r())
        complain("r " + std::to_string(ix.runs()) + " vs " + std::to_string(snap.r()));
    if (bad == 0) {
        auto rs = ix.bwt().runs_vector();
        for (uint64_t k = 0; k < rs.size(); ++k)
            if (rs[k].first != snap.runs[k].head || rs[k].second != snap.runs[k].len)
                complain("run " + std::to_string(k + 1));
        auto ss = ix.start_samples().to_vector();
        auto se = ix.end_samples().to_vector();
        for (uint64_t k = 0; k < ss.size(); ++k) {
            if (ss[k] != snap.sa_s[k]) complain("start sample " + std::to_string(k + 1));
            if (se[k] != snap.sa_e[k]) complain("end sample " + std::to_string(k + 1));
        }
    }
    if (bad > 0) {
        std::printf("verify: FAILED (%d differences)\n", bad);
        return 1;
    }
    std::printf("verify: OK n=%llu r=%llu\n", static_cast<unsigned long long>(ix.size()),
                static_cast<unsigned long long>(ix.runs()));
    return 0;
}

int cmd_stats(const std::string& input, uint64_t oracle_cap) {
    auto text = text_with_sentinel(input);
    if (text.size() > oracle_cap)
        throw std::runtime_error("text exceeds --oracle-cap (" + std::to_string(text.size()) +
                                 " > " + std::to_string(oracle_cap) + ")");
    bool seen[256] = {};
    uint64_t sigma = 0;
    for (uint64_t k = 0; k + 1 < text.size(); ++k) {
        if (!seen[text[k]]) {
            seen[text[k]] = true;
            ++sigma;
        }
    }
    auto st = oracle::lcp_stats(text);
    std::printf("sigma=%llu n=%llu r=%llu L_avg=%.3f L_max=%llu n/r=%.3f\n",
                static_cast<unsigned long long>(sigma),
                static_cast<unsigned long long>(text.size()),
                static_cast<unsigned long long>(st.r), st.l_avg,
                static_cast<unsigned long long>(st.l_max),
                static_cast<double>(text.size()) / static_cast<double>(st.r));
    return 0;
}

struct series {
    std::vector<double> v;
    void add(double x) { v.push_back(x); }
    double mean() const {
        if (v.empty()) return 0.0;
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    }
    double stddev() const {
        if (v.size() < 2) return 0.0;
        double m = mean(), s = 0;
        for (double x : v) s += (x - m) * (x - m);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    }
};

int cmd_bench(const std::string& index_path, uint64_t ops, uint64_t pattern_count,
              uint64_t pattern_len, uint64_t seed) {
    r_index ix = drindex::load_index(index_path);
    auto text = ix.extract_text();
    std::vector<uint8_t> alpha;
    {
        bool seen[256] = {};
        for (uint8_t b : text)
            if (b != 0 && !seen[b]) {
                seen[b] = true;
                alpha.push_back(b);
            }
    }
    if (alpha.empty()) alpha.push_back('a');
    std::mt19937_64 rng(seed);

    series ins;
    for (uint64_t k = 0; k < ops; ++k) {
        uint64_t pos = 1 + rng() % ix.size();
        uint8_t c = alpha[rng() % alpha.size()];
        auto st = ix.insert_char(pos, c);
        ins.add(static_cast<double>(st.micros));
    }

    std::vector<std::vector<uint8_t>> pats;
    for (uint64_t k = 0; k < pattern_count; ++k) {
        std::vector<uint8_t> p;
        if (text.size() > pattern_len + 1) {
            uint64_t start = rng() % (text.size() - 1 - pattern_len);
            p.assign(text.begin() + start, text.begin() + start + pattern_len);
        } else {
            for (uint64_t q = 0; q < pattern_len; ++q) p.push_back(alpha[rng() % alpha.size()]);
        }
        pats.push_back(p);
    }
    series search, occ;
    uint64_t hits = 0;
    for (const auto& p : pats) {
        auto t0 = std::chrono::steady_clock::now();
        volatile uint64_t c = ix.count(p);
        auto t1 = std::chrono::steady_clock::now();
        auto where = ix.locate(p);
        auto t2 = std::chrono::steady_clock::now();
        hits += where.size();
        (void)c;
        search.add(std::chrono::duration<double, std::micro>(t1 - t0).count());
        occ.add(std::chrono::duration<double, std::micro>(t2 - t1).count());
    }

    std::printf("insert: mean %.2f us stddev %.2f us (%llu ops)\n", ins.mean(), ins.stddev(),
                static_cast<unsigned long long>(ops));
    std::printf("search: mean %.2f us stddev %.2f us (%llu patterns)\n", search.mean(),
                search.stddev(), static_cast<unsigned long long>(pattern_count));
    std::printf("locate: mean %.2f us stddev %.2f us (%llu patterns, %llu occurrences)\n",
                occ.mean(), occ.stddev(), static_cast<unsigned long long>(pattern_count),
                static_cast<unsigned long long>(hits));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic r-index over byte strings"};
    app.require_subcommand(1);

    std::string index_path, input, script, patterns, literal;
    uint64_t oracle_cap = 100000;
    uint64_t block_size = 4096;
    uint64_t seed = 1;
    uint64_t ops = 1000, pattern_count = 100, pattern_len = 100;

    auto* build = app.add_subcommand("build", "build an index file from a text file");
    build->add_option("--input", input, "text file, must not contain 0x00")->required();
    build->add_option("--index", index_path, "output index path")->required();
    build->add_option("--block-size", block_size, "insertion block size")->check(CLI::PositiveNumber);

    auto* count = app.add_subcommand("count", "occurrence counts per pattern");
    count->add_option("--index", index_path)->required();
    count->add_option("--patterns", patterns, "file with one pattern per line");
    count->add_option("pattern", literal, "literal pattern");

    auto* locate = app.add_subcommand("locate", "sorted occurrence positions per pattern");
    locate->add_option("--index", index_path)->required();
    locate->add_option("--patterns", patterns, "file with one pattern per line");
    locate->add_option("pattern", literal, "literal pattern");

    auto* edit = app.add_subcommand("edit", "apply an edit script to an index file in place");
    edit->add_option("--index", index_path)->required();
    edit->add_option("--script", script, "edit script")->required();

    auto* verify = app.add_subcommand("verify", "compare an index file against the oracle");
    verify->add_option("--index", index_path)->required();
    verify->add_option("--input", input, "original text file")->required();
    verify->add_option("--script", script, "edit script applied since the build");
    verify->add_option("--oracle-cap", oracle_cap, "refuse texts longer than this");

    auto* stats = app.add_subcommand("stats", "text statistics: sigma, n, r, LCP profile");
    stats->add_option("--input", input)->required();
    stats->add_option("--oracle-cap", oracle_cap);

    auto* bench = app.add_subcommand("bench", "desk-scale timing of insert, search, locate");
    bench->add_option("--index", index_path)->required();
    bench->add_option("--ops", ops, "random char insertions");
    bench->add_option("--pattern-count", pattern_count);
    bench->add_option("--pattern-len", pattern_len);
    bench->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*build) return cmd_build(input, index_path, block_size);
        if (*count) return cmd_count(index_path, patterns, literal);
        if (*locate) return cmd_locate(index_path, patterns, literal);
        if (*edit) return cmd_edit(index_path, script);
        if (*verify) return cmd_verify(index_path, input, script, oracle_cap);
        if (*stats) return cmd_stats(input, oracle_cap);
        if (*bench) return cmd_bench(index_path, ops, pattern_count, pattern_len, seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "drindex: %s\n", e.what());
        return 1;
    }
    return 1;
}
