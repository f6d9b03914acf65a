#include "cache.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common.hpp"

namespace thd {

uint64_t fnv1a(const uint8_t* p, size_t n) {
    uint64_t h = 14695981039346656037ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

void BinWriter::u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void BinWriter::u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void BinWriter::str(const std::string& s) {
    u32(uint32_t(s.size()));
    raw(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

void BinWriter::seal() {
    uint64_t h = fnv1a(buf_.data(), buf_.size());
    u64(h);
}

BinReader::BinReader(std::vector<uint8_t> data) : data_(std::move(data)) {
    if (data_.size() < 8) fail(ErrorCode::CacheError, "cache entry truncated");
    limit_ = data_.size() - 8;
    uint64_t stored = 0;
    for (int i = 0; i < 8; ++i) stored |= uint64_t(data_[limit_ + i]) << (8 * i);
    if (stored != fnv1a(data_.data(), limit_))
        fail(ErrorCode::CacheError, "cache entry checksum mismatch");
}

void BinReader::need(size_t n) const {
    if (pos_ + n > limit_) fail(ErrorCode::CacheError, "cache entry truncated");
}

uint8_t BinReader::u8() {
    need(1);
    return data_[pos_++];
}

uint32_t BinReader::u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
}

uint64_t BinReader::u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
}

std::string BinReader::str() {
    uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
}

void BinReader::raw(uint8_t* out, size_t n) {
    need(n);
    std::copy(data_.begin() + long(pos_), data_.begin() + long(pos_ + n), out);
    pos_ += n;
}

bool read_file(const std::string& path, std::vector<uint8_t>& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    in.seekg(0, std::ios::end);
    auto len = in.tellg();
    if (len < 0) return false;
    in.seekg(0, std::ios::beg);
    out.resize(size_t(len));
    in.read(reinterpret_cast<char*>(out.data()), len);
    return bool(in);
}

void atomic_write_file(const std::string& path, const std::vector<uint8_t>& data) {
    namespace fs = std::filesystem;
    fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::CacheError, "cannot open cache file for writing: " + tmp.string());
        out.write(reinterpret_cast<const char*>(data.data()), long(data.size()));
        if (!out) fail(ErrorCode::CacheError, "short write to cache file: " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorCode::CacheError, "cannot publish cache file: " + path);
    }
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty()) return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

}  // namespace thd
