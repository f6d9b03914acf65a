#pragma once
// Little-endian binary (de)serialization with a trailing FNV-1a checksum,
// plus atomic file replacement, for on-disk cache entries.

#include <cstdint>
#include <string>
#include <vector>

namespace thd {

uint64_t fnv1a(const uint8_t* p, size_t n);

class BinWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u32(uint32_t v);
    void u64(uint64_t v);
    void str(const std::string& s);  // u32 length + bytes
    void raw(const uint8_t* p, size_t n) { buf_.insert(buf_.end(), p, p + n); }

    // Appends the checksum of everything written so far; write nothing after.
    void seal();
    const std::vector<uint8_t>& buffer() const { return buf_; }

private:
    std::vector<uint8_t> buf_;
};

// Verifies the trailing checksum on construction (CacheError on mismatch or
// truncation); reads then walk the payload in writer order.
class BinReader {
public:
    explicit BinReader(std::vector<uint8_t> data);

    uint8_t u8();
    uint32_t u32();
    uint64_t u64();
    std::string str();
    void raw(uint8_t* out, size_t n);
    bool at_end() const { return pos_ == limit_; }

private:
    void need(size_t n) const;
    std::vector<uint8_t> data_;
    size_t pos_ = 0;
    size_t limit_ = 0;
};

// Whole-file read; false if the file does not exist or cannot be read.
bool read_file(const std::string& path, std::vector<uint8_t>& out);

// Write via a temp file in the same directory + rename, so a concurrent
// reader never sees a torn entry.  Creates the directory if missing.
void atomic_write_file(const std::string& path, const std::vector<uint8_t>& data);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace thd
