#include "gdlab/cache.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>

namespace gdlab {

namespace {

constexpr unsigned char kMagic[8] = {'G', 'D', 'L', 'A', 'B', 0, 0, 1};
constexpr u64 kFnvPrime = 1099511628211ull;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Buffered writer that folds every payload byte into the running checksum.
class ChecksumWriter {
public:
    ChecksumWriter(std::FILE* f) : f_(f) {}

    void put(const unsigned char* data, std::size_t len) {
        for (std::size_t i = 0; i < len; ++i) hash_ = (hash_ ^ data[i]) * kFnvPrime;
        if (std::fwrite(data, 1, len, f_) != len)
            throw CacheError("cache write failed (disk full or path not writable)");
    }

    void put_u64le(u64 v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        put(b, 8);
    }

    u64 hash() const { return hash_; }

private:
    std::FILE* f_;
    u64 hash_ = 14695981039346656037ull;
};

class ChecksumReader {
public:
    ChecksumReader(std::FILE* f) : f_(f) {}

    void get(unsigned char* data, std::size_t len) {
        if (std::fread(data, 1, len, f_) != len)
            throw CacheCorrupt("cache file truncated");
        for (std::size_t i = 0; i < len; ++i) hash_ = (hash_ ^ data[i]) * kFnvPrime;
    }

    u64 get_u64le() {
        unsigned char b[8];
        get(b, 8);
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
        return v;
    }

    u64 hash() const { return hash_; }

private:
    std::FILE* f_;
    u64 hash_ = 14695981039346656037ull;
};

// Chunked little-endian array I/O. On little-endian hosts the conversion
// loops compile down to plain copies.
template <typename T>
void write_array_le(ChecksumWriter& w, const T* data, std::size_t count) {
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<unsigned char> buf(kChunk * sizeof(T));
    std::size_t done = 0;
    while (done < count) {
        const std::size_t n = std::min(kChunk, count - done);
        for (std::size_t i = 0; i < n; ++i) {
            u64 bits;
            if constexpr (sizeof(T) == 8) {
                bits = std::bit_cast<u64>(data[done + i]);
            } else if constexpr (sizeof(T) == 4) {
                bits = std::bit_cast<u32>(data[done + i]);
            } else {
                bits = static_cast<unsigned char>(data[done + i]);
            }
            for (std::size_t b = 0; b < sizeof(T); ++b)
                buf[i * sizeof(T) + b] = static_cast<unsigned char>(bits >> (8 * b));
        }
        w.put(buf.data(), n * sizeof(T));
        done += n;
    }
}

template <typename T>
void read_array_le(ChecksumReader& r, T* data, std::size_t count) {
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<unsigned char> buf(kChunk * sizeof(T));
    std::size_t done = 0;
    while (done < count) {
        const std::size_t n = std::min(kChunk, count - done);
        r.get(buf.data(), n * sizeof(T));
        for (std::size_t i = 0; i < n; ++i) {
            u64 bits = 0;
            for (std::size_t b = 0; b < sizeof(T); ++b)
                bits |= u64(buf[i * sizeof(T) + b]) << (8 * b);
            if constexpr (sizeof(T) == 8) {
                data[done + i] = std::bit_cast<double>(bits);
            } else if constexpr (sizeof(T) == 4) {
                data[done + i] = static_cast<T>(static_cast<u32>(bits));
            } else {
                data[done + i] = static_cast<T>(static_cast<unsigned char>(bits));
            }
        }
        done += n;
    }
}

u64 payload_bytes(u64 limit) {
    const u64 n1 = limit;                       // entries over [1, limit]
    const u64 n2 = limit >= 2 ? limit - 1 : 0;  // spf over [2, limit]
    return 8 + n1 * (1 + 8 + 4 + 4) + n2 * 4;
}

} // namespace

u64 fnv1a64(const unsigned char* data, std::size_t len, u64 seed) {
    u64 h = seed;
    for (std::size_t i = 0; i < len; ++i) h = (h ^ data[i]) * kFnvPrime;
    return h;
}

void save_cache(const ArithTables& tables, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw CacheError("cannot open cache file for writing: " + path);

    if (std::fwrite(kMagic, 1, 8, f.get()) != 8)
        throw CacheError("cache write failed: " + path);

    ChecksumWriter w(f.get());
    w.put_u64le(tables.limit);
    const u64 L = tables.limit;
    write_array_le(w, tables.mu_v.data() + 1, L);
    write_array_le(w, tables.lambda_v.data() + 1, L);
    write_array_le(w, tables.ppb_v.data() + 1, L);
    write_array_le(w, tables.phi_v.data() + 1, L);
    if (L >= 2) write_array_le(w, tables.spf_v.data() + 2, L - 1);

    const u64 checksum = w.hash();
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(checksum >> (8 * i));
    if (std::fwrite(b, 1, 8, f.get()) != 8)
        throw CacheError("cache write failed: " + path);
    if (std::fflush(f.get()) != 0)
        throw CacheError("cache flush failed: " + path);
}

ArithTables load_cache(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw CacheError("cannot open cache file: " + path);

    unsigned char magic[8];
    if (std::fread(magic, 1, 8, f.get()) != 8)
        throw CacheCorrupt("cache file shorter than its header: " + path);
    if (std::memcmp(magic, kMagic, 7) != 0)
        throw CacheIncompatible("not a table cache (bad magic): " + path);
    if (magic[7] != kMagic[7])
        throw CacheIncompatible("cache format version " + std::to_string(magic[7]) +
                                " unsupported (expected " + std::to_string(kMagic[7]) + ")");

    ChecksumReader r(f.get());
    const u64 limit = r.get_u64le();
    if (limit < 1 || limit > 0xFFFFFFFFull)
        throw CacheCorrupt("cache header carries impossible limit " + std::to_string(limit));

    // Validate the declared limit against the actual file size before
    // committing to a large allocation.
    const long payload_start = 16;
    if (std::fseek(f.get(), 0, SEEK_END) != 0) throw CacheError("seek failed: " + path);
    const long fsize = std::ftell(f.get());
    const u64 expected = 8 + payload_bytes(limit) + 8;
    if (fsize < 0 || static_cast<u64>(fsize) != expected)
        throw CacheCorrupt("cache size " + std::to_string(fsize) + " does not match limit " +
                           std::to_string(limit) + " (expected " + std::to_string(expected) + ")");
    if (std::fseek(f.get(), payload_start, SEEK_SET) != 0) throw CacheError("seek failed: " + path);

    ArithTables t;
    t.limit = limit;
    t.mu_v.assign(limit + 1, 0);
    t.lambda_v.assign(limit + 1, 0.0);
    t.ppb_v.assign(limit + 1, 0);
    t.phi_v.assign(limit + 1, 0);
    t.spf_v.assign(limit + 1, 0);

    read_array_le(r, t.mu_v.data() + 1, limit);
    read_array_le(r, t.lambda_v.data() + 1, limit);
    read_array_le(r, t.ppb_v.data() + 1, limit);
    read_array_le(r, t.phi_v.data() + 1, limit);
    if (limit >= 2) read_array_le(r, t.spf_v.data() + 2, limit - 1);

    const u64 computed = r.hash();
    unsigned char b[8];
    if (std::fread(b, 1, 8, f.get()) != 8) throw CacheCorrupt("cache checksum missing: " + path);
    u64 stored = 0;
    for (int i = 0; i < 8; ++i) stored |= u64(b[i]) << (8 * i);
    if (stored != computed)
        throw CacheCorrupt("cache checksum mismatch (file damaged): " + path);
    return t;
}

} // namespace gdlab
