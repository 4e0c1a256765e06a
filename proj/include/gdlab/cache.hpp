#pragma once

#include <string>

#include "gdlab/arith_tables.hpp"

namespace gdlab {

// Binary table cache, bit-exact across platforms.
//
//   offset  size          content
//   0       8             magic "GDLAB\0\0\1" (last byte = format version 1)
//   8       8             limit, little-endian u64
//   16      ...           arrays in field order, little-endian:
//                           mu[1..limit]                int8
//                           lambda_log[1..limit]        IEEE-754 double
//                           prime_power_base[1..limit]  u32
//                           phi[1..limit]               u32
//                           spf[2..limit]               u32
//   end-8   8             FNV-1a 64 checksum of everything after the magic
//                         (limit field + arrays), little-endian u64
void save_cache(const ArithTables& tables, const std::string& path);

ArithTables load_cache(const std::string& path);

// Exposed for tests: FNV-1a 64 over a byte range.
u64 fnv1a64(const unsigned char* data, std::size_t len, u64 seed = 14695981039346656037ull);

} // namespace gdlab
