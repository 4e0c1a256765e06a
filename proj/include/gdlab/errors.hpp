#pragma once

#include <stdexcept>
#include <string>

namespace gdlab {

// Precondition violations (bad N, R beyond table limit, non-squarefree input, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Problems with the binary table cache.
class CacheError : public std::runtime_error {
public:
    explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

// Damaged file: truncation, checksum mismatch, size inconsistent with header.
class CacheCorrupt : public CacheError {
public:
    explicit CacheCorrupt(const std::string& what) : CacheError(what) {}
};

// Recognizably foreign or versioned-away file: wrong magic or version byte.
class CacheIncompatible : public CacheError {
public:
    explicit CacheIncompatible(const std::string& what) : CacheError(what) {}
};

// Run configuration problems (bad JSON, unknown fields, targets beyond the
// table limit), reported with field diagnostics at parse time.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gdlab
