#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trps {

// FNV-1a 64-bit content hash; stable across platforms for identical bytes.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

// Fixed scientific formatting used in all emitted data files ("%.12e").
std::string format_sci(double v);
// Shortest round-trip formatting used in config echo ("%.17g").
std::string format_exact(double v);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Compact file token for a rate value: 5 -> "5", 2.5 -> "2p5".
std::string rate_token(double v);

struct ManifestEntry {
    std::string relpath;
    std::uint64_t hash = 0;
    std::uint64_t bytes = 0;
};

struct Manifest {
    std::string root;
    std::vector<ManifestEntry> entries;

    std::string serialize() const;
    bool has(const std::string& relpath) const;
};

}  // namespace trps
