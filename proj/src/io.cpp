#include "trps/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "trps/errors.hpp"

namespace trps {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return std::string(buf);
}

std::string format_exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string rate_token(double v) {
    std::ostringstream os;
    os << v;
    std::string s = os.str();
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
    }
    return s;
}

std::string Manifest::serialize() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << hash_hex(e.hash) << "  " << e.bytes << "  " << e.relpath << '\n';
    }
    return os.str();
}

bool Manifest::has(const std::string& relpath) const {
    for (const auto& e : entries) {
        if (e.relpath == relpath) return true;
    }
    return false;
}

}  // namespace trps
