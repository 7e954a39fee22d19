#include "polarforge/avector.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polarforge {

namespace {
int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace

std::string AVector::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t n = size();
    std::string out((n + 3) / 4, '0');
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_info(i)) continue;
        std::size_t nib = i / 4;
        int bit = 3 - static_cast<int>(i % 4);  // MSB of a nibble = lowest position
        out[nib] = digits[hex_value(out[nib]) | (1 << bit)];
    }
    return out;
}

void AVector::save(std::ostream& os) const {
    os << "polar-avector v1\n";
    os << "N=" << size() << " ones=" << ones() << "\n";
    os << to_hex() << "\n";
}

void AVector::save_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    save(os);
}

AVector AVector::load(std::istream& is) {
    std::string magic, header, hex;
    if (!std::getline(is, magic) || magic != "polar-avector v1")
        throw std::runtime_error("bad A-vector file: missing 'polar-avector v1' header");
    if (!std::getline(is, header))
        throw std::runtime_error("bad A-vector file: missing size line");
    std::size_t n = 0, ones = 0;
    if (std::sscanf(header.c_str(), "N=%zu ones=%zu", &n, &ones) != 2)
        throw std::runtime_error("bad A-vector file: malformed size line '" + header + "'");
    if (!std::getline(is, hex))
        throw std::runtime_error("bad A-vector file: missing bit line");
    if (hex.size() != (n + 3) / 4)
        throw std::runtime_error("bad A-vector file: expected " + std::to_string((n + 3) / 4) +
                                 " hex digits, got " + std::to_string(hex.size()));
    AVector a(n);
    for (std::size_t i = 0; i < n; ++i) {
        int v = hex_value(hex[i / 4]);
        if (v < 0) throw std::runtime_error("bad A-vector file: non-hex digit");
        if ((v >> (3 - static_cast<int>(i % 4))) & 1) a.set_info(i, true);
    }
    if (a.ones() != ones)
        throw std::runtime_error("bad A-vector file: ones count mismatch");
    return a;
}

AVector AVector::load_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return load(is);
}

}  // namespace polarforge
