#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace solis {

// Incremental SHA-256 (OpenSSL-backed). Used for parameter digests.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const void* data, std::size_t len);
    void update(const std::string& s) { update(s.data(), s.size()); }

    // Finalizes and returns the lowercase hex digest. The object must not be
    // updated afterwards.
    std::string hex_digest();

private:
    void* ctx_;
};

std::string sha256_hex(const void* data, std::size_t len);

}  // namespace solis
