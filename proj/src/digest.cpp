#include "octt/digest.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "octt/check.hpp"

namespace octt {

namespace {

std::string to_hex(const unsigned char* digest, unsigned len) {
    static const char* k = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(k[digest[i] >> 4]);
        out.push_back(k[digest[i] & 0xf]);
    }
    return out;
}

struct CtxDeleter {
    void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};
using Ctx = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;

} // namespace

std::string sha256_hex(const void* data, std::size_t size) {
    Ctx ctx(EVP_MD_CTX_new());
    LOGIC_CHECK(ctx != nullptr);
    LOGIC_CHECK(EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) == 1);
    LOGIC_CHECK(EVP_DigestUpdate(ctx.get(), data, size) == 1);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    LOGIC_CHECK(EVP_DigestFinal_ex(ctx.get(), digest, &len) == 1);
    return to_hex(digest, len);
}

std::string sha256_hex(std::string_view bytes) {
    return sha256_hex(bytes.data(), bytes.size());
}

std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
    return sha256_hex(bytes.data(), bytes.size());
}

std::string sha256_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    DOMAIN_CHECK(bool(is));
    Ctx ctx(EVP_MD_CTX_new());
    LOGIC_CHECK(ctx != nullptr);
    LOGIC_CHECK(EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) == 1);
    std::array<char, 1 << 16> buf;
    while (is) {
        is.read(buf.data(), std::streamsize(buf.size()));
        const std::streamsize got = is.gcount();
        if (got > 0)
            LOGIC_CHECK(
                EVP_DigestUpdate(ctx.get(), buf.data(), std::size_t(got)) ==
                1);
    }
    DOMAIN_CHECK(is.eof());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    LOGIC_CHECK(EVP_DigestFinal_ex(ctx.get(), digest, &len) == 1);
    return to_hex(digest, len);
}

} // namespace octt
