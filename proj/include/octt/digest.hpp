#ifndef OCTT_DIGEST_HPP
#define OCTT_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace octt {

// SHA-256 as a lowercase hex string (64 characters), via OpenSSL's EVP
// interface.  Used for content hashes of matrix files and for the
// configuration hash embedded in every report.
std::string sha256_hex(const void* data, std::size_t size);
std::string sha256_hex(std::string_view bytes);
std::string sha256_hex(const std::vector<std::uint8_t>& bytes);

// Hash of a file's raw bytes; errors when the file cannot be read.
std::string sha256_file(const std::string& path);

} // namespace octt

#endif
