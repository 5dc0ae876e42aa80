#include "dd/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace dd {

std::string content_digest(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(),
                  nullptr))
    throw std::runtime_error("content_digest: EVP_Digest failed");
  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.resize(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[md[i] >> 4];
    out[2 * i + 1] = hex[md[i] & 0xf];
  }
  return out;
}

}  // namespace dd
