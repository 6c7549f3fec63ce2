#include "dlgrowth/digest.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "dlgrowth/errors.hpp"

namespace dlgrowth {

std::string sha256_hex(const std::string& bytes) {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int out_len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), out, &out_len, EVP_sha256(), nullptr))
        throw NumericalError("sha256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    s.reserve(out_len * 2);
    for (unsigned int i = 0; i < out_len; ++i) {
        s.push_back(hex[out[i] >> 4]);
        s.push_back(hex[out[i] & 0xf]);
    }
    return s;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file for digest: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

}  // namespace dlgrowth
