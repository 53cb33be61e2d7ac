#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spintrng {

// Reversible XOR-chain post-processing over equal-width words:
//   z_1 = w_1,  z_i = w_i ^ z_{i-1}   (inverse: w_i = z_i ^ z_{i-1}).
std::vector<std::uint32_t> xor_chain(std::span<const std::uint32_t> words);
std::vector<std::uint32_t> xor_chain_inverse(
    std::span<const std::uint32_t> words);

// Packed bit sequence, most significant bit first within each word and each
// byte.  origin metadata travels with the bits for report provenance.
struct Bitstream {
  std::vector<std::uint8_t> bytes;
  std::uint64_t n_bits = 0;
  std::string config_digest;  // hex digest of the generating config, if any
  bool whitened = false;

  int bit(std::uint64_t i) const {
    return (bytes[i >> 3] >> (7 - (i & 7))) & 1;
  }
  void push_bit(int b) {
    if ((n_bits & 7) == 0) bytes.push_back(0);
    if (b) bytes.back() |= static_cast<std::uint8_t>(1u << (7 - (n_bits & 7)));
    ++n_bits;
  }
};

// Words to bits: word w of width N contributes w[N-1], ..., w[0] (most
// significant first).  Width must lie in [1, 32]; words must fit it.
Bitstream pack_bitstream(std::span<const std::uint32_t> words,
                         std::uint32_t width);

// Inverse of pack_bitstream; requires n_bits divisible by width.
std::vector<std::uint32_t> unpack_words(const Bitstream& bits,
                                        std::uint32_t width);

}  // namespace spintrng
