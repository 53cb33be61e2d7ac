#include "spintrng/whitening.hpp"

#include "spintrng/errors.hpp"

namespace spintrng {

std::vector<std::uint32_t> xor_chain(std::span<const std::uint32_t> words) {
  std::vector<std::uint32_t> out(words.begin(), words.end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] ^= out[i - 1];
  return out;
}

std::vector<std::uint32_t> xor_chain_inverse(
    std::span<const std::uint32_t> words) {
  std::vector<std::uint32_t> out(words.begin(), words.end());
  for (std::size_t i = out.size(); i > 1; --i) out[i - 1] ^= out[i - 2];
  return out;
}

std::vector<std::uint32_t> unpack_words(const Bitstream& bits,
                                        std::uint32_t width) {
  if (width < 1 || width > 32) {
    throw ConfigError("unpack_words: width must be in [1, 32]");
  }
  if (bits.n_bits % width != 0) {
    throw ConfigError("unpack_words: bit count not divisible by word width");
  }
  std::vector<std::uint32_t> words(bits.n_bits / width, 0);
  for (std::uint64_t i = 0; i < bits.n_bits; ++i) {
    words[i / width] = (words[i / width] << 1) |
                       static_cast<std::uint32_t>(bits.bit(i));
  }
  return words;
}

Bitstream pack_bitstream(std::span<const std::uint32_t> words,
                         std::uint32_t width) {
  if (width < 1 || width > 32) {
    throw ConfigError("pack_bitstream: width must be in [1, 32]");
  }
  Bitstream out;
  out.bytes.reserve((words.size() * width + 7) / 8);
  for (std::uint32_t w : words) {
    if (width < 32 && w >= (std::uint32_t{1} << width)) {
      throw ConfigError("pack_bitstream: word exceeds the stated width");
    }
    for (std::uint32_t b = 0; b < width; ++b) {
      out.push_bit((w >> (width - 1 - b)) & 1u);
    }
  }
  return out;
}

}  // namespace spintrng
