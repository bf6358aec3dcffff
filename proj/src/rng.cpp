#include "dgcn/rng.hpp"

#include <vector>

namespace dgcn {

namespace {

void push_u64(std::vector<std::uint32_t>& words, std::uint64_t v) {
  words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  words.push_back(static_cast<std::uint32_t>(v >> 32));
}

}  // namespace

Rng make_stream(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> salt) {
  std::vector<std::uint32_t> words;
  words.reserve(4 + 2 * salt.size());
  push_u64(words, seed);
  push_u64(words, static_cast<std::uint64_t>(stream));
  for (auto s : salt) push_u64(words, s);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

double uniform01(Rng& rng) {
  // 53 random mantissa bits; identical across standard library vendors.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dgcn
