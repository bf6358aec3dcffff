#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dgcn {

using Rng = std::mt19937_64;

/// Named substreams derived from one master seed. Generation, attack
/// selection and overload draws never share state, so changing the attack
/// scenario leaves the generated network untouched.
enum class Stream : std::uint64_t { generation = 1, attack = 2, overload = 3 };

Rng make_stream(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> salt = {});

/// Uniform draw in [0, 1).
double uniform01(Rng& rng);

}  // namespace dgcn
