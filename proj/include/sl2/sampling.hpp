#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <vector>

#include "sl2/subgroup.hpp"

namespace sl2 {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Distinct slim subgroups of SL2(Z/p^n), n >= 2, with full image mod p, built by lifting
// one level at a time from the exhaustive list at level 2.
std::vector<Subgroup> full_image_slim(std::uint64_t p, int n, std::size_t count, std::mt19937_64& rng,
                                      const Deadline& deadline = std::nullopt);

// Distinct slim subgroups of SL2(Z/p^n): generated by random elements of the preimage of a
// random subgroup of SL2(F_p), topped up with full_image_slim. May return fewer than count.
std::vector<Subgroup> sample_slim(const GroupCtx& ctx, std::size_t count, std::mt19937_64& rng,
                                  const Deadline& deadline = std::nullopt);

}  // namespace sl2
