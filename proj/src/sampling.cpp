#include "sl2/sampling.hpp"

#include <algorithm>
#include <set>

namespace sl2 {

namespace {

bool expired(const Deadline& d) { return d && std::chrono::steady_clock::now() > *d; }

std::vector<Code> key_of(const Subgroup& h) { return {h.elements().begin(), h.elements().end()}; }

}  // namespace

std::vector<Subgroup> full_image_slim(std::uint64_t p, int n, std::size_t count, std::mt19937_64& rng,
                                      const Deadline& deadline) {
  if (n < 2) throw InvalidArgument("full-image slim subgroups need n >= 2");
  GroupCtx c1(p, 1), c2(p, 2);
  const std::size_t full = enumerate_group(c1).size();
  auto ok = [&](const Subgroup& h) {
    return !expired(deadline) && is_slim(h) && reduce_set(h.elements(), c1).size() == full;
  };
  std::vector<Subgroup> cur;
  for (Subgroup& h : enumerate_subgroups(Subgroup::from_elements(enumerate_group(c2))))
    if (ok(h)) cur.push_back(std::move(h));
  if (n == 2) {
    std::shuffle(cur.begin(), cur.end(), rng);
    if (cur.size() > count) cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(count), cur.end());
    return cur;
  }
  for (int k = 3; k <= n && !cur.empty(); ++k) {
    GroupCtx ck(p, k);
    std::vector<Subgroup> next;
    std::set<std::vector<Code>> seen;
    const std::size_t target = k == n ? count : std::max<std::size_t>(count, 8);
    for (int round = 0; round < 4 && next.size() < target && !expired(deadline); ++round) {
      for (const Subgroup& K : cur) {
        SampleOptions o;
        o.count = 2;
        o.max_attempts = 60;
        o.closure_cap = 20000;
        for (Subgroup& h : sample_subgroups(ck, preimage_draw(K, ck), ok, o, rng))
          if (seen.insert(key_of(h)).second) next.push_back(std::move(h));
        if (next.size() >= target) break;
      }
    }
    cur = std::move(next);
  }
  if (cur.size() > count) cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(count), cur.end());
  return cur;
}

std::vector<Subgroup> sample_slim(const GroupCtx& ctx, std::size_t count, std::mt19937_64& rng,
                                  const Deadline& deadline) {
  const std::uint64_t p = ctx.p();
  GroupCtx c1(p, 1);
  std::vector<Subgroup> sources = enumerate_subgroups(Subgroup::from_elements(enumerate_group(c1)));
  std::vector<Subgroup> out;
  std::set<std::vector<Code>> seen;
  auto ok = [&](const Subgroup& h) { return !expired(deadline) && is_slim(h); };
  std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
  std::size_t misses = 0;
  while (out.size() < count && misses < 50 * count + 200 && !expired(deadline)) {
    const Subgroup& k = sources[pick(rng)];
    SampleOptions o;
    o.count = 1;
    o.max_attempts = 10;
    o.closure_cap = 20000;
    auto got = sample_subgroups(ctx, preimage_draw(k, ctx), ok, o, rng);
    if (!got.empty() && seen.insert(key_of(got.front())).second)
      out.push_back(std::move(got.front()));
    else
      ++misses;
  }
  if (out.size() < count && ctx.n() >= 2)
    for (Subgroup& h : full_image_slim(p, ctx.n(), count - out.size(), rng, deadline))
      if (seen.insert(key_of(h)).second) out.push_back(std::move(h));
  return out;
}

}  // namespace sl2
