#include <algorithm>
#include <stdexcept>

#include "rulingsim/algorithms.hpp"

namespace rulingsim {

namespace {

constexpr std::size_t kD = kConstantDegree;

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    if (x % p == 0) return false;
  }
  return true;
}

// Smallest q with q^e >= m.
std::uint64_t integer_root_ceil(std::uint64_t m, std::size_t e) {
  auto pow_at_least = [&](std::uint64_t q) {
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < e; ++i) {
      if (acc >= (m + q - 1) / q) return true;  // acc * q >= m without overflow
      acc *= q;
    }
    return acc >= m;
  };
  std::uint64_t lo = 1, hi = 1;
  while (!pow_at_least(hi)) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_at_least(mid)) hi = mid; else lo = mid + 1;
  }
  return lo;
}

struct LinialStep {
  std::size_t degree = 0;  // polynomial degree d
  std::uint64_t q = 0;     // prime field size; new palette is q^2
};

// Cheapest polynomial step for palette size m: prime q > kD * d with
// q^(d+1) >= m, minimizing q. Returns q = 0 if no step shrinks the palette.
LinialStep choose_step(std::uint64_t m) {
  LinialStep best;
  for (std::size_t d = 1; d < 64; ++d) {
    if (best.q != 0 && kD * d + 1 > best.q) break;
    std::uint64_t q = std::max<std::uint64_t>(integer_root_ceil(m, d + 1), kD * d + 1);
    while (!is_prime(q)) ++q;
    if (best.q == 0 || q < best.q) best = {d, q};
  }
  if (best.q * best.q >= m) best.q = 0;
  return best;
}

}  // namespace

std::vector<NodeId> mis_constant_degree(SimState& state, MisRounds* out_rounds) {
  const Graph& g = state.graph();
  const std::vector<NodeId> alive = state.alive_nodes();
  MisRounds mr;
  if (alive.empty()) {
    if (out_rounds) *out_rounds = mr;
    return {};
  }
  for (NodeId v : alive) {
    if (state.alive_degree(v) > kD) {
      throw std::logic_error("mis_constant_degree: node " + std::to_string(v) + " has " +
                             std::to_string(state.alive_degree(v)) + " alive neighbors (> 18)");
    }
  }
  const NodeMask& is_alive = state.alive_mask();
  std::vector<std::uint64_t> color(g.node_count(), 0);
  for (NodeId v : alive) color[v] = v;
  std::uint64_t palette = g.node_count();

  // Polynomial color reduction. A color x < q^(d+1) is read as the base-q
  // digits of a polynomial p_x of degree <= d over GF(q); a node picks the
  // first a where p_x(a) differs from every neighbor's value and takes color
  // a*q + p_x(a). Distinct polynomials agree on at most d points and there
  // are at most kD neighbors, so kD*d < q guarantees a free point.
  for (LinialStep step; (step = choose_step(palette)).q != 0;) {
    const std::uint64_t q = step.q;
    auto eval = [&](std::uint64_t x, std::uint64_t a) {
      // Horner over the base-q digits, most significant first.
      std::uint64_t digits[64];
      std::size_t len = 0;
      for (std::size_t i = 0; i <= step.degree; ++i, x /= q) digits[len++] = x % q;
      std::uint64_t y = 0;
      while (len-- > 0) y = (y * a + digits[len]) % q;
      return y;
    };
    std::vector<std::uint64_t> next(color);
    for (NodeId v : alive) {
      std::uint64_t a = 0;
      for (; a < q; ++a) {
        const std::uint64_t mine = eval(color[v], a);
        bool clash = false;
        for (NodeId w : g.neighbors(v)) {
          if (is_alive[w] && eval(color[w], a) == mine) {
            clash = true;
            break;
          }
        }
        if (!clash) break;
      }
      if (a == q) throw std::logic_error("mis_constant_degree: polynomial reduction found no free point");
      next[v] = a * q + eval(color[v], a);
    }
    color.swap(next);
    palette = q * q;
    ++mr.linial_steps;
  }

  // Block reduction: within each block of 2(kD+1) consecutive colors, the
  // upper kD+1 colors are moved one color per round into the lower kD+1.
  const std::uint64_t target = kD + 1, block = 2 * target;
  while (palette > target) {
    std::vector<std::vector<NodeId>> by_offset(block);
    for (NodeId v : alive) by_offset[color[v] % block].push_back(v);
    std::vector<std::uint8_t> taken(target);
    for (std::uint64_t off = target; off < block; ++off) {
      for (NodeId v : by_offset[off]) {
        const std::uint64_t base = color[v] - off;
        std::fill(taken.begin(), taken.end(), 0);
        for (NodeId w : g.neighbors(v)) {
          if (is_alive[w] && color[w] >= base && color[w] < base + target) taken[color[w] - base] = 1;
        }
        const auto pick = static_cast<std::uint64_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
        color[v] = base + pick;
      }
    }
    for (NodeId v : alive) color[v] = (color[v] / block) * target + color[v] % block;
    palette = (palette + block - 1) / block * target;
    ++mr.block_phases;
  }

  // One round per color class: a node joins unless a neighbor already did.
  std::vector<std::vector<NodeId>> by_color(palette);
  for (NodeId v : alive) by_color[color[v]].push_back(v);
  NodeMask joined(g.node_count(), 0);
  std::vector<NodeId> mis;
  for (const auto& cls : by_color) {
    for (NodeId v : cls) {
      bool blocked = false;
      for (NodeId w : g.neighbors(v)) blocked = blocked || (is_alive[w] && joined[w]);
      if (!blocked) {
        joined[v] = 1;
        mis.push_back(v);
      }
    }
  }
  mr.final_colors = palette;
  mr.rounds = mr.linial_steps + mr.block_phases * target + mr.final_colors;
  std::sort(mis.begin(), mis.end());
  state.join_set(mis);
  state.retire(alive);  // every other node has a neighbor in the MIS
  state.charge_rounds(mr.rounds);
  if (out_rounds) *out_rounds = mr;
  return mis;
}

}  // namespace rulingsim
