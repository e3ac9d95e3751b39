#pragma once

#include <array>
#include <map>
#include <numeric>

#include "morse/torus_mcg.hpp"

namespace oracle {

using namespace morse;

/// Cutting along every co-core leaves polygons whose sides alternate between
/// boundary gaps and co-core sides. Arriving at endpoint L along a gap, the
/// walk continues along the co-core to partner(L) and leaves through the gap
/// after it. The page is a disc plus bands iff there is exactly one polygon
/// and no label-free boundary circle (beyond the bare disc).
inline bool realizable(const BoundaryConfiguration& cfg) {
  std::map<EndpointLabel, EndpointLabel> next_label;  // label -> label ending the gap after it
  std::size_t labels = 0;
  for (const auto& c : cfg.components) {
    if (c.labels.empty()) {
      if (cfg.components.size() == 1) return true;
      return false;
    }
    for (std::size_t i = 0; i < c.labels.size(); ++i)
      next_label[c.labels[i]] = c.labels[(i + 1) % c.labels.size()];
    labels += c.labels.size();
  }
  std::size_t cycles = 0;
  std::map<EndpointLabel, bool> seen;
  for (const auto& [start, unused] : next_label) {
    if (seen[start]) continue;
    ++cycles;
    for (EndpointLabel at = start; !seen[at];) {
      seen[at] = true;
      at = next_label.at(at).partner();
    }
  }
  return cycles == 1 && labels > 0;
}

using SmallMat = std::array<long long, 4>;  // a b c d

inline SmallMat mul(const SmallMat& x, const SmallMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}
inline SmallMat inv(const SmallMat& x) { return {x[3], -x[1], -x[2], x[0]}; }

inline SmallMat small(const Mat2& m) {
  return {static_cast<long long>(m.a), static_cast<long long>(m.b), static_cast<long long>(m.c),
          static_cast<long long>(m.d)};
}

/// All determinant-one matrices with entries bounded by `bound` in absolute value.
inline std::vector<SmallMat> bounded_sl2(long long bound) {
  std::vector<SmallMat> out;
  for (long long a = -bound; a <= bound; ++a)
    for (long long b = -bound; b <= bound; ++b)
      for (long long c = -bound; c <= bound; ++c) {
        if (a != 0) {
          if ((1 + b * c) % a == 0) {
            const long long d = (1 + b * c) / a;
            if (d >= -bound && d <= bound) out.push_back({a, b, c, d});
          }
        } else if (b * c == -1) {
          for (long long d = -bound; d <= bound; ++d) out.push_back({a, b, c, d});
        }
      }
  return out;
}

/// Classes of `ms` under conjugation by bounded conjugators (transitively closed).
inline std::vector<std::size_t> brute_force_classes(const std::vector<SmallMat>& ms, long long bound = 20) {
  std::map<SmallMat, std::size_t> index;
  for (std::size_t i = 0; i < ms.size(); ++i) index.emplace(ms[i], i);
  std::vector<std::size_t> parent(ms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto conjugators = bounded_sl2(bound);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (const auto& p : conjugators) {
      auto it = index.find(mul(mul(p, ms[i]), inv(p)));
      if (it != index.end()) parent[find(it->second)] = find(i);
    }
  for (std::size_t i = 0; i < ms.size(); ++i) parent[i] = find(i);
  return parent;
}

/// Evolving-core product: each slide twists about the current class of the
/// mover's core (slide action: +1 for left), and the cores are carried along.
struct Evolving {
  Mat2 product;
  BigInt exponent = 0;
};

inline Evolving evolving_product(const std::vector<std::pair<Curve, long long>>& slides) {
  Evolving out;
  for (const auto& [curve, power] : slides) {
    // The current core is the image of the fixed core under the product so far.
    const Mat2& m = out.product;
    const Vec2 core = curve == Curve::A ? Vec2{m.a, m.c} : Vec2{m.b, m.d};
    out.product = twist_matrix(core, power) * out.product;
    out.exponent += power;
  }
  return out;
}

}  // namespace oracle
