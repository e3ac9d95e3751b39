#pragma once

#include <optional>
#include <vector>

#include "morse/torus_mcg.hpp"

namespace morse {

/// A handle whose `vertical_end` never moves while `moving_end` moves only
/// leftward (slides or basepoint crossings).
struct LeftVeeringWitness {
  HandleId handle;
  Sign vertical_end = Sign::Plus;
  Sign moving_end = Sign::Minus;
  std::vector<std::size_t> event_indices;

  bool operator==(const LeftVeeringWitness&) const = default;
};

/// First declared handle carrying a witness. Throws NonClosedInput.
std::optional<LeftVeeringWitness> find_left_veering(const MorseDiagram& d);

struct Certificate {
  std::vector<MorseMove> moves;
  MorseDiagram rewritten;
  LeftVeeringWitness witness;
};

/// Breadth-first search over Morse-move rewrites of a one-holed-torus diagram
/// for a diagram with a left-veering handle. Throws NotTorusPage or
/// NonClosedInput.
std::optional<Certificate> certificate_search(const MorseDiagram& d, std::size_t max_depth,
                                              std::size_t node_limit = 200000);

enum class Verdict { OvertwistedCertified, Unknown };

struct OtVerdict {
  Verdict verdict = Verdict::Unknown;
  std::optional<Certificate> certificate;  // set iff certified; empty moves for a direct hit
};

/// Unknown carries no claim of tightness.
OtVerdict ot_verdict(const MorseDiagram& d, std::size_t search_depth);

}  // namespace morse
