#pragma once

#include <string>
#include <vector>

#include "morse/diagram.hpp"

namespace morse {

/// A point on the boundary away from the basepoint. Gap g sits between list
/// positions g-1 and g (gap 0 is right after the basepoint); points sharing a
/// gap are ordered left to right by sub_index.
struct MarkedPoint {
  int component = 1;
  int gap = 0;
  int sub_index = 0;

  auto operator<=>(const MarkedPoint&) const = default;
  std::string str() const;  // "c:g.s"
};

/// Parses `c:g.s` (the `.s` part is optional); throws ParseError.
MarkedPoint parse_marked_point(const std::string& text);
/// Parses a comma-separated list of points.
std::vector<MarkedPoint> parse_marked_points(const std::string& text);

/// The points as indexed by the caller (index j is the j-th list entry).
struct StarSet {
  std::vector<MarkedPoint> points;
};

struct StarOrder {
  /// Point indices in the cyclic order induced by the star, starting at 0.
  std::vector<std::size_t> cyclic;
  /// Whether the caller's indexing 0, 1, ..., n-1 agrees with `cyclic` up to
  /// rotation.
  bool starlike = false;
};

/// Tracks the points through cut_to_disc. Throws NotRealizable or InvalidPoint.
StarOrder star_order(const BoundaryConfiguration& cfg, const std::vector<MarkedPoint>& points);

/// sigma(j) = index of the point at the right end of the interval starting at
/// point j (0-based).
std::vector<std::size_t> interval_successors(const BoundaryConfiguration& cfg,
                                             const std::vector<MarkedPoint>& points);

/// Murasugi-sum splice of two closed diagrams along starlike point sets of
/// equal size. Handles are renamed with prefixes "1." and "2.". Factor-1
/// events come first; motion that leaves a factor's own boundary intervals is
/// expanded into teleports across the other factor's endpoints.
MorseDiagram splice(const MorseDiagram& d1, const StarSet& s1, const MorseDiagram& d2,
                    const StarSet& s2);

enum class HopfSign { Positive, Negative };

/// Annulus [[H+], [H-]] with one crossing of H- (rightward for positive).
MorseDiagram hopf_band(HopfSign sign);

/// Splice with a Hopf band whose two standard points sit right after H+ and H-.
MorseDiagram stabilize(const MorseDiagram& d, HopfSign sign, const MarkedPoint& p1,
                       const MarkedPoint& p2);

namespace detail {
enum class GluingRule { AsWritten, Geometric };
MorseDiagram splice_with_rule(const MorseDiagram& d1, const StarSet& s1, const MorseDiagram& d2,
                              const StarSet& s2, GluingRule rule);
}  // namespace detail

}  // namespace morse
