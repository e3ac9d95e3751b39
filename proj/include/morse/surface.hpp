#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "morse/error.hpp"

namespace morse {

using HandleId = std::string;

enum class Sign { Plus, Minus };

constexpr Sign opposite(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// One endpoint of a co-core: `A+` is the terminal end, `A-` the initial end.
struct EndpointLabel {
  HandleId handle;
  Sign sign = Sign::Plus;

  EndpointLabel partner() const { return {handle, opposite(sign)}; }
  std::string str() const;

  auto operator<=>(const EndpointLabel&) const = default;
};

/// Parses `A+` / `A-`; returns nullopt on malformed input.
std::optional<EndpointLabel> parse_label(const std::string& token);

/// Handle names are nonempty runs of letters, digits, `_` and `.`.
bool is_valid_handle_id(const std::string& name);

struct Component {
  int id = 1;
  /// Read left to right starting just after the component's basepoint.
  std::vector<EndpointLabel> labels;

  bool operator==(const Component&) const = default;
};

struct BoundaryConfiguration {
  std::vector<Component> components;

  bool operator==(const BoundaryConfiguration&) const = default;

  std::size_t label_count() const;
  std::string str() const;
};

struct SurfaceType {
  int genus = 0;
  int boundary_count = 1;
  int handle_count = 0;

  int euler_characteristic() const { return 1 - handle_count; }
  bool operator==(const SurfaceType&) const = default;
};

/// Throws DuplicateComponent, DuplicateLabel or MissingPartner.
void validate_configuration(const BoundaryConfiguration& cfg);

/// Handles in order of first appearance (component order, then list order).
std::vector<HandleId> handles_of(const BoundaryConfiguration& cfg);

/// A circle is a cyclic word of labels.
using Circle = std::vector<EndpointLabel>;

struct CutStep {
  HandleId handle;
  std::vector<Circle> circles;  // state after cutting `handle`
};

struct CutTrace {
  std::vector<Circle> initial;
  std::vector<CutStep> steps;
  bool realizable = false;
};

/// Removes one handle at a time (in `handles_of` order), splitting or merging
/// the cyclic boundary words. Realizable iff one empty circle remains.
CutTrace cut_to_disc(const BoundaryConfiguration& cfg);

/// Throws NotRealizable when the cut procedure does not end in a disc.
SurfaceType surface_type(const BoundaryConfiguration& cfg);

namespace detail {

/// Cut rules over circles of arbitrary items. `find(item)` returns the
/// endpoint label carried by the item, or nullopt for passive items (marked
/// points) which are carried along.
template <typename Item, typename LabelOf>
void cut_handle(std::vector<std::vector<Item>>& circles, const HandleId& handle,
                LabelOf label_of) {
  auto locate = [&](Sign sign) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t c = 0; c < circles.size(); ++c) {
      for (std::size_t i = 0; i < circles[c].size(); ++i) {
        auto l = label_of(circles[c][i]);
        if (l && l->handle == handle && l->sign == sign) return {c, i};
      }
    }
    throw MorseError(ErrorCode::MissingPartner, handle);
  };
  auto [pc, pi] = locate(Sign::Plus);
  auto [mc, mi] = locate(Sign::Minus);
  if (pc == mc) {
    // (X+ alpha X- beta) -> (alpha), (beta)
    auto& w = circles[pc];
    std::vector<Item> alpha, beta;
    const std::size_t n = w.size();
    for (std::size_t k = (pi + 1) % n; k != mi; k = (k + 1) % n) alpha.push_back(w[k]);
    for (std::size_t k = (mi + 1) % n; k != pi; k = (k + 1) % n) beta.push_back(w[k]);
    w = std::move(alpha);
    circles.insert(circles.begin() + static_cast<std::ptrdiff_t>(pc) + 1, std::move(beta));
  } else {
    // (X+ alpha), (X- beta) -> (alpha beta)
    auto rotated_tail = [](const std::vector<Item>& w, std::size_t at) {
      std::vector<Item> out;
      for (std::size_t k = 1; k < w.size(); ++k) out.push_back(w[(at + k) % w.size()]);
      return out;
    };
    auto merged = rotated_tail(circles[pc], pi);
    auto beta = rotated_tail(circles[mc], mi);
    merged.insert(merged.end(), beta.begin(), beta.end());
    const std::size_t keep = std::min(pc, mc), drop = std::max(pc, mc);
    circles[keep] = std::move(merged);
    circles.erase(circles.begin() + static_cast<std::ptrdiff_t>(drop));
  }
}

}  // namespace detail

}  // namespace morse
