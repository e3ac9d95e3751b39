#include "morse/splice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace morse {

std::string MarkedPoint::str() const {
  return std::to_string(component) + ":" + std::to_string(gap) + "." + std::to_string(sub_index);
}

MarkedPoint parse_marked_point(const std::string& text) {
  MarkedPoint p;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError(1, "expected c:g.s, got '" + text + "'");
  const std::string comp = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  std::string sub = "0";
  if (const auto dot = rest.find('.'); dot != std::string::npos) {
    sub = rest.substr(dot + 1);
    rest = rest.substr(0, dot);
  }
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size() || v < 0) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw ParseError(1, "bad number '" + s + "' in point '" + text + "'");
    }
  };
  p.component = to_int(comp);
  p.gap = to_int(rest);
  p.sub_index = to_int(sub);
  return p;
}

std::vector<MarkedPoint> parse_marked_points(const std::string& text) {
  std::vector<MarkedPoint> out;
  std::istringstream is(text);
  for (std::string item; std::getline(is, item, ',');)
    if (!item.empty()) out.push_back(parse_marked_point(item));
  if (out.empty()) throw ParseError(1, "no points given");
  return out;
}

namespace {

/// A component's labels interleaved with the marked points on it.
struct FactorItem {
  bool is_point = false;
  EndpointLabel label;
  std::size_t point = 0;

  bool operator==(const FactorItem& o) const {
    return is_point == o.is_point && (is_point ? point == o.point : label == o.label);
  }
};

using FactorList = std::vector<FactorItem>;

std::size_t component_index(const BoundaryConfiguration& cfg, int id) {
  for (std::size_t c = 0; c < cfg.components.size(); ++c)
    if (cfg.components[c].id == id) return c;
  throw MorseError(ErrorCode::InvalidPoint, "no component " + std::to_string(id));
}

std::vector<FactorList> factor_lists(const BoundaryConfiguration& cfg,
                                     const std::vector<MarkedPoint>& points) {
  std::set<MarkedPoint> distinct(points.begin(), points.end());
  if (distinct.size() != points.size()) throw MorseError(ErrorCode::InvalidPoint, "repeated point");
  std::vector<std::vector<std::size_t>> by_component(cfg.components.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const std::size_t c = component_index(cfg, points[j].component);
    if (points[j].gap < 0 || points[j].gap > static_cast<int>(cfg.components[c].labels.size()))
      throw MorseError(ErrorCode::InvalidPoint, "gap out of range: " + points[j].str());
    by_component[c].push_back(j);
  }
  std::vector<FactorList> lists(cfg.components.size());
  for (std::size_t c = 0; c < cfg.components.size(); ++c) {
    auto& idx = by_component[c];
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return std::pair(points[x].gap, points[x].sub_index) < std::pair(points[y].gap, points[y].sub_index);
    });
    const auto& labels = cfg.components[c].labels;
    std::size_t next = 0;
    for (std::size_t g = 0; g <= labels.size(); ++g) {
      while (next < idx.size() && points[idx[next]].gap == static_cast<int>(g))
        lists[c].push_back({true, {}, idx[next++]});
      if (g < labels.size()) lists[c].push_back({false, labels[g], 0});
    }
  }
  return lists;
}

}  // namespace

StarOrder star_order(const BoundaryConfiguration& cfg, const std::vector<MarkedPoint>& points) {
  validate_configuration(cfg);
  auto lists = factor_lists(cfg, points);
  auto label_of = [](const FactorItem& it) {
    return it.is_point ? std::nullopt : std::optional<EndpointLabel>(it.label);
  };
  for (const auto& h : handles_of(cfg)) detail::cut_handle(lists, h, label_of);
  const bool disc = lists.size() == 1 &&
                    std::all_of(lists.front().begin(), lists.front().end(),
                                [](const FactorItem& it) { return it.is_point; });
  if (!disc) throw MorseError(ErrorCode::NotRealizable, "configuration " + cfg.str() + " is not a disc after cutting");
  StarOrder out;
  if (points.empty()) {
    out.starlike = true;
    return out;
  }
  const auto& circle = lists.front();
  auto start = std::find_if(circle.begin(), circle.end(), [](const FactorItem& it) { return it.point == 0; });
  const auto offset = static_cast<std::size_t>(start - circle.begin());
  for (std::size_t k = 0; k < circle.size(); ++k) out.cyclic.push_back(circle[(offset + k) % circle.size()].point);
  std::vector<std::size_t> identity(points.size());
  std::iota(identity.begin(), identity.end(), 0);
  out.starlike = out.cyclic == identity;
  return out;
}

std::vector<std::size_t> interval_successors(const BoundaryConfiguration& cfg,
                                             const std::vector<MarkedPoint>& points) {
  const auto lists = factor_lists(cfg, points);
  std::vector<std::size_t> sigma(points.size());
  for (const auto& list : lists) {
    std::vector<std::size_t> order;
    for (const auto& it : list)
      if (it.is_point) order.push_back(it.point);
    for (std::size_t k = 0; k < order.size(); ++k) sigma[order[k]] = order[(k + 1) % order.size()];
  }
  return sigma;
}

// ---------------------------------------------------------------------------
// Splice

namespace {

struct Item {
  enum class Kind { Label, Base, Fresh, Junction } kind = Kind::Label;
  int factor = 0;
  EndpointLabel label;  // Label
  int comp_id = 0;      // Base: original component id; Fresh: circle ordinal
  std::size_t interval = 0;  // Junction
  bool right_end = false;    // Junction
  bool visible = false;      // Base / Fresh

  bool same(const Item& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Label: return label == o.label;
      case Kind::Base: return factor == o.factor && comp_id == o.comp_id;
      case Kind::Fresh: return comp_id == o.comp_id;
      case Kind::Junction: return factor == o.factor && interval == o.interval && right_end == o.right_end;
    }
    return false;
  }
};

Item label_item(int factor, const EndpointLabel& l) { return {Item::Kind::Label, factor, l}; }
Item base_item(int factor, int comp) {
  Item it;
  it.kind = Item::Kind::Base;
  it.factor = factor;
  it.comp_id = comp;
  return it;
}
Item junction_item(int factor, std::size_t interval, bool right_end) {
  Item it;
  it.kind = Item::Kind::Junction;
  it.factor = factor;
  it.interval = interval;
  it.right_end = right_end;
  return it;
}

EndpointLabel renamed(const EndpointLabel& l, const std::string& prefix) { return {prefix + l.handle, l.sign}; }

MorseDiagram with_prefix(const MorseDiagram& d, const std::string& prefix) {
  MorseDiagram out;
  for (const auto& h : d.handles) out.handles.push_back(prefix + h);
  out.initial = d.initial;
  for (auto& c : out.initial.components)
    for (auto& l : c.labels) l = renamed(l, prefix);
  for (const auto& e : d.events) {
    if (const auto* s = std::get_if<Slide>(&e))
      out.events.push_back(Slide{renamed(s->mover, prefix), s->direction, renamed(s->entry, prefix)});
    else
      out.events.push_back(Cross{renamed(mover_of(e), prefix), direction_of(e)});
  }
  return out;
}

/// One factor of the splice with its own marker-aware bookkeeping.
struct Factor {
  MorseDiagram d;
  std::vector<MarkedPoint> points;
  std::vector<FactorList> lists;  // current state, one per original component
  std::vector<FactorList> initial_lists;
  std::vector<std::size_t> sigma;
  std::vector<std::size_t> predecessor;  // sigma inverse

  int component_of(const EndpointLabel& l) const {
    for (std::size_t c = 0; c < lists.size(); ++c)
      for (const auto& it : lists[c])
        if (!it.is_point && it.label == l) return static_cast<int>(c);
    throw MorseError(ErrorCode::UnknownLabel, l.str());
  }

  bool marked(std::size_t c) const {
    return std::any_of(lists[c].begin(), lists[c].end(), [](const FactorItem& it) { return it.is_point; });
  }

  /// Marker-aware replay of one original event.
  void apply(const DiagramEvent& e) {
    const EndpointLabel& m = mover_of(e);
    const auto c = static_cast<std::size_t>(component_of(m));
    auto& list = lists[c];
    list.erase(std::find(list.begin(), list.end(), FactorItem{false, m, 0}));
    if (const auto* s = std::get_if<Slide>(&e)) {
      const auto pc = static_cast<std::size_t>(component_of(s->entry.partner()));
      auto& dest = lists[pc];
      auto at = std::find(dest.begin(), dest.end(), FactorItem{false, s->entry.partner(), 0});
      if (s->direction == Direction::Right) ++at;
      dest.insert(at, FactorItem{false, m, 0});
    } else if (direction_of(e) == Direction::Left) {
      list.push_back({false, m, 0});
    } else {
      list.insert(list.begin(), {false, m, 0});
    }
  }
};

class SpliceBuilder {
 public:
  SpliceBuilder(const MorseDiagram& d1, const StarSet& s1, const MorseDiagram& d2, const StarSet& s2,
                detail::GluingRule rule) {
    require_closed(d1);
    require_closed(d2);
    if (s1.points.size() != s2.points.size())
      throw MorseError(ErrorCode::MismatchedN, std::to_string(s1.points.size()) + " vs " +
                                                   std::to_string(s2.points.size()));
    if (s1.points.empty()) throw MorseError(ErrorCode::MismatchedN, "a splice needs at least one point");
    const StarSet* sets[2] = {&s1, &s2};
    const MorseDiagram* ds[2] = {&d1, &d2};
    for (int f = 0; f < 2; ++f) {
      if (!star_order(ds[f]->initial, sets[f]->points).starlike)
        throw MorseError(ErrorCode::NotStarlike, "points of factor " + std::to_string(f + 1));
      Factor& fac = factors_[f];
      fac.d = with_prefix(*ds[f], std::to_string(f + 1) + ".");
      fac.points = sets[f]->points;
      fac.lists = factor_lists(fac.d.initial, fac.points);
      fac.initial_lists = fac.lists;
      fac.sigma = interval_successors(fac.d.initial, fac.points);
      fac.predecessor.resize(fac.sigma.size());
      for (std::size_t j = 0; j < fac.sigma.size(); ++j) fac.predecessor[fac.sigma[j]] = j;
      label_count_ += fac.d.initial.label_count();
      event_count_ += fac.d.events.size();
    }
    n_ = s1.points.size();
    rule_ = rule;
    assemble();
  }

  MorseDiagram build() {
    for (int f = 0; f < 2; ++f) {
      for (const auto& e : factors_[f].d.events) {
        replay(f, e);
        factors_[f].apply(e);
      }
      restore(f);
    }
    MorseDiagram out;
    out.handles = factors_[0].d.handles;
    out.handles.insert(out.handles.end(), factors_[1].d.handles.begin(), factors_[1].d.handles.end());
    out.initial = initial_;
    out.events = std::move(events_);
    const RunResult run = run_diagram(out);
    if (run.configurations.back() != visible()) throw MorseError(ErrorCode::NonTermination, "simulation diverged");
    if (!run.closed) throw MorseError(ErrorCode::NonTermination, "spliced diagram is not closed");
    return out;
  }

 private:
  // -- assembly -------------------------------------------------------------

  /// Items of interval r_j of factor f, between its two junctions.
  std::vector<Item> interval_contents(int f, std::size_t j) const {
    const Factor& fac = factors_[f];
    const auto c = component_index(fac.d.initial, fac.points[j].component);
    const auto& list = fac.lists[c];
    const auto pos = static_cast<std::size_t>(
        std::find(list.begin(), list.end(), FactorItem{true, {}, j}) - list.begin());
    std::vector<Item> out;
    std::size_t k = pos + 1;
    while (true) {
      if (k == list.size()) {
        out.push_back(base_item(f, fac.d.initial.components[c].id));
        k = 0;
      }
      if (list[k].is_point) break;
      out.push_back(label_item(f, list[k].label));
      ++k;
    }
    return out;
  }

  std::size_t next_first_factor_interval(std::size_t m) const {
    const auto& sigma2 = factors_[1].sigma;
    if (rule_ == detail::GluingRule::AsWritten) return sigma2[(m + 1) % n_];
    return (sigma2[m] + n_ - 1) % n_;
  }

  void assemble() {
    struct Pending {
      std::vector<Item> items;
      std::optional<std::pair<int, int>> base;  // (factor, component id) of the selected basepoint
      std::pair<int, std::size_t> first_interval;
    };
    std::vector<Pending> pending;
    std::vector<bool> seen(n_, false);
    for (std::size_t start = 0; start < n_; ++start) {
      if (seen[start]) continue;
      Pending p;
      p.first_interval = {0, start};
      std::size_t j = start;
      do {
        seen[j] = true;
        const std::size_t m = factors_[0].sigma[j];
        for (auto [f, idx] : {std::pair<int, std::size_t>{0, j}, std::pair<int, std::size_t>{1, m}}) {
          p.items.push_back(junction_item(f, idx, false));
          auto body = interval_contents(f, idx);
          p.items.insert(p.items.end(), body.begin(), body.end());
          p.items.push_back(junction_item(f, idx, true));
        }
        j = next_first_factor_interval(m);
      } while (j != start);
      pending.push_back(std::move(p));
    }
    for (int f = 0; f < 2; ++f) {
      const auto& comps = factors_[f].d.initial.components;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (factors_[f].marked(c)) continue;
        Pending p;
        p.first_interval = {f, n_ + c};
        p.items.push_back(base_item(f, comps[c].id));
        for (const auto& l : comps[c].labels) p.items.push_back(label_item(f, l));
        pending.push_back(std::move(p));
      }
    }
    for (auto& p : pending)
      for (const auto& it : p.items)
        if (it.kind == Item::Kind::Base) {
          auto key = std::pair(it.factor, it.comp_id);
          if (!p.base || key < *p.base) p.base = key;
        }
    std::stable_sort(pending.begin(), pending.end(), [](const Pending& x, const Pending& y) {
      if (x.base.has_value() != y.base.has_value()) return x.base.has_value();
      if (x.base) return *x.base < *y.base;
      return x.first_interval < y.first_interval;
    });
    int fresh = 0;
    for (auto& p : pending) {
      if (p.base) {
        for (auto& it : p.items)
          if (it.kind == Item::Kind::Base && std::pair(it.factor, it.comp_id) == *p.base) it.visible = true;
      } else {
        Item it;
        it.kind = Item::Kind::Fresh;
        it.comp_id = fresh++;
        it.visible = true;
        p.items.insert(p.items.begin(), it);
      }
      circles_.push_back(std::move(p.items));
    }
    initial_ = visible();
  }

  BoundaryConfiguration visible() const {
    BoundaryConfiguration cfg;
    for (std::size_t c = 0; c < circles_.size(); ++c) {
      const auto& circle = circles_[c];
      auto bp = std::find_if(circle.begin(), circle.end(), [](const Item& it) {
        return (it.kind == Item::Kind::Base || it.kind == Item::Kind::Fresh) && it.visible;
      });
      Component comp;
      comp.id = static_cast<int>(c) + 1;
      const auto start = static_cast<std::size_t>(bp - circle.begin());
      for (std::size_t k = 1; k < circle.size(); ++k) {
        const Item& it = circle[(start + k) % circle.size()];
        if (it.kind == Item::Kind::Label) comp.labels.push_back(it.label);
      }
      cfg.components.push_back(std::move(comp));
    }
    return cfg;
  }

  // -- simulation -----------------------------------------------------------

  std::pair<std::size_t, std::size_t> locate(const Item& target) const {
    for (std::size_t c = 0; c < circles_.size(); ++c)
      for (std::size_t i = 0; i < circles_[c].size(); ++i)
        if (circles_[c][i].same(target)) return {c, i};
    throw MorseError(ErrorCode::NonTermination, "lost track of an item");
  }

  void teleport(const Item& mover, const EndpointLabel& entry, Direction dir) {
    auto [c, i] = locate(mover);
    Item moving = circles_[c][i];
    circles_[c].erase(circles_[c].begin() + static_cast<std::ptrdiff_t>(i));
    auto [pc, pi] = locate(label_item(0, entry.partner()));
    const std::size_t at = dir == Direction::Left ? pi : pi + 1;
    circles_[pc].insert(circles_[pc].begin() + static_cast<std::ptrdiff_t>(at), moving);
    events_.push_back(Slide{mover.label, dir, entry});
  }

  /// Moves `mover` (an endpoint of factor f) in `dir` until it has passed
  /// `target` (or, for a label target, slid over it).
  void travel(int f, const EndpointLabel& mover_label, Direction dir, const Item& target) {
    const Item mover = label_item(f, mover_label);
    const std::size_t bound = 4 * (label_count_ + 4) * (event_count_ + 1);
    for (std::size_t step = 0; step < bound; ++step) {
      auto [c, i] = locate(mover);
      auto& circle = circles_[c];
      if (circle.size() < 2) break;
      const std::size_t n = circle.size();
      const std::size_t k = dir == Direction::Left ? (i + n - 1) % n : (i + 1) % n;
      const Item next = circle[k];
      const bool is_target = next.same(target);
      if (next.kind == Item::Kind::Label) {
        const int owner = next.label.handle.rfind("1.", 0) == 0 ? 0 : 1;
        if (!is_target && owner == f) break;  // own endpoint in the way: gluing is inconsistent
        teleport(mover, next.label, dir);
        if (is_target) return;
        continue;
      }
      if (next.visible) events_.push_back(Cross{mover_label, dir});
      std::swap(circle[i], circle[k]);
      if (is_target) return;
    }
    throw MorseError(ErrorCode::NonTermination,
                     "expansion of " + mover_label.str() + " did not reach its target");
  }

  void replay(int f, const DiagramEvent& e) {
    if (const auto* s = std::get_if<Slide>(&e)) {
      travel(f, s->mover, s->direction, label_item(f, s->entry));
      return;
    }
    const Factor& fac = factors_[f];
    const int c = fac.component_of(mover_of(e));
    travel(f, mover_of(e), direction_of(e), base_item(f, fac.d.initial.components[static_cast<std::size_t>(c)].id));
  }

  /// Returns every endpoint of factor f to its initial slot relative to the
  /// marked points by moving it across the points it is on the wrong side of.
  void restore(int f) {
    Factor& fac = factors_[f];
    for (std::size_t c = 0; c < fac.lists.size(); ++c) {
      auto& cur = fac.lists[c];
      const auto& goal = fac.initial_lists[c];
      auto rank = [&](const FactorItem& it) {
        return static_cast<std::size_t>(std::find(goal.begin(), goal.end(), it) - goal.begin());
      };
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
          if (rank(cur[k]) <= rank(cur[k + 1])) continue;
          if (cur[k].is_point == cur[k + 1].is_point)
            throw MorseError(ErrorCode::NonTermination, "factor returned in a different order");
          if (!cur[k].is_point) {
            // label moves right across the point
            travel(f, cur[k].label, Direction::Right, junction_item(f, cur[k + 1].point, false));
          } else {
            const std::size_t from = fac.predecessor[cur[k].point];
            travel(f, cur[k + 1].label, Direction::Left, junction_item(f, from, true));
          }
          std::swap(cur[k], cur[k + 1]);
          changed = true;
        }
      }
    }
  }

  Factor factors_[2];
  std::size_t n_ = 0;
  std::size_t label_count_ = 0;
  std::size_t event_count_ = 0;
  detail::GluingRule rule_ = detail::GluingRule::AsWritten;
  std::vector<std::vector<Item>> circles_;
  BoundaryConfiguration initial_;
  std::vector<DiagramEvent> events_;
};

}  // namespace

namespace detail {
MorseDiagram splice_with_rule(const MorseDiagram& d1, const StarSet& s1, const MorseDiagram& d2,
                              const StarSet& s2, GluingRule rule) {
  return SpliceBuilder(d1, s1, d2, s2, rule).build();
}
}  // namespace detail

MorseDiagram splice(const MorseDiagram& d1, const StarSet& s1, const MorseDiagram& d2, const StarSet& s2) {
  return detail::splice_with_rule(d1, s1, d2, s2, detail::GluingRule::Geometric);
}

MorseDiagram hopf_band(HopfSign sign) {
  MorseDiagram d;
  d.handles = {"H"};
  d.initial = {{{1, {{"H", Sign::Plus}}}, {2, {{"H", Sign::Minus}}}}};
  d.events = {Cross{{"H", Sign::Minus}, sign == HopfSign::Positive ? Direction::Right : Direction::Left}};
  return d;
}

MorseDiagram stabilize(const MorseDiagram& d, HopfSign sign, const MarkedPoint& p1, const MarkedPoint& p2) {
  return splice(d, StarSet{{p1, p2}}, hopf_band(sign), StarSet{{{1, 1, 0}, {2, 1, 0}}});
}

}  // namespace morse
