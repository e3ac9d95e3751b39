#include <doctest.h>

#include "morse/detect.hpp"
#include "morse/splice.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace morse;

namespace {

EndpointLabel L(const std::string& text) { return *parse_label(text); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const MorseError& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

MorseDiagram torus_fig5() {
  return {{"A", "B"},
          reference_configuration("A", "B"),
          {Slide{L("B-"), Direction::Right, L("A-")}, Slide{L("A+"), Direction::Right, L("B-")}}};
}

MorseDiagram empty_annulus() { return {{"H"}, {{{1, {L("H+")}}, {2, {L("H-")}}}}, {}}; }

const StarSet kHopfPoints{{{1, 1, 0}, {2, 1, 0}}};

bool from_factor(const EndpointLabel& l, int f) { return l.handle.rfind(std::to_string(f) + ".", 0) == 0; }

/// Slides whose mover and entry both belong to factor f, with the prefix removed.
std::vector<DiagramEvent> own_slides(const MorseDiagram& d, int f) {
  std::vector<DiagramEvent> out;
  for (const auto& e : d.events)
    if (const auto* s = std::get_if<Slide>(&e); s && from_factor(s->mover, f) && from_factor(s->entry, f))
      out.push_back(Slide{{s->mover.handle.substr(2), s->mover.sign}, s->direction,
                          {s->entry.handle.substr(2), s->entry.sign}});
  return out;
}

std::vector<DiagramEvent> slides_of(const MorseDiagram& d) {
  std::vector<DiagramEvent> out;
  for (const auto& e : d.events)
    if (std::holds_alternative<Slide>(e)) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("marked points") {
  CHECK(parse_marked_point("2:3.1") == MarkedPoint{2, 3, 1});
  CHECK(parse_marked_point("1:0") == MarkedPoint{1, 0, 0});
  CHECK(MarkedPoint{2, 3, 1}.str() == "2:3.1");
  CHECK(parse_marked_points("1:0.0,1:2.0") == std::vector<MarkedPoint>{{1, 0, 0}, {1, 2, 0}});
  for (std::string bad : {"", "1", "1:", "x:1", "1:-1", "1:2.y", "1:2.3.4"})
    CHECK_MESSAGE(code_of([&] { parse_marked_points(bad); }) == ErrorCode::ParseError, bad);
}

TEST_CASE("star order") {
  const BoundaryConfiguration annulus = empty_annulus().initial;
  const StarOrder two = star_order(annulus, {{1, 1, 0}, {2, 1, 0}});
  CHECK(two.cyclic == std::vector<std::size_t>{0, 1});
  CHECK(two.starlike);
  CHECK(star_order(annulus, {{1, 0, 0}}).starlike);
  CHECK(star_order(annulus, {}).starlike);

  // Three points in one gap appear on the final circle in sub-index order.
  const std::vector<MarkedPoint> gap{{1, 1, 0}, {1, 1, 1}, {1, 1, 2}};
  CHECK(star_order(annulus, gap).starlike);
  CHECK(star_order(annulus, {gap[1], gap[2], gap[0]}).starlike);
  CHECK_FALSE(star_order(annulus, {gap[0], gap[2], gap[1]}).starlike);

  CHECK(code_of([&] { star_order(annulus, {{3, 0, 0}}); }) == ErrorCode::InvalidPoint);
  CHECK(code_of([&] { star_order(annulus, {{1, 2, 0}}); }) == ErrorCode::InvalidPoint);
  CHECK(code_of([&] { star_order(annulus, {{1, 0, 0}, {1, 0, 0}}); }) == ErrorCode::InvalidPoint);
  const BoundaryConfiguration bad{{{1, {L("A+"), L("A-")}}}};
  CHECK(code_of([&] { star_order(bad, {{1, 0, 0}}); }) == ErrorCode::NotRealizable);
}

TEST_CASE("interval successors") {
  const BoundaryConfiguration torus = reference_configuration("A", "B");
  CHECK(interval_successors(torus, {{1, 0, 0}, {1, 2, 0}, {1, 3, 0}}) == std::vector<std::size_t>{1, 2, 0});
  CHECK(interval_successors(empty_annulus().initial, {{1, 1, 0}, {2, 0, 0}}) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("Hopf bands") {
  for (HopfSign sign : {HopfSign::Positive, HopfSign::Negative}) {
    const MorseDiagram h = hopf_band(sign);
    CHECK(surface_type(h.initial) == SurfaceType{0, 2, 1});
    CHECK(run_diagram(h).closed);
    REQUIRE(h.events.size() == 1);
    const auto profile = moving_profile(h).at("H");
    CHECK(profile.plus_moves.empty());
    const Direction dir = sign == HopfSign::Negative ? Direction::Left : Direction::Right;
    CHECK(profile.minus_moves == std::vector<Direction>{dir});
    CHECK(h.events[0] == DiagramEvent{Cross{L("H-"), dir}});
  }
}

TEST_CASE("splicing the negative Hopf band with the torus diagram") {
  const MorseDiagram out = splice(hopf_band(HopfSign::Negative), kHopfPoints, torus_fig5(), StarSet{{{1, 0, 0}, {1, 2, 0}}});
  CHECK(run_diagram(out).closed);
  CHECK(out.initial.components.size() == 2);
  CHECK(surface_type(out.initial) == SurfaceType{1, 2, 3});
  CHECK(out.handles == std::vector<HandleId>{"1.H", "2.A", "2.B"});
  // The Hopf crossing has to pass the torus endpoints sitting between its
  // two marked points: it teleports across them rather than crossing.
  bool teleported = false;
  for (const auto& e : out.events)
    if (const auto* s = std::get_if<Slide>(&e); s && s->mover == L("1.H-") && from_factor(s->entry, 2)) teleported = true;
  CHECK(teleported);
  CHECK(parse_diagram(serialize_diagram(out)) == out);
}

TEST_CASE("splicing with an event-free annulus") {
  const MorseDiagram torus = torus_fig5();
  const MorseDiagram out = splice(torus, StarSet{{{1, 1, 0}, {1, 3, 0}}}, empty_annulus(), kHopfPoints);
  CHECK(run_diagram(out).closed);
  CHECK(surface_type(out.initial).handle_count == 3);
  CHECK(own_slides(out, 1) == slides_of(torus));
}

TEST_CASE("splice preconditions") {
  const MorseDiagram torus = torus_fig5();
  const MorseDiagram annulus = empty_annulus();
  CHECK(code_of([&] { splice(torus, StarSet{{{1, 0, 0}}}, annulus, kHopfPoints); }) == ErrorCode::MismatchedN);
  CHECK(code_of([&] { splice(torus, StarSet{}, annulus, StarSet{}); }) == ErrorCode::MismatchedN);
  MorseDiagram open = torus;
  open.events.push_back(Cross{L("A-"), Direction::Right});
  CHECK(code_of([&] { splice(open, StarSet{{{1, 0, 0}, {1, 1, 0}}}, annulus, kHopfPoints); }) ==
        ErrorCode::NonClosedInput);
  const StarSet gap{{{1, 1, 0}, {1, 1, 1}, {1, 1, 2}}};
  const StarSet twisted{{{1, 1, 0}, {1, 1, 2}, {1, 1, 1}}};
  const StarSet torus3{{{1, 0, 0}, {1, 2, 0}, {1, 1, 0}}};
  REQUIRE(star_order(torus.initial, torus3.points).starlike);
  CHECK_NOTHROW(splice(annulus, gap, torus, torus3));
  CHECK(code_of([&] { splice(annulus, twisted, torus, torus3); }) == ErrorCode::NotStarlike);
  CHECK(code_of([&] { splice(torus, StarSet{{{1, 0, 0}, {1, 9, 0}}}, annulus, kHopfPoints); }) == ErrorCode::InvalidPoint);
}

TEST_CASE("stabilization") {
  const MorseDiagram torus = torus_fig5();
  const SurfaceType before = surface_type(torus.initial);
  for (HopfSign sign : {HopfSign::Positive, HopfSign::Negative}) {
    const MorseDiagram s = stabilize(torus, sign, {1, 1, 0}, {1, 3, 0});
    CHECK(run_diagram(s).closed);
    const SurfaceType after = surface_type(s.initial);
    CHECK(1 - after.handle_count == 1 - before.handle_count - 1);
    const auto profile = moving_profile(s).at("2.H");
    CHECK(profile.plus_moves.empty());
    const Direction dir = sign == HopfSign::Negative ? Direction::Left : Direction::Right;
    CHECK_FALSE(profile.minus_moves.empty());
    for (Direction d : profile.minus_moves) CHECK(d == dir);
  }
}

TEST_CASE("property: splices of random closed diagrams") {
  gen::Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    const MorseDiagram d1 = gen::random_closed_diagram(rng, 3, 8);
    const MorseDiagram d2 = gen::random_closed_diagram(rng, 3, 8);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const StarSet s1{gen::random_star(rng, d1.initial, n)}, s2{gen::random_star(rng, d2.initial, n)};
    const MorseDiagram out = splice(d1, s1, d2, s2);
    CHECK(run_diagram(out).closed);
    CHECK(oracle::realizable(out.initial));
    const SurfaceType st = surface_type(out.initial);
    CHECK(st.handle_count == surface_type(d1.initial).handle_count + surface_type(d2.initial).handle_count);
    // Each factor's own slides survive in order; factor 1 moves first.
    CHECK(own_slides(out, 1) == slides_of(d1));
    CHECK(own_slides(out, 2) == slides_of(d2));
    bool seen_second = false;
    for (const auto& e : out.events) {
      if (from_factor(mover_of(e), 2)) seen_second = true;
      else CHECK_FALSE(seen_second);
    }
    const std::size_t bound = 4 * (d1.initial.label_count() + d2.initial.label_count()) *
                              (d1.events.size() + d2.events.size() + 1);
    CHECK(out.events.size() <= bound);
  }
}

TEST_CASE("property: the literal gluing index breaks for three or more points") {
  gen::Rng rng(42);
  int literal_failures = 0;
  for (int t = 0; t < 200; ++t) {
    const MorseDiagram d1 = gen::random_closed_diagram(rng, 3, 8);
    const MorseDiagram d2 = gen::random_closed_diagram(rng, 3, 8);
    const StarSet s1{gen::random_star(rng, d1.initial, 3)}, s2{gen::random_star(rng, d2.initial, 3)};
    CHECK_NOTHROW(detail::splice_with_rule(d1, s1, d2, s2, detail::GluingRule::Geometric));
    try {
      detail::splice_with_rule(d1, s1, d2, s2, detail::GluingRule::AsWritten);
    } catch (const MorseError&) {
      ++literal_failures;
    }
  }
  CHECK(literal_failures > 0);
}

TEST_CASE("property: negative stabilization always yields a left-veering handle") {
  gen::Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const MorseDiagram d = gen::random_closed_diagram(rng, 3, 8);
    const auto pts = gen::random_star(rng, d.initial, 2);
    const MorseDiagram neg = stabilize(d, HopfSign::Negative, pts[0], pts[1]);
    CHECK(find_left_veering(neg));
    const auto h = moving_profile(neg).at("2.H");
    CHECK(h.plus_moves.empty());
    CHECK(std::count(h.minus_moves.begin(), h.minus_moves.end(), Direction::Right) == 0);
    // Crossings of basepoints that become unselected markers disappear, so a
    // factor handle may turn into a witness; the new handle never does.
    if (!find_left_veering(d)) {
      const auto w = find_left_veering(stabilize(d, HopfSign::Positive, pts[0], pts[1]));
      if (w) CHECK(w->handle != "2.H");
    }
  }
}
