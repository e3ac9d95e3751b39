#include <doctest.h>

#include "morse/detect.hpp"
#include "morse/splice.hpp"
#include "support/generators.hpp"

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

}  // namespace

TEST_CASE("left-veering handles on the Hopf bands") {
  const auto w = find_left_veering(hopf_band(HopfSign::Negative));
  REQUIRE(w);
  CHECK(*w == LeftVeeringWitness{"H", Sign::Plus, Sign::Minus, {0}});
  CHECK_FALSE(find_left_veering(hopf_band(HopfSign::Positive)));
  const MorseDiagram still{{"H"}, {{{1, {L("H+")}}, {2, {L("H-")}}}}, {}};
  CHECK_FALSE(find_left_veering(still));
}

TEST_CASE("witness rules") {
  const BoundaryConfiguration torus = reference_configuration("A", "B");
  // A+ only moves left, A- stays put.
  const MorseDiagram one{{"A", "B"}, torus, {Slide{L("A+"), Direction::Left, L("B+")}}};
  CHECK(*find_left_veering(one) == LeftVeeringWitness{"A", Sign::Minus, Sign::Plus, {0}});
  // Both ends of A move, so A is no witness; B never moves.
  const MorseDiagram both{{"A", "B"}, torus,
                          {Slide{L("A+"), Direction::Left, L("B+")}, Cross{L("A-"), Direction::Right},
                           Cross{L("A-"), Direction::Left}}};
  CHECK_FALSE(find_left_veering(both));
  const MorseDiagram right{{"A", "B"}, torus, {Slide{L("A+"), Direction::Right, L("B-")}}};
  CHECK_FALSE(find_left_veering(right));
  // The second handle is reported when the first has none.
  const MorseDiagram second{{"A", "B"}, torus, {Slide{L("B-"), Direction::Left, L("A+")}}};
  CHECK(find_left_veering(second)->handle == "B");
  const MorseDiagram open{{"A", "B"}, torus, {Cross{L("A-"), Direction::Right}}};
  CHECK(code_of([&] { find_left_veering(open); }) == ErrorCode::NonClosedInput);
  CHECK(code_of([&] { ot_verdict(open, 3); }) == ErrorCode::NonClosedInput);
}

TEST_CASE("verdicts") {
  const OtVerdict direct = ot_verdict(hopf_band(HopfSign::Negative), 0);
  CHECK(direct.verdict == Verdict::OvertwistedCertified);
  CHECK(direct.certificate->moves.empty());
  // Non-torus pages without a direct witness stay unknown at any depth.
  CHECK(ot_verdict(hopf_band(HopfSign::Positive), 10).verdict == Verdict::Unknown);

  const MorseDiagram phs = synthesize(parse_twist_word("A B C^-1"));
  CHECK_FALSE(find_left_veering(phs));
  CHECK(ot_verdict(phs, 0).verdict == Verdict::Unknown);
  const OtVerdict found = ot_verdict(phs, 15);
  REQUIRE(found.verdict == Verdict::OvertwistedCertified);
  CHECK_FALSE(found.certificate->moves.empty());
  // Replaying the path reproduces the certified diagram with its invariant.
  MorseDiagram cur = phs;
  for (const auto& m : found.certificate->moves) cur = apply_morse_move(cur, m);
  CHECK(cur == found.certificate->rewritten);
  CHECK(diagram_monodromy(cur).invariant == diagram_monodromy(phs).invariant);
  CHECK(find_left_veering(cur) == found.certificate->witness);

  CHECK(ot_verdict(synthesize(parse_twist_word("A")), 3).verdict == Verdict::Unknown);
  CHECK_FALSE(certificate_search(synthesize(parse_twist_word("A")), 3));
  CHECK(code_of([] { certificate_search(hopf_band(HopfSign::Negative), 2); }) == ErrorCode::NotTorusPage);
  const auto zero = certificate_search(synthesize(parse_twist_word("A^-1")), 0);
  REQUIRE(zero);
  CHECK(zero->moves.empty());
}

TEST_CASE("property: witnesses satisfy their definition") {
  gen::Rng rng(51);
  int found = 0;
  for (int t = 0; t < 400; ++t) {
    const MorseDiagram d = gen::random_closed_diagram(rng, 3, 6);
    const auto w = find_left_veering(d);
    if (!w) continue;
    ++found;
    CHECK_FALSE(w->event_indices.empty());
    for (std::size_t i = 0; i < d.events.size(); ++i) {
      const auto& m = mover_of(d.events[i]);
      if (m.handle != w->handle) continue;
      CHECK(m.sign == w->moving_end);
      CHECK(direction_of(d.events[i]) == Direction::Left);
      CHECK(std::count(w->event_indices.begin(), w->event_indices.end(), i) == 1);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("property: search only visits diagrams with the original invariant") {
  gen::Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const MorseDiagram d = synthesize(gen::random_word(rng, 4));
    const auto cert = certificate_search(d, 2, 5000);
    if (!cert) continue;
    CHECK(diagram_monodromy(cert->rewritten).invariant == diagram_monodromy(d).invariant);
  }
}
