#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "morse/diagram.hpp"

namespace morse {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Integer 2x2 matrices

/// Row-major 2x2 matrix acting on column vectors of H1 coordinates in (A, B).
struct Mat2 {
  BigInt a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }
  BigInt det() const { return a * d - b * c; }
  BigInt trace() const { return a + d; }
  /// Inverse of a determinant-one matrix.
  Mat2 inverse() const { return {d, -b, -c, a}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 pow(long long k) const;
  std::string str() const;

  bool operator==(const Mat2&) const = default;
};

/// An H1 class in the (A, B) basis.
struct Vec2 {
  BigInt x = 0, y = 0;
  bool operator==(const Vec2&) const = default;
  std::string str() const;  // e.g. "2A+B", "-A", "0"
};

/// Algebraic intersection number with i(A, B) = +1.
BigInt intersection(const Vec2& u, const Vec2& v);

/// Matrix of the right-handed Dehn twist about the class `c` raised to
/// `power`: x -> x - power * i(x, c) c.
Mat2 twist_matrix(const Vec2& c, long long power);

// ---------------------------------------------------------------------------
// Twist words

enum class Curve { A, B, C };

struct TwistGen {
  Curve curve = Curve::A;
  long long power = 1;
  bool operator==(const TwistGen&) const = default;
};

/// gens[0] is the leftmost factor; a word g1 ... gm applies gm first.
struct TwistWord {
  std::vector<TwistGen> gens;

  TwistWord inverse() const;
  TwistWord operator*(const TwistWord& o) const;
  std::string str() const;  // grammar of parse_twist_word
  bool operator==(const TwistWord&) const = default;
};

/// Whitespace-separated tokens A, B, C with optional `^-1`, `^-` or `^k`.
/// Throws ParseError.
TwistWord parse_twist_word(const std::string& text);

struct MappingClassInvariant {
  Mat2 matrix;
  BigInt exponent_sum = 0;
  bool operator==(const MappingClassInvariant&) const = default;
};

Mat2 generator_matrix(const TwistGen& g);
MappingClassInvariant word_invariant(const TwistWord& w);

// ---------------------------------------------------------------------------
// Torus pages

/// Role assignment for a one-holed-torus diagram. The reference cyclic order
/// of the boundary is (B+ A+ B- A-).
struct TorusRoles {
  HandleId a;
  HandleId b;
  Curve curve_of(const HandleId& h) const { return h == a ? Curve::A : Curve::B; }
  const HandleId& handle_of(Curve c) const { return c == Curve::A ? a : b; }
};

/// Throws NotTorusPage unless the initial configuration is a one-holed torus.
/// A is the first declared handle when that matches the reference cyclic
/// order; otherwise the roles are swapped.
TorusRoles torus_roles(const MorseDiagram& d);

/// The reference configuration [B+, A+, B-, A-] for the given handle names.
BoundaryConfiguration reference_configuration(const HandleId& a, const HandleId& b);

/// Net rotation of a one-component list: +1 when the last label moved to the
/// front (a rightward shift), -1 for the opposite, 0 when unchanged.
/// Throws NotTorusPage when `after` is not a rotation of `before` by at most one.
int frame_shift(const BoundaryConfiguration& before, const BoundaryConfiguration& after);

struct DiagramMonodromy {
  MappingClassInvariant invariant;
  TwistWord factorization;  // over the fixed cores, C-power last
  long long boundary_twists = 0;
};

DiagramMonodromy diagram_monodromy(const MorseDiagram& d);

/// Closed diagram on the reference configuration [B+, A+, B-, A-] (handles
/// A then B) whose monodromy invariant equals word_invariant(w).
MorseDiagram synthesize(const TwistWord& w, const HandleId& a = "A", const HandleId& b = "B");

struct CoreState {
  Vec2 a{1, 0};
  Vec2 b{0, 1};
  bool operator==(const CoreState&) const = default;
};

/// Core classes after each slide, starting with (A, B).
std::vector<CoreState> trace_cores(const MorseDiagram& d);

// ---------------------------------------------------------------------------
// Conjugacy and open-book equivalence

/// Decides conjugacy in SL(2, Z) via the normal form in the amalgamated
/// product of the order-4 and order-6 cyclic subgroups.
bool conjugate_in_sl2z(const Mat2& m, const Mat2& n);

/// Canonical key of the conjugacy class; equal keys iff conjugate.
std::string conjugacy_class_key(const Mat2& m);

enum class EquivalenceMode { Strict, Conjugacy };

bool same_open_book(const MorseDiagram& d1, const MorseDiagram& d2,
                    EquivalenceMode mode = EquivalenceMode::Conjugacy);

// ---------------------------------------------------------------------------
// Morse moves

enum class MoveKind {
  M1Insert,  // insert an event followed by its inverse
  M1Delete,  // delete an adjacent inverse pair
  M2,        // replace a slide by its partner-endpoint slide
  M3,        // braid rewrite of three consecutive slides
  M4,        // four same-direction crossings <-> twelve slides
};

const char* to_string(MoveKind k);

struct MorseMove {
  MoveKind kind = MoveKind::M1Delete;
  std::size_t site = 0;
  std::optional<DiagramEvent> inserted;  // M1Insert only

  std::string str() const;
  bool operator==(const MorseMove&) const = default;
};

/// Throws PatternMismatch when the move does not apply at its site.
MorseDiagram apply_morse_move(const MorseDiagram& d, const MorseMove& move);

/// All moves whose pattern matches somewhere in `d`.
std::vector<MorseMove> applicable_moves(const MorseDiagram& d);

}  // namespace morse
